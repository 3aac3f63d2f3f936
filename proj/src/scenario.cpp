#include "oplab/scenario.hpp"

#include <cmath>
#include <fstream>

#include "oplab/errors.hpp"

namespace oplab {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) {
        throw ValidationError(std::string(where) + ": missing field '" + key + "'");
    }
    return j.at(key);
}

AtomicMeasureSpace parse_atomic_carrier(const json& j) {
    std::vector<std::string> atoms;
    std::vector<Rat> weights;
    for (const auto& a : require_field(j, "atoms", "carrier")) {
        atoms.push_back(a.get<std::string>());
    }
    for (const auto& w : require_field(j, "weights", "carrier")) {
        weights.push_back(parse_rational(w.get<std::string>()));
    }
    return AtomicMeasureSpace(std::move(atoms), std::move(weights));
}

GridDomain parse_grid_carrier(const json& j) {
    const int n = require_field(j, "n", "carrier").get<int>();
    const auto& bounds = require_field(j, "bounds", "carrier");
    const auto& resolution = require_field(j, "resolution", "carrier");
    if (static_cast<int>(bounds.size()) != n || static_cast<int>(resolution.size()) != n) {
        throw ValidationError("carrier: bounds/resolution must have n entries");
    }
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::array<std::size_t, 2> cells{4, 1};
    for (int axis = 0; axis < n; ++axis) {
        lo[axis] = bounds[axis].at(0).get<double>();
        hi[axis] = bounds[axis].at(1).get<double>();
        cells[axis] = resolution[axis].get<std::size_t>();
    }
    if (n == 1) {
        cells[1] = 1;
    }
    return GridDomain(n, lo, hi, cells);
}

AtomMap parse_atomic_map(const json& j, const AtomicMeasureSpace& space) {
    const auto& table = require_field(j, "map", "transformation");
    std::vector<std::size_t> mapping(space.size());
    std::vector<bool> assigned(space.size(), false);
    const auto index_of = [&](const std::string& id) -> std::size_t {
        for (std::size_t i = 0; i < space.size(); ++i) {
            if (space.atoms()[i] == id) {
                return i;
            }
        }
        throw ValidationError("transformation: unknown atom '" + id + "'");
    };
    for (const auto& [from, to] : table.items()) {
        const std::size_t x = index_of(from);
        mapping[x] = index_of(to.get<std::string>());
        assigned[x] = true;
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!assigned[i]) {
            throw ValidationError("transformation: atom '" + space.atoms()[i] + "' has no image");
        }
    }
    return AtomMap(std::move(mapping), space.size());
}

AffineMap parse_affine_map(const json& j, int n) {
    AffineMap map;
    map.n = n;
    const auto& A = require_field(j, "A", "transformation");
    const auto& b = require_field(j, "b", "transformation");
    if (static_cast<int>(A.size()) != n || static_cast<int>(b.size()) != n) {
        throw ValidationError("transformation: A/b must be n x n and n");
    }
    for (int k = 0; k < n; ++k) {
        if (static_cast<int>(A[k].size()) != n) {
            throw ValidationError("transformation: A must be n x n");
        }
        for (int i = 0; i < n; ++i) {
            map.A[k][i] = A[k][i].get<double>();
        }
        map.b[k] = b[k].get<double>();
    }
    return map;
}

OrliczFunction parse_orlicz(const json& j) {
    const std::string family = require_field(j, "family", "orlicz").get<std::string>();
    if (family == "power") {
        return OrliczFunction::power(require_field(j, "p", "orlicz").get<double>());
    }
    if (family == "power_log") {
        return OrliczFunction::power_log(require_field(j, "p", "orlicz").get<double>());
    }
    if (family == "exp_minus") {
        return OrliczFunction::exp_minus();
    }
    throw ValidationError("orlicz: unknown family '" + family + "'");
}

double axis_hat(double x, double lo, double hi) {
    const double s = 2.0 * (x - 0.5 * (lo + hi)) / (hi - lo);  // [-1, 1] over the axis
    return std::max(0.0, 1.0 - 2.0 * std::abs(s));
}

double axis_bump(double x, double lo, double hi) {
    const double s = 2.0 * (x - 0.5 * (lo + hi)) / (hi - lo);
    if (std::abs(s) >= 1.0) {
        return 0.0;
    }
    return std::exp(-1.0 / (1.0 - s * s));
}

}  // namespace

Scenario parse_scenario(const json& j) {
    Scenario s;
    const auto& carrier = require_field(j, "carrier", "scenario");
    const std::string type = require_field(carrier, "type", "carrier").get<std::string>();
    if (type == "atomic") {
        s.carrier = Scenario::Carrier::Atomic;
        s.space = parse_atomic_carrier(carrier);
    } else if (type == "grid") {
        s.carrier = Scenario::Carrier::Grid;
        s.domain = parse_grid_carrier(carrier);
    } else {
        throw ValidationError("carrier: unknown type '" + type + "'");
    }

    if (j.contains("transformation")) {
        const auto& t = j.at("transformation");
        const std::string ttype = require_field(t, "type", "transformation").get<std::string>();
        if (ttype == "atomic") {
            if (!s.space) {
                throw ValidationError("atomic transformation requires an atomic carrier");
            }
            s.atom_map = parse_atomic_map(t, *s.space);
        } else if (ttype == "affine") {
            if (!s.domain) {
                throw ValidationError("affine transformation requires a grid carrier");
            }
            s.affine = parse_affine_map(t, s.domain->dim());
            if (!s.affine->is_self_map(*s.domain)) {
                throw ValidationError("transformation: affine map does not map the box into itself");
            }
        } else {
            throw ValidationError("transformation: unknown type '" + ttype + "'");
        }
    }

    if (j.contains("orlicz")) {
        s.orlicz = parse_orlicz(j.at("orlicz"));
    }

    if (j.contains("function")) {
        const auto& f = j.at("function");
        const std::string ftype = require_field(f, "type", "function").get<std::string>();
        if (ftype == "builtin") {
            s.builtin_function = require_field(f, "name", "function").get<std::string>();
        } else if (ftype == "table") {
            std::vector<double> values;
            for (const auto& v : require_field(f, "values", "function")) {
                values.push_back(v.get<double>());
            }
            s.function_table = std::move(values);
        } else {
            throw ValidationError("function: unknown type '" + ftype + "'");
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open scenario file '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("parse error in '" + path + "': " + e.what());
    }
    return parse_scenario(j);
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["schema"] = 1;
    if (s.carrier == Scenario::Carrier::Atomic) {
        json carrier;
        carrier["type"] = "atomic";
        carrier["atoms"] = s.space->atoms();
        json weights = json::array();
        for (const auto& w : s.space->weights()) {
            weights.push_back(rational_to_string(w));
        }
        carrier["weights"] = weights;
        j["carrier"] = carrier;
        if (s.atom_map) {
            json table;
            for (std::size_t i = 0; i < s.space->size(); ++i) {
                table[s.space->atoms()[i]] = s.space->atoms()[(*s.atom_map)(i)];
            }
            j["transformation"] = {{"type", "atomic"}, {"map", table}};
        }
    } else {
        json carrier;
        carrier["type"] = "grid";
        carrier["n"] = s.domain->dim();
        json bounds = json::array();
        json resolution = json::array();
        for (int axis = 0; axis < s.domain->dim(); ++axis) {
            bounds.push_back({s.domain->lo(axis), s.domain->hi(axis)});
            resolution.push_back(s.domain->cells(axis));
        }
        carrier["bounds"] = bounds;
        carrier["resolution"] = resolution;
        j["carrier"] = carrier;
        if (s.affine) {
            json A = json::array();
            json b = json::array();
            for (int k = 0; k < s.affine->n; ++k) {
                json row = json::array();
                for (int i = 0; i < s.affine->n; ++i) {
                    row.push_back(s.affine->A[k][i]);
                }
                A.push_back(row);
                b.push_back(s.affine->b[k]);
            }
            j["transformation"] = {{"type", "affine"}, {"A", A}, {"b", b}};
        }
    }

    if (s.orlicz) {
        json orlicz;
        switch (s.orlicz->family()) {
            case OrliczFamily::Power:
                orlicz = {{"family", "power"}, {"p", s.orlicz->exponent()}};
                break;
            case OrliczFamily::PowerLog:
                orlicz = {{"family", "power_log"}, {"p", s.orlicz->exponent()}};
                break;
            case OrliczFamily::ExpMinus:
                orlicz = {{"family", "exp_minus"}};
                break;
            case OrliczFamily::Custom:
                throw ValidationError("custom Orlicz functions are not serializable");
        }
        j["orlicz"] = orlicz;
    }

    if (!s.builtin_function.empty()) {
        j["function"] = {{"type", "builtin"}, {"name", s.builtin_function}};
    } else if (s.function_table) {
        j["function"] = {{"type", "table"}, {"values", *s.function_table}};
    }
    return j;
}

std::vector<double> atomic_function_values(const Scenario& s) {
    if (!s.space) {
        throw ValidationError("scenario has no atomic carrier");
    }
    if (s.function_table) {
        if (s.function_table->size() != s.space->size()) {
            throw ValidationError("function table length does not match the atom count");
        }
        return *s.function_table;
    }
    if (s.builtin_function == "zero") {
        return std::vector<double>(s.space->size(), 0.0);
    }
    throw ValidationError("atomic scenarios need a function table (or builtin 'zero')");
}

GridFunction builtin_grid_function(const std::string& name, const GridDomain& domain) {
    const auto make = [&](const std::function<double(std::array<double, 2>)>& f) {
        return sample(domain, f);
    };
    if (name == "zero") {
        return make([](std::array<double, 2>) { return 0.0; });
    }
    if (name == "linear") {
        return make([&](std::array<double, 2> p) {
            return domain.dim() == 1 ? p[0] : p[0] + p[1];
        });
    }
    if (name == "quadratic") {
        return make([&](std::array<double, 2> p) {
            return domain.dim() == 1 ? p[0] * p[0] : p[0] * p[0] + p[1] * p[1];
        });
    }
    if (name == "cubic") {
        return make([&](std::array<double, 2> p) {
            return domain.dim() == 1 ? p[0] * p[0] * p[0] : p[0] * p[0] * p[0] + p[1] * p[1] * p[1];
        });
    }
    if (name == "product") {
        if (domain.dim() != 2) {
            throw ValidationError("builtin 'product' requires a 2-d grid");
        }
        return make([](std::array<double, 2> p) { return p[0] * p[1]; });
    }
    if (name == "hat") {
        return make([&](std::array<double, 2> p) {
            double v = axis_hat(p[0], domain.lo(0), domain.hi(0));
            if (domain.dim() == 2) {
                v *= axis_hat(p[1], domain.lo(1), domain.hi(1));
            }
            return v;
        });
    }
    if (name == "bump") {
        return make([&](std::array<double, 2> p) {
            double v = axis_bump(p[0], domain.lo(0), domain.hi(0));
            if (domain.dim() == 2) {
                v *= axis_bump(p[1], domain.lo(1), domain.hi(1));
            }
            return v;
        });
    }
    throw ValidationError("unknown builtin function '" + name + "'");
}

GridFunction grid_function_values(const Scenario& s) {
    if (!s.domain) {
        throw ValidationError("scenario has no grid carrier");
    }
    if (s.function_table) {
        if (s.function_table->size() != s.domain->cell_count()) {
            throw ValidationError("function table length does not match the cell count");
        }
        return GridFunction{*s.function_table};
    }
    if (s.builtin_function.empty()) {
        throw ValidationError("grid scenario has no function");
    }
    return builtin_grid_function(s.builtin_function, *s.domain);
}

json report_to_json(const AnalysisReport& report, const AtomicMeasureSpace& space) {
    json j;
    j["schema"] = 1;
    j["nonsingular"] = report.nonsingular;
    if (report.singular_witness) {
        j["singular_witness"] = {{"preimage", space.atoms()[report.singular_witness->first]},
                                 {"null_image", space.atoms()[report.singular_witness->second]}};
    }
    j["measure_preserving"] = report.measure_preserving;
    j["expansive"] = report.expansive;

    const auto atom_names = [&](const std::vector<std::size_t>& indices) {
        json arr = json::array();
        for (std::size_t a : indices) {
            arr.push_back(space.atoms()[a]);
        }
        return arr;
    };

    if (report.kernel) {
        j["kernel"] = {{"omega0", atom_names(report.kernel->omega0)},
                       {"kernel_dimension", report.kernel->kernel_dimension},
                       {"is_zero_operator", report.kernel->is_zero_operator}};
    }
    if (report.injective) {
        j["injective"] = *report.injective;
    }
    if (report.essentially_surjective) {
        j["essentially_surjective"] = *report.essentially_surjective;
    }
    if (report.ascent) {
        json chain = json::array();
        for (const auto& zs : report.ascent->certificate) {
            chain.push_back(atom_names(zs));
        }
        j["ascent"] = {{"ascent", report.ascent->ascent},
                       {"stabilized_zero_set", atom_names(report.ascent->stabilized_zero_set)},
                       {"certificate", chain}};
    }
    return j;
}

}  // namespace oplab
