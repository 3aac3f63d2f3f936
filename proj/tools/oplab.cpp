#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "oplab/analysis.hpp"
#include "oplab/errors.hpp"
#include "oplab/oracle.hpp"
#include "oplab/scenario.hpp"

namespace {

using namespace oplab;
using nlohmann::json;

std::string fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.11f", v);
    return buf;
}

void print_human_report(const AnalysisReport& report, const AtomicMeasureSpace& space) {
    const auto names = [&](const std::vector<std::size_t>& indices) {
        std::string out = "{";
        for (std::size_t i = 0; i < indices.size(); ++i) {
            out += (i ? ", " : "") + space.atoms()[indices[i]];
        }
        return out + "}";
    };
    std::cout << "nonsingular:            " << (report.nonsingular ? "yes" : "no") << "\n";
    if (report.singular_witness) {
        std::cout << "  witness: atom '" << space.atoms()[report.singular_witness->first]
                  << "' (positive weight) maps to null atom '"
                  << space.atoms()[report.singular_witness->second] << "'\n";
    }
    std::cout << "measure preserving:     " << (report.measure_preserving ? "yes" : "no") << "\n";
    std::cout << "expansive:              " << (report.expansive ? "yes" : "no") << "\n";
    if (!report.nonsingular) {
        std::cout << "kernel/injectivity/ascent omitted: T is singular\n";
        return;
    }
    std::cout << "omega0:                 " << names(report.kernel->omega0) << "\n";
    std::cout << "kernel dimension:       " << report.kernel->kernel_dimension << "\n";
    std::cout << "zero operator:          " << (report.kernel->is_zero_operator ? "yes" : "no")
              << "\n";
    std::cout << "injective:              " << (*report.injective ? "yes" : "no") << "\n";
    std::cout << "essentially surjective: " << (*report.essentially_surjective ? "yes" : "no")
              << "\n";
    std::cout << "ascent:                 " << report.ascent->ascent << "\n";
    std::cout << "zero-set chain:\n";
    for (std::size_t k = 0; k < report.ascent->certificate.size(); ++k) {
        std::cout << "  Omega_" << (k + 1) << " = " << names(report.ascent->certificate[k])
                  << "\n";
    }
}

int cmd_analyze(const std::string& path, bool as_json) {
    const Scenario s = load_scenario(path);
    if (s.carrier != Scenario::Carrier::Atomic || !s.atom_map) {
        throw ValidationError("analyze needs an atomic carrier with an atomic transformation");
    }
    const AnalysisReport report = analyze(*s.atom_map, *s.space);
    if (as_json) {
        json j = report_to_json(report, *s.space);
        if (report.nonsingular) {
            json rn = json::array();
            const auto d = rn_derivative(pushforward(*s.atom_map, *s.space, 1), *s.space);
            for (const auto& v : d.values) {
                rn.push_back(rational_to_string(v));
            }
            j["rn_derivative"] = {{"order", 1}, {"values", rn}};
        }
        std::cout << j.dump(2) << "\n";
    } else {
        print_human_report(report, *s.space);
    }
    return 0;
}

int cmd_norm(const std::string& path, double tol) {
    const Scenario s = load_scenario(path);
    if (!s.orlicz) {
        throw ValidationError("norm needs an 'orlicz' entry in the scenario");
    }
    if (s.carrier == Scenario::Carrier::Atomic) {
        const auto values = atomic_function_values(s);
        const auto weights = s.space->weights_as_doubles();
        const double norm = luxemburg_norm(*s.orlicz, values, weights, tol);
        std::cout << "luxemburg_norm = " << fixed12(norm) << "  (tol " << tol << ")\n";
    } else {
        const GridFunction f = grid_function_values(s);
        const double lux = grid_luxemburg_norm(*s.orlicz, f, *s.domain, tol);
        const double sob = sobolev_norm(*s.orlicz, f, *s.domain, tol);
        std::cout << "luxemburg_norm = " << fixed12(lux) << "  (tol " << tol << ")\n";
        std::cout << "sobolev_norm   = " << fixed12(sob) << "  (tol " << tol << ")\n";
    }
    return 0;
}

GridDomain refined(const GridDomain& d, std::size_t factor) {
    std::array<double, 2> lo{d.lo(0), d.dim() == 2 ? d.lo(1) : 0.0};
    std::array<double, 2> hi{d.hi(0), d.dim() == 2 ? d.hi(1) : 1.0};
    std::array<std::size_t, 2> cells{d.cells(0) * factor,
                                     d.dim() == 2 ? d.cells(1) * factor : 1};
    return GridDomain(d.dim(), lo, hi, cells);
}

int cmd_verify(const std::string& path) {
    const Scenario s = load_scenario(path);
    if (s.carrier != Scenario::Carrier::Grid || !s.affine) {
        throw ValidationError("verify needs a grid carrier with an affine transformation");
    }
    if (s.function_table) {
        throw ValidationError("verify refines the grid, so it needs a builtin function");
    }
    const OrliczFunction phi = s.orlicz ? *s.orlicz : OrliczFunction::power(2.0);
    bool all_pass = true;

    std::cout << "check            m        residual/bound        verdict\n";
    double residual_coarse = 0.0;
    for (int level = 0; level < 2; ++level) {
        const GridDomain domain = refined(*s.domain, level == 0 ? 1 : 2);
        Scenario at_level = s;
        at_level.domain = domain;
        const GridFunction f = grid_function_values(at_level);

        const ChainRuleReport chain = verify_chain_rule(f, *s.affine, domain);
        const bool chain_ok = chain.max_abs_residual <=
                              std::max(1e-10, 10.0 * chain.grid_h * chain.grid_h);
        all_pass = all_pass && chain_ok;
        std::printf("chain-rule   %6zu   %20.12e   %s\n", domain.cells(0),
                    chain.max_abs_residual, chain_ok ? "pass" : "FAIL");
        if (level == 0) {
            residual_coarse = chain.max_abs_residual;
        } else if (residual_coarse > 1e-12) {
            const double order = std::log2(residual_coarse / chain.max_abs_residual);
            std::printf("  empirical convergence order: %.2f\n", order);
        } else {
            std::printf("  residuals at the exactness floor; order not estimated\n");
        }

        const BoundReport bound = verify_boundedness(phi, f, *s.affine, domain);
        all_pass = all_pass && bound.holds;
        std::printf("norm-bound   %6zu   lhs %.6e <= rhs %.6e (||f_T||_inf = %.3f, M = %.3f)   %s\n",
                    domain.cells(0), bound.lhs, bound.rhs, bound.rn_sup, bound.entry_bound,
                    bound.holds ? "pass" : "FAIL");
    }

    // Kernel-vanishing check on a canned mask: a bump supported in the left
    // half of the box, mask = left half.
    {
        const GridDomain domain = *s.domain;
        const std::size_t mx = domain.cells(0);
        std::vector<bool> mask(domain.cell_count(), false);
        for (std::size_t cell = 0; cell < mask.size(); ++cell) {
            mask[cell] = (cell % mx) < mx / 2;
        }
        GridFunction f = sample(domain, [&](std::array<double, 2> p) {
            const double mid = 0.5 * (domain.lo(0) + domain.hi(0));
            const double quarter = domain.lo(0) + 0.25 * (domain.hi(0) - domain.lo(0));
            const double s_ = (p[0] - quarter) / (0.2 * (mid - domain.lo(0)));
            return std::abs(s_) < 1.0 ? std::exp(-1.0 / (1.0 - s_ * s_)) : 0.0;
        });
        const VanishingReport vanish = verify_kernel_derivative_vanishing(f, mask, domain);
        const bool vanish_ok = vanish.max_outside <= 1e-14;
        all_pass = all_pass && vanish_ok;
        std::printf("kernel-vanishing %2s   max outside band %.3e   %s\n", "",
                    vanish.max_outside, vanish_ok ? "pass" : "FAIL");
    }

    return all_pass ? 0 : 1;
}

int cmd_fuzz(std::uint64_t seed, std::size_t instances, std::size_t max_atoms) {
    InstanceGenerator gen(seed, max_atoms, {Rat(0), Rat(1), Rat(1, 2), Rat(2), Rat(3)}, true);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const auto [space, map] = gen.next();
        const AnalysisReport report = analyze(map, space);
        const auto oracle_k = oracle_kernel(map, space);
        const std::size_t oracle_a = oracle_ascent(map, space);

        std::vector<std::size_t> omega0_pos;
        std::vector<std::size_t> oracle_pos;
        for (std::size_t a : report.kernel->omega0) {
            if (space.weight(a) > Rat(0)) {
                omega0_pos.push_back(a);
            }
        }
        for (std::size_t a : oracle_k) {
            if (space.weight(a) > Rat(0)) {
                oracle_pos.push_back(a);
            }
        }
        const bool ok = omega0_pos == oracle_pos && oracle_a == report.ascent->ascent;
        if (ok) {
            ++agree;
        } else {
            Scenario counter;
            counter.carrier = Scenario::Carrier::Atomic;
            counter.space = space;
            counter.atom_map = map;
            const std::string out = "counterexample.json";
            std::ofstream file(out);
            file << scenario_to_json(counter).dump(2) << "\n";
            std::cout << instances << " instances: disagreement at #" << i
                      << "; replayable scenario written to " << out << "\n";
            return 1;
        }
    }
    std::cout << agree << "/" << instances << " agree\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"composition operators on Orlicz-Sobolev spaces, desk-scale lab"};
    app.require_subcommand(1);

    std::string path;
    bool as_json = false;
    double tol = 1e-12;

    std::uint64_t seed = 42;
    if (const char* env = std::getenv("OPLAB_SEED")) {
        seed = std::strtoull(env, nullptr, 10);
    }
    std::size_t instances = 1000;
    std::size_t max_atoms = 10;

    auto* analyze_cmd = app.add_subcommand("analyze", "kernel, injectivity, and ascent report");
    analyze_cmd->add_option("file", path, "scenario file")->required();
    analyze_cmd->add_flag("--json", as_json, "emit the machine-readable JSON report");

    auto* norm_cmd = app.add_subcommand("norm", "Luxemburg / Sobolev norms of the scenario function");
    norm_cmd->add_option("file", path, "scenario file")->required();
    norm_cmd->add_option("--tol", tol, "relative bisection tolerance");

    auto* verify_cmd = app.add_subcommand("verify", "grid-carrier verification checks");
    verify_cmd->add_option("file", path, "scenario file")->required();

    auto* fuzz_cmd = app.add_subcommand("fuzz", "oracle-vs-theorem agreement sweep");
    fuzz_cmd->add_option("--seed", seed, "instance stream seed (default 42 or OPLAB_SEED)");
    fuzz_cmd->add_option("--instances", instances, "number of instances");
    fuzz_cmd->add_option("--max-atoms", max_atoms, "atoms per instance, at most 12");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) {
            return cmd_analyze(path, as_json);
        }
        if (norm_cmd->parsed()) {
            return cmd_norm(path, tol);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(path);
        }
        if (fuzz_cmd->parsed()) {
            return cmd_fuzz(seed, instances, max_atoms);
        }
    } catch (const oplab::TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
