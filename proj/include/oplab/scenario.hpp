#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "oplab/analysis.hpp"
#include "oplab/grid.hpp"
#include "oplab/measure.hpp"
#include "oplab/orlicz.hpp"

namespace oplab {

// A scenario file: one carrier, one transformation, and optionally an
// Orlicz function and a function on the carrier. Rational weights are
// parsed exactly from "p/q" strings. See docs/format.md.
struct Scenario {
    enum class Carrier { Atomic, Grid };

    Carrier carrier = Carrier::Atomic;

    std::optional<AtomicMeasureSpace> space;
    std::optional<AtomMap> atom_map;

    std::optional<GridDomain> domain;
    std::optional<AffineMap> affine;

    std::optional<OrliczFunction> orlicz;

    // Either a builtin name (resolved against the carrier) or a sample table.
    std::string builtin_function;
    std::optional<std::vector<double>> function_table;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);

// Resolves the scenario's function on the atomic carrier (per-atom values).
std::vector<double> atomic_function_values(const Scenario& s);

// Resolves the scenario's function on the grid carrier. Builtins: zero,
// linear, quadratic, cubic, product (2D), hat, bump.
GridFunction grid_function_values(const Scenario& s);
GridFunction builtin_grid_function(const std::string& name, const GridDomain& domain);

// Analysis report as schema-1 JSON; rationals rendered as "p/q" strings.
nlohmann::json report_to_json(const AnalysisReport& report, const AtomicMeasureSpace& space);

}  // namespace oplab
