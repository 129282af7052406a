#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "casimir/analysis.hpp"
#include "casimir/fit.hpp"
#include "casimir/integrator.hpp"
#include "casimir/physics_model.hpp"

namespace casimir::io {

/// Shortest "%.17g"-style text; parses back to the identical double.
std::string format_double(double value);

/// Strict whole-string parse; throws DomainError on trailing junk or overflow.
double parse_double(std::string_view text);

// --- trajectory CSV: header `tau,u,v,energy`, one sample per row ----------

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Throws ParseError with the 1-based line of the first malformed row.
/// dt is taken from the first two time stamps; c_hat is not stored and stays 0.
Trajectory read_trajectory_csv(std::istream& is);

// --- flat `key = value` files with optional `[section name]` blocks --------

struct KeyValueSection {
    std::string name;
    std::size_t line = 0;
    std::map<std::string, std::string> values;
    std::map<std::string, std::size_t> lines;
};

struct KeyValueFile {
    KeyValueSection globals;
    std::vector<KeyValueSection> sections;
};

/// '#' starts a comment. Keys are case-sensitive; a repeated key is an error.
KeyValueFile parse_key_value(std::istream& is);

// --- JSON documents -------------------------------------------------------

nlohmann::ordered_json to_json(const EquilibriumReport& report);
nlohmann::ordered_json to_json(const FitResult& fit);
nlohmann::ordered_json to_json(const Device& device);

// --- SVG ------------------------------------------------------------------

/// Line plot of (x - x0) / x0 against t / t*.
std::string trajectory_svg(const Trajectory& traj);

} // namespace casimir::io
