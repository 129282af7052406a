#pragma once

// Static analysis of the spring + Casimir potential.
//
// In natural units (chi = x / x0) the force balance reads
//
//     chi^4 (1 - chi) = c_hat,
//
// whose left side peaks at chi = 4/5 with value 4^4 / 5^5. Below the peak
// there are two roots: the stable one in (4/5, 1) and the unstable one in
// (0, 4/5). Above it the plate pulls in. The stable root is resolved in the
// displacement variable 1 - chi, which is ~1e-9 for realistic devices.

#include <optional>

#include "casimir/physics_model.hpp"

namespace casimir {

/// Largest c_hat with a stable equilibrium (exclusive): 4^4 / 5^5.
inline constexpr double critical_c_hat = 256.0 / 3125.0;

/// The stable equilibrium always lies above this fraction of x0.
inline constexpr double critical_gap_fraction = 0.8;

struct EquilibriumReport {
    std::optional<double> x_eq_stable;   ///< m
    std::optional<double> x_eq_unstable; ///< m
    /// (x0 - x_eq_stable) / x0, resolved directly rather than from x_eq_stable.
    std::optional<double> displacement_stable;
    /// V''(chi_eq) = 1 - 4 c_hat / chi_eq^5 in natural units.
    std::optional<double> v2_at_min;
    std::optional<double> omega_eff; ///< sqrt(v2_at_min), in 1/t*
    bool stable = false;
    double k_crit = 0.0; ///< N/m
    double x0 = 0.0;
    double c_hat = 0.0;
};

struct ScaledRoots {
    std::optional<double> displacement_stable; ///< 1 - chi of the stable root
    std::optional<double> chi_unstable;
};

/// Both roots of chi^4 (1 - chi) = c_hat by bracketed bisection (relative 1e-14).
ScaledRoots solve_scaled_equilibrium(double c_hat);

EquilibriumReport solve_equilibrium(const Device& device);
EquilibriumReport solve_equilibrium(const PhysicalParams& p);

/// k > pi^2 hbar c A / (60 x_min^5): positive curvature of the potential at x_min.
bool stability_criterion(double k, double area, double x_min);

/// Pull-in stiffness: the criterion evaluated at x_min = 4/5 x0.
double critical_stiffness(double area, double x0);

struct HarmonicExpansion {
    double v_min = 0.0;     ///< total potential at the stable equilibrium, J/m^2
    double k_eff_hat = 0.0; ///< scaled curvature at the minimum
    double omega_hat = 0.0; ///< small-oscillation frequency, 1/t*
};

/// Second-order expansion about the stable equilibrium. Throws
/// UnstableConfigurationError when there is none.
HarmonicExpansion harmonic_expansion(const Device& device);
HarmonicExpansion harmonic_expansion(const PhysicalParams& p);

struct TurningPoint {
    double x_turn = 0.0;       ///< m
    double margin = 0.0;       ///< x0 - x_turn, m
    double displacement = 0.0; ///< margin / x0
};

/// (1 - chi) at which a plate released at rest from x0 first stops, i.e. the
/// root of (chi - 1)^2 = (2 c_hat / 3)(chi^-3 - 1) below x0. Zero for c_hat = 0.
/// Throws UnstableConfigurationError without a stable equilibrium and
/// CollapseError when the barrier at the unstable root is too low to stop the plate.
double solve_scaled_turning_point(double c_hat);

TurningPoint solve_turning_point(const Device& device);
TurningPoint solve_turning_point(const PhysicalParams& p);

} // namespace casimir
