#include "casimir/analysis.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kRootTolerance = 1e-14;
constexpr int kMaxBisections = 400;

/// Bisection for f with f(lo) < 0 < f(hi) and a single sign change between.
/// Stops when the bracket is within kRootTolerance of its upper end or cannot
/// shrink further.
template <class F>
double bisect_root(F f, double lo, double hi) {
    for (int i = 0; i < kMaxBisections; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= kRootTolerance * hi)
            break;
    }
    return 0.5 * (lo + hi);
}

void require_c_hat(double c_hat) {
    if (!(c_hat >= 0.0) || !std::isfinite(c_hat))
        throw DomainError("c_hat must be non-negative and finite");
}

/// pi^2 hbar c A / (60 x^5), the stiffness that zeroes V'' at x.
double stability_factor(double area, double x_min) {
    const double x2 = x_min * x_min;
    return constants::pi2_hbar_c * area / (60.0 * x2 * x2 * x_min);
}

EquilibriumReport build_report(double c_hat, double x0, double area) {
    EquilibriumReport r;
    r.x0 = x0;
    r.c_hat = c_hat;
    r.k_crit = critical_stiffness(area, x0);
    const ScaledRoots roots = solve_scaled_equilibrium(c_hat);
    if (roots.chi_unstable)
        r.x_eq_unstable = *roots.chi_unstable * x0;
    if (roots.displacement_stable) {
        const double eps = *roots.displacement_stable;
        const double chi = 1.0 - eps;
        const double chi2 = chi * chi;
        r.displacement_stable = eps;
        r.x_eq_stable = chi * x0;
        r.v2_at_min = 1.0 - 4.0 * c_hat / (chi2 * chi2 * chi);
        r.omega_eff = std::sqrt(*r.v2_at_min);
        r.stable = true;
    }
    return r;
}

HarmonicExpansion expand(double c_hat, double x0, double k_over_area) {
    const ScaledRoots roots = solve_scaled_equilibrium(c_hat);
    if (!roots.displacement_stable) {
        std::ostringstream os;
        os << "no stable equilibrium: c_hat = " << c_hat << " exceeds the pull-in limit "
           << critical_c_hat;
        throw UnstableConfigurationError(os.str());
    }
    const double chi = 1.0 - *roots.displacement_stable;
    const double chi2 = chi * chi;
    HarmonicExpansion h;
    h.k_eff_hat = 1.0 - 4.0 * c_hat / (chi2 * chi2 * chi);
    h.omega_hat = std::sqrt(h.k_eff_hat);
    h.v_min = k_over_area * x0 * x0 * scaled_potential(chi, c_hat);
    return h;
}

TurningPoint turning_point(double c_hat, double x0) {
    const double eps = solve_scaled_turning_point(c_hat);
    return TurningPoint{x0 * (1.0 - eps), x0 * eps, eps};
}

} // namespace

ScaledRoots solve_scaled_equilibrium(double c_hat) {
    require_c_hat(c_hat);
    ScaledRoots roots;
    if (c_hat == 0.0) {
        roots.displacement_stable = 0.0;
        return roots;
    }
    if (!(c_hat < critical_c_hat))
        return roots;

    // Stable branch in eps = 1 - chi on (0, 1/5): (1 - eps)^4 eps is increasing there.
    roots.displacement_stable = bisect_root(
        [c_hat](double eps) {
            const double s = 1.0 - eps;
            const double s2 = s * s;
            return s2 * s2 * eps - c_hat;
        },
        0.0, 1.0 - critical_gap_fraction);

    // Unstable branch on (0, 4/5): chi^4 (1 - chi) is increasing there.
    roots.chi_unstable = bisect_root(
        [c_hat](double chi) {
            const double c2 = chi * chi;
            return c2 * c2 * (1.0 - chi) - c_hat;
        },
        0.0, critical_gap_fraction);
    return roots;
}

EquilibriumReport solve_equilibrium(const Device& device) {
    return build_report(device.scaled.c_hat, device.physical.x0, device.physical.area);
}

EquilibriumReport solve_equilibrium(const PhysicalParams& p) {
    return solve_equilibrium(make_device(p));
}

bool stability_criterion(double k, double area, double x_min) {
    if (!(k > 0.0) || !(area > 0.0) || !(x_min > 0.0))
        throw DomainError("stability criterion needs positive k, area and x_min");
    return k > stability_factor(area, x_min);
}

double critical_stiffness(double area, double x0) {
    if (!(area > 0.0) || !(x0 > 0.0))
        throw DomainError("critical stiffness needs positive area and x0");
    return stability_factor(area, critical_gap_fraction * x0);
}

HarmonicExpansion harmonic_expansion(const Device& device) {
    return expand(device.scaled.c_hat, device.physical.x0,
                  device.physical.k / device.physical.area);
}

HarmonicExpansion harmonic_expansion(const PhysicalParams& p) {
    return harmonic_expansion(make_device(p));
}

double solve_scaled_turning_point(double c_hat) {
    const ScaledRoots roots = solve_scaled_equilibrium(c_hat);
    if (!roots.displacement_stable)
        throw UnstableConfigurationError("no stable equilibrium, the plate pulls in");
    if (c_hat == 0.0)
        return 0.0;

    // Energy balance V(chi) = V(1) with the trivial root chi = 1 divided out:
    //   g(eps) = eps (1 - eps)^3 - (2 c_hat / 3)(3 - 3 eps + eps^2),
    // negative between x0 and the turning point, positive beyond it.
    const auto g = [c_hat](double eps) {
        const double s = 1.0 - eps;
        return eps * s * s * s - (2.0 * c_hat / 3.0) * (3.0 - 3.0 * eps + eps * eps);
    };
    const double eps_barrier = 1.0 - *roots.chi_unstable;
    if (!(g(eps_barrier) > 0.0)) {
        std::ostringstream os;
        os << "plate released at x0 crosses the unstable equilibrium at chi = "
           << *roots.chi_unstable << " (c_hat = " << c_hat << ")";
        throw CollapseError(os.str());
    }
    return bisect_root(g, 0.0, eps_barrier);
}

TurningPoint solve_turning_point(const Device& device) {
    return turning_point(device.scaled.c_hat, device.physical.x0);
}

TurningPoint solve_turning_point(const PhysicalParams& p) {
    return solve_turning_point(make_device(p));
}

} // namespace casimir
