#pragma once

#include <span>

#include "casimir/integrator.hpp"

namespace casimir {

/// Least-squares fit of u(tau) = amp (cos(omega tau) - 1).
struct FitResult {
    double amp = 0.0;
    double omega = 0.0; ///< 1/t*
    double r2 = 0.0;
    double residual_rms = 0.0;
    int iterations = 0;
    bool converged = false;
};

inline constexpr int fit_max_iterations = 100;
inline constexpr double fit_step_tolerance = 1e-10;

/// Damped Gauss-Newton (step halving on objective increase) from
/// amp0 = (max u - min u) / 2 and omega0 = pi * (velocity sign changes) / (time
/// of the last sign change).
///
/// The model has no phase, so the record must start at rest at its upper
/// turning point; anything else is rejected with DomainError. Records with
/// fewer than two cycles throw InsufficientDataError. A run that exhausts the
/// iteration budget returns converged = false with the best parameters seen.
FitResult fit_sinusoid(std::span<const double> tau, std::span<const double> u,
                       std::span<const double> v);
FitResult fit_sinusoid(const Trajectory& traj);

/// 1 - SS_res / SS_tot. Throws DomainError on mismatched or short input and
/// InsufficientDataError when the data has zero variance.
double r_squared(std::span<const double> data, std::span<const double> model);

} // namespace casimir
