#pragma once

// Time integration of the scaled equation of motion
//
//     u'' = -u - c_hat / (1 + u)^4,   u = (x - x0) / x0,  tau = t / t*
//
// The offset coordinate keeps the ~1e-9 oscillation away from the
// cancellation that integrating x ~ x0 directly would suffer.

#include <cstddef>
#include <numbers>
#include <vector>

namespace casimir {

inline constexpr double default_time_step = 2.0 * std::numbers::pi / 1000.0;
inline constexpr double default_periods = 5.0;

struct SimConfig {
    double c_hat = 0.0;
    double dt = default_time_step; ///< in units of t*
    std::size_t n_steps = 5000;    ///< number of steps; samples = n_steps + 1
    double u0 = 0.0;
    double v0 = 0.0;

    /// Throws DomainError on dt <= 0, n_steps < 2, 1 + u0 <= 0 or a negative c_hat.
    void validate() const;

    /// Number of steps covering `periods` unperturbed periods (2 pi each) at step dt.
    static std::size_t steps_for_periods(double periods, double dt);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> energy;
    double c_hat = 0.0;
    double dt = 0.0;
    bool collapsed = false; ///< the plates met; arrays end at the last valid sample

    std::size_t size() const noexcept { return u.size(); }
};

enum class TurningKind { minimum, maximum };

struct TurningSample {
    double tau = 0.0;
    double u = 0.0;
    TurningKind kind = TurningKind::minimum;
};

/// Scaled acceleration; throws SingularityError when 1 + u <= 0.
double acceleration(double u, double c_hat);

/// Scaled total energy v^2/2 + u^2/2 - c_hat / (3 (1 + u)^3).
double total_energy(double u, double v, double c_hat);

/// Position Verlet, u[i+1] = 2 u[i] - u[i-1] + a(u[i]) dt^2, started with
/// u[1] = u0 + v0 dt + a(u0) dt^2 / 2. Velocities are central differences.
Trajectory verlet_integrate(const SimConfig& cfg);

/// Continues the two-step recurrence from (u_previous, u_current) for n_steps.
/// Returns the n_steps + 1 positions starting with u_current; stops early if
/// the plates touch. Running it again from the last two positions swapped
/// retraces the path.
std::vector<double> verlet_positions(double u_previous, double u_current, double c_hat,
                                     double dt, std::size_t n_steps);

/// Classical fourth-order Runge-Kutta on (u, v); same output contract as Verlet.
Trajectory rk4_integrate(const SimConfig& cfg);

/// Max |E[i] - E[0]| over the run in units of max(v^2/2). Evaluated from
/// u and v with the Casimir constant cancelled analytically, so the result is
/// not limited by the size of E itself. Zero for a motionless trajectory.
double energy_drift(const Trajectory& traj);

/// E[i] - E[0] for every sample, in the same cancelled form.
std::vector<double> energy_deviation(const Trajectory& traj);

/// Sign changes of v, refined by the vertex of the parabola through the
/// three u samples around the extreme one.
std::vector<TurningSample> detect_turning_points(const Trajectory& traj);

} // namespace casimir
