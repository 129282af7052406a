#include "casimir/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir {

namespace {

struct Workspace {
    std::vector<double> cos_wt;
    std::vector<double> sin_wt;

    explicit Workspace(std::size_t n) : cos_wt(n), sin_wt(n) {}

    void evaluate(std::span<const double> tau, double omega) {
        for (std::size_t i = 0; i < tau.size(); ++i) {
            const double phase = omega * tau[i];
            cos_wt[i] = std::cos(phase);
            sin_wt[i] = std::sin(phase);
        }
    }

    kernels::NormalEquations normal_equations(std::span<const double> tau,
                                              std::span<const double> u, double amp) const {
        return kernels::sinusoid_normal_equations(tau, u, cos_wt, sin_wt, amp);
    }
};

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

double r_squared(std::span<const double> data, std::span<const double> model) {
    if (data.size() != model.size())
        throw DomainError("r_squared: data and model lengths differ");
    if (data.size() < 2)
        throw DomainError("r_squared: need at least two samples");
    const double mean = kernels::sum(data) / static_cast<double>(data.size());
    const double ss_tot = kernels::sum_squared_deviation(data, mean);
    if (!(ss_tot > 0.0))
        throw InsufficientDataError("r_squared: data has zero variance");
    return 1.0 - kernels::sum_squared_difference(data, model) / ss_tot;
}

FitResult fit_sinusoid(std::span<const double> tau, std::span<const double> u,
                       std::span<const double> v) {
    const std::size_t n = u.size();
    if (tau.size() != n || v.size() != n)
        throw DomainError("fit: tau, u and v lengths differ");
    if (n < 3)
        throw InsufficientDataError("fit: need at least three samples");

    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    const double range = *hi - *lo;
    if (!(range > 0.0))
        throw InsufficientDataError("fit: trajectory is constant");

    std::size_t sign_changes = 0;
    double last_change = 0.0;
    int previous = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = sign_of(v[i]);
        if (s == 0)
            continue;
        if (previous != 0 && s != previous) {
            ++sign_changes;
            last_change = tau[i];
        }
        previous = s;
    }
    if (sign_changes < 3)
        throw InsufficientDataError("fit: fewer than two oscillation cycles in the record");

    double vmax = 0.0;
    for (double x : v)
        vmax = std::max(vmax, std::abs(x));
    if (std::abs(u[0]) > 1e-3 * range || std::abs(v[0]) > 0.1 * vmax || *hi - u[0] > 1e-2 * range)
        throw DomainError("fit: the phase-free model needs a record starting at rest at u = 0");

    const double elapsed = last_change - tau[0];
    double amp = 0.5 * range;
    double omega = std::numbers::pi * static_cast<double>(sign_changes) / elapsed;

    Workspace ws(n);
    ws.evaluate(tau, omega);
    auto ne = ws.normal_equations(tau, u, amp);

    FitResult result;
    for (int it = 1; it <= fit_max_iterations; ++it) {
        result.iterations = it;
        const double det = ne.jtj_aa * ne.jtj_ww - ne.jtj_aw * ne.jtj_aw;
        if (!(det > 0.0))
            break;
        const double d_amp = (ne.jtj_ww * ne.jtr_a - ne.jtj_aw * ne.jtr_w) / det;
        const double d_omega = (ne.jtj_aa * ne.jtr_w - ne.jtj_aw * ne.jtr_a) / det;

        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
            const double trial_amp = amp + lambda * d_amp;
            const double trial_omega = omega + lambda * d_omega;
            ws.evaluate(tau, trial_omega);
            const auto trial = ws.normal_equations(tau, u, trial_amp);
            if (trial.ssr <= ne.ssr) {
                amp = trial_amp;
                omega = trial_omega;
                ne = trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No descent along the Gauss-Newton direction: at the floor of the objective.
            ws.evaluate(tau, omega);
            result.converged = true;
            break;
        }
        const double step = std::max(std::abs(lambda * d_amp) / std::abs(amp),
                                     std::abs(lambda * d_omega) / std::abs(omega));
        if (step < fit_step_tolerance) {
            result.converged = true;
            break;
        }
    }

    result.amp = amp;
    result.omega = omega;
    result.residual_rms = std::sqrt(ne.ssr / static_cast<double>(n));
    std::vector<double> model(n);
    for (std::size_t i = 0; i < n; ++i)
        model[i] = amp * (ws.cos_wt[i] - 1.0);
    result.r2 = r_squared(u, model);
    return result;
}

FitResult fit_sinusoid(const Trajectory& traj) { return fit_sinusoid(traj.times, traj.u, traj.v); }

} // namespace casimir
