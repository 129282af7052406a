#include "casimir/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir {

namespace {

inline double unchecked_acceleration(double u, double c_hat) {
    const double s = 1.0 + u;
    const double s2 = s * s;
    return -u - c_hat / (s2 * s2);
}

inline bool in_contact(double u) { return !(1.0 + u > 0.0); }

void fill_times(Trajectory& traj) {
    traj.times.resize(traj.u.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        traj.times[i] = static_cast<double>(i) * traj.dt;
}

void fill_energy(Trajectory& traj) {
    traj.energy.resize(traj.u.size());
    kernels::total_energy(traj.u, traj.v, traj.c_hat, traj.energy);
}

} // namespace

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw DomainError("time step must be positive");
    if (n_steps < 2)
        throw DomainError("at least two steps are required");
    if (!(c_hat >= 0.0) || !std::isfinite(c_hat))
        throw DomainError("c_hat must be non-negative");
    if (in_contact(u0))
        throw DomainError("initial displacement puts the plates in contact (1 + u0 <= 0)");
    if (!std::isfinite(u0) || !std::isfinite(v0))
        throw DomainError("initial state must be finite");
}

std::size_t SimConfig::steps_for_periods(double periods, double dt) {
    if (!(periods > 0.0) || !(dt > 0.0))
        throw DomainError("periods and dt must be positive");
    return static_cast<std::size_t>(std::llround(periods * 2.0 * std::numbers::pi / dt));
}

double acceleration(double u, double c_hat) {
    if (in_contact(u)) {
        std::ostringstream os;
        os << "plates in contact: 1 + u = " << 1.0 + u;
        throw SingularityError(os.str());
    }
    return unchecked_acceleration(u, c_hat);
}

double total_energy(double u, double v, double c_hat) {
    if (in_contact(u))
        throw SingularityError("energy undefined at plate contact");
    const double s = 1.0 + u;
    return (0.5 * (v * v) + 0.5 * (u * u)) - (c_hat / 3.0) / (s * s * s);
}

std::vector<double> verlet_positions(double u_previous, double u_current, double c_hat,
                                     double dt, std::size_t n_steps) {
    std::vector<double> out;
    out.reserve(n_steps + 1);
    out.push_back(u_current);
    const double dt2 = dt * dt;
    double prev = u_previous;
    double cur = u_current;
    for (std::size_t i = 0; i < n_steps; ++i) {
        if (in_contact(cur))
            break;
        const double next = 2.0 * cur - prev + unchecked_acceleration(cur, c_hat) * dt2;
        if (in_contact(next))
            break;
        out.push_back(next);
        prev = cur;
        cur = next;
    }
    return out;
}

Trajectory verlet_integrate(const SimConfig& cfg) {
    cfg.validate();
    Trajectory traj;
    traj.c_hat = cfg.c_hat;
    traj.dt = cfg.dt;

    const double u1 = cfg.u0 + cfg.v0 * cfg.dt +
                      0.5 * unchecked_acceleration(cfg.u0, cfg.c_hat) * cfg.dt * cfg.dt;
    traj.u.reserve(cfg.n_steps + 1);
    traj.u.push_back(cfg.u0);
    if (in_contact(u1)) {
        traj.collapsed = true;
    } else {
        auto rest = verlet_positions(cfg.u0, u1, cfg.c_hat, cfg.dt, cfg.n_steps - 1);
        traj.collapsed = rest.size() < cfg.n_steps;
        traj.u.insert(traj.u.end(), rest.begin(), rest.end());
    }

    traj.v.assign(traj.u.size(), cfg.v0);
    if (traj.u.size() >= 2)
        kernels::central_velocity(traj.u, cfg.dt, traj.v);
    fill_times(traj);
    fill_energy(traj);
    return traj;
}

Trajectory rk4_integrate(const SimConfig& cfg) {
    cfg.validate();
    Trajectory traj;
    traj.c_hat = cfg.c_hat;
    traj.dt = cfg.dt;
    traj.u.reserve(cfg.n_steps + 1);
    traj.v.reserve(cfg.n_steps + 1);

    const double h = cfg.dt;
    const double c = cfg.c_hat;
    double u = cfg.u0;
    double v = cfg.v0;
    traj.u.push_back(u);
    traj.v.push_back(v);
    for (std::size_t i = 0; i < cfg.n_steps; ++i) {
        const double k1u = v;
        const double k1v = unchecked_acceleration(u, c);
        const double u2 = u + 0.5 * h * k1u;
        if (in_contact(u2)) {
            traj.collapsed = true;
            break;
        }
        const double k2u = v + 0.5 * h * k1v;
        const double k2v = unchecked_acceleration(u2, c);
        const double u3 = u + 0.5 * h * k2u;
        if (in_contact(u3)) {
            traj.collapsed = true;
            break;
        }
        const double k3u = v + 0.5 * h * k2v;
        const double k3v = unchecked_acceleration(u3, c);
        const double u4 = u + h * k3u;
        if (in_contact(u4)) {
            traj.collapsed = true;
            break;
        }
        const double k4u = v + h * k3v;
        const double k4v = unchecked_acceleration(u4, c);
        const double un = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        const double vn = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (in_contact(un)) {
            traj.collapsed = true;
            break;
        }
        u = un;
        v = vn;
        traj.u.push_back(u);
        traj.v.push_back(v);
    }
    fill_times(traj);
    fill_energy(traj);
    return traj;
}

std::vector<double> energy_deviation(const Trajectory& traj) {
    std::vector<double> out(traj.u.size());
    if (!out.empty())
        kernels::energy_change(traj.u, traj.v, traj.u.front(), traj.v.front(), traj.c_hat, out);
    return out;
}

double energy_drift(const Trajectory& traj) {
    if (traj.u.empty())
        return 0.0;
    const auto dev = energy_deviation(traj);
    double worst = 0.0;
    for (double d : dev)
        worst = std::max(worst, std::abs(d));
    double kinetic = 0.0;
    for (double v : traj.v)
        kinetic = std::max(kinetic, 0.5 * v * v);
    if (worst == 0.0)
        return 0.0;
    if (kinetic == 0.0)
        return std::numeric_limits<double>::infinity();
    return worst / kinetic;
}

std::vector<TurningSample> detect_turning_points(const Trajectory& traj) {
    const std::size_t n = traj.u.size();
    if (n < 3)
        throw InsufficientDataError("turning-point detection needs at least 3 samples");
    std::vector<TurningSample> out;
    const auto& u = traj.u;
    const auto& v = traj.v;
    for (std::size_t i = 1; i < n; ++i) {
        const bool change = (v[i - 1] < 0.0 && v[i] >= 0.0) || (v[i - 1] > 0.0 && v[i] <= 0.0);
        if (!change)
            continue;
        if (v[i] == 0.0 && i + 1 < n && v[i + 1] == 0.0)
            continue; // resting, not turning
        const bool is_min = v[i - 1] < 0.0;
        // The extreme sample of the bracketing pair becomes the parabola centre.
        std::size_t c = is_min ? (u[i] <= u[i - 1] ? i : i - 1) : (u[i] >= u[i - 1] ? i : i - 1);
        c = std::clamp<std::size_t>(c, 1, n - 2);
        const double um = u[c - 1];
        const double u0 = u[c];
        const double up = u[c + 1];
        const double curvature = um - 2.0 * u0 + up;
        TurningSample ts;
        ts.kind = curvature > 0.0 ? TurningKind::minimum
                  : curvature < 0.0 ? TurningKind::maximum
                                    : (is_min ? TurningKind::minimum : TurningKind::maximum);
        if (curvature != 0.0) {
            const double offset = 0.5 * (um - up) / curvature; // in units of dt, |offset| <= 1
            ts.tau = traj.times[c] + offset * traj.dt;
            ts.u = u0 - 0.25 * (um - up) * offset;
        } else {
            ts.tau = traj.times[c];
            ts.u = u0;
        }
        out.push_back(ts);
    }
    return out;
}

} // namespace casimir
