#include "casimir/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "casimir/analysis.hpp"
#include "casimir/errors.hpp"
#include "casimir/fit.hpp"
#include "casimir/io.hpp"

namespace casimir {

namespace {

double& field(PhysicalParams& p, SweepAxis axis) {
    switch (axis) {
    case SweepAxis::k:
        return p.k;
    case SweepAxis::area:
        return p.area;
    case SweepAxis::x0:
        return p.x0;
    }
    return p.k;
}

double field(const PhysicalParams& p, SweepAxis axis) {
    PhysicalParams copy = p;
    return field(copy, axis);
}

SweepRow evaluate_point(const SweepSpec& spec, const PhysicalParams& params) {
    SweepRow row;
    row.params = params;
    try {
        const Device device = make_device(params);
        const EquilibriumReport report = solve_equilibrium(device);
        row.k_crit = report.k_crit;
        row.stable = report.stable;
        if (report.stable) {
            row.x_eq_stable = report.x_eq_stable;
            row.omega_hat = report.omega_eff;
            if (spec.simulate) {
                SimConfig cfg;
                cfg.c_hat = device.scaled.c_hat;
                cfg.dt = spec.dt;
                cfg.n_steps = SimConfig::steps_for_periods(spec.periods, spec.dt);
                const Trajectory traj = verlet_integrate(cfg);
                if (traj.collapsed)
                    throw CollapseError("plates touched during simulation");
                row.amp_fit = fit_sinusoid(traj).amp;
            }
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

double midpoint(const AxisSpec& axis, double a, double b) {
    return axis.spacing == Spacing::log ? std::sqrt(a * b) : 0.5 * (a + b);
}

void append_optional(std::string& out, const std::optional<double>& value) {
    if (value)
        out += io::format_double(*value);
}

std::string csv_escape(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"')
            out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string_view axis_name(SweepAxis axis) noexcept {
    switch (axis) {
    case SweepAxis::k:
        return "k";
    case SweepAxis::area:
        return "area";
    case SweepAxis::x0:
        return "x0";
    }
    return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) noexcept {
    if (name == "k")
        return SweepAxis::k;
    if (name == "area")
        return SweepAxis::area;
    if (name == "x0")
        return SweepAxis::x0;
    return std::nullopt;
}

std::vector<double> AxisSpec::values() const {
    std::vector<double> out(count);
    const double last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / last;
        if (spacing == Spacing::log)
            out[i] = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
        else
            out[i] = min + t * (max - min);
    }
    // Pin the endpoints against exp/log round-off.
    out.front() = min;
    out.back() = max;
    return out;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 3)
        throw DomainError("a sweep needs between one and three axes");
    std::set<SweepAxis> seen;
    for (const AxisSpec& a : axes) {
        if (!seen.insert(a.axis).second)
            throw DomainError("axis '" + std::string(axis_name(a.axis)) + "' given twice");
        if (a.count < 2)
            throw DomainError("axis '" + std::string(axis_name(a.axis)) + "' needs count >= 2");
        if (!(a.min > 0.0) || !(a.max >= a.min) || !std::isfinite(a.max))
            throw DomainError("axis '" + std::string(axis_name(a.axis)) +
                              "' needs 0 < min <= max");
    }
    PhysicalParams probe = fixed;
    for (const AxisSpec& a : axes)
        field(probe, a.axis) = a.min;
    probe.validate();
    if (simulate && (!(dt > 0.0) || !(periods > 0.0)))
        throw DomainError("simulation needs positive dt and periods");
}

std::size_t SweepSpec::size() const {
    std::size_t n = 1;
    for (const AxisSpec& a : axes)
        n *= a.count;
    return n;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    std::vector<std::vector<double>> grids;
    for (const AxisSpec& a : spec.axes)
        grids.push_back(a.values());

    const std::size_t n = spec.size();
    std::vector<SweepRow> rows(n);
    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            PhysicalParams p = spec.fixed;
            std::size_t rem = idx;
            for (std::size_t a = spec.axes.size(); a-- > 0;) {
                const std::size_t count = spec.axes[a].count;
                field(p, spec.axes[a].axis) = grids[a][rem % count];
                rem /= count;
            }
            rows[idx] = evaluate_point(spec, p);
        }
    };

    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    if (threads == 1) {
        work(0, n);
        return rows;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(n, t * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool)
        th.join();
    return rows;
}

std::vector<BoundaryPoint> stability_boundary(const SweepSpec& spec,
                                              const std::vector<SweepRow>& rows) {
    if (spec.axes.size() != 2)
        throw DomainError("stability boundary needs exactly two axes");
    if (rows.size() != spec.size())
        throw DomainError("row count does not match the sweep grid");
    const AxisSpec& ax1 = spec.axes[0];
    const AxisSpec& ax2 = spec.axes[1];
    const auto g1 = ax1.values();
    const auto g2 = ax2.values();
    const std::size_t n1 = ax1.count;
    const std::size_t n2 = ax2.count;
    const auto at = [&](std::size_t i, std::size_t j) -> const SweepRow& { return rows[i * n2 + j]; };

    std::vector<BoundaryPoint> out;
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            if (i + 1 < n1 && at(i, j).stable != at(i + 1, j).stable)
                out.push_back({midpoint(ax1, g1[i], g1[i + 1]), g2[j]});
            if (j + 1 < n2 && at(i, j).stable != at(i, j + 1).stable)
                out.push_back({g1[i], midpoint(ax2, g2[j], g2[j + 1])});
        }
    }
    return out;
}

std::vector<BoundaryPoint> stability_boundary(const SweepSpec& spec, unsigned threads) {
    if (spec.axes.size() != 2)
        throw DomainError("stability boundary needs exactly two axes");
    SweepSpec analysis_only = spec;
    analysis_only.simulate = false;
    return stability_boundary(analysis_only, run_sweep(analysis_only, threads));
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::string out;
    for (const AxisSpec& a : spec.axes) {
        out += axis_name(a.axis);
        out += ',';
    }
    out += "stable,x_eq_stable,k_crit,omega_hat,amp_fit,error\n";
    for (const SweepRow& row : rows) {
        for (const AxisSpec& a : spec.axes) {
            out += io::format_double(field(row.params, a.axis));
            out += ',';
        }
        out += row.stable ? "true" : "false";
        out += ',';
        append_optional(out, row.x_eq_stable);
        out += ',';
        if (row.error.empty() || row.k_crit > 0.0)
            out += io::format_double(row.k_crit);
        out += ',';
        append_optional(out, row.omega_hat);
        out += ',';
        append_optional(out, row.amp_fit);
        out += ',';
        out += csv_escape(row.error);
        out += '\n';
    }
    return out;
}

} // namespace casimir
