#pragma once

// Grid exploration of the (k, area, x0) design space: stability map, pull-in
// boundary and, optionally, the fitted oscillation amplitude at every point.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/integrator.hpp"
#include "casimir/physics_model.hpp"

namespace casimir {

enum class SweepAxis { k, area, x0 };
enum class Spacing { linear, log };

std::string_view axis_name(SweepAxis axis) noexcept;
std::optional<SweepAxis> parse_axis(std::string_view name) noexcept;

struct AxisSpec {
    SweepAxis axis = SweepAxis::k;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 2;
    Spacing spacing = Spacing::linear;

    /// Grid values, endpoints included. Log spacing interpolates the exponent.
    std::vector<double> values() const;
};

struct SweepSpec {
    std::vector<AxisSpec> axes;
    PhysicalParams fixed; ///< values for the axes that are not swept
    bool simulate = false;
    double dt = default_time_step;
    double periods = default_periods;

    /// 1-3 distinct axes, count >= 2, 0 < min <= max, positive fixed values.
    void validate() const;
    std::size_t size() const;
};

struct SweepRow {
    PhysicalParams params;
    bool stable = false;
    std::optional<double> x_eq_stable;
    double k_crit = 0.0;
    std::optional<double> omega_hat;
    std::optional<double> amp_fit;
    std::string error; ///< empty unless this point failed
};

/// One row per grid point, first axis outermost. Rows are assembled by index,
/// so the result does not depend on `threads`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 1);

/// A point midway between two grid neighbours whose stability differs.
/// Coordinates follow the order of spec.axes; midpoints are geometric on log axes.
struct BoundaryPoint {
    double first = 0.0;
    double second = 0.0;
};

std::vector<BoundaryPoint> stability_boundary(const SweepSpec& spec,
                                              const std::vector<SweepRow>& rows);
std::vector<BoundaryPoint> stability_boundary(const SweepSpec& spec, unsigned threads = 1);

/// Header: swept axes, stable, x_eq_stable, k_crit, omega_hat, amp_fit, error.
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

} // namespace casimir
