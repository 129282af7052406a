#include <doctest.h>

#include <cmath>

#include "casimir/analysis.hpp"
#include "casimir/errors.hpp"
#include "casimir/sweep.hpp"

using namespace casimir;

namespace {

SweepSpec k_sweep() {
    SweepSpec spec;
    spec.fixed = PhysicalParams{1.0, 1e-10, 1e-6, 8.92e-3};
    spec.axes.push_back(AxisSpec{SweepAxis::k, 1e-8, 1e-4, 41, Spacing::log});
    return spec;
}

double cell_ratio(const AxisSpec& a) {
    return std::pow(a.max / a.min, 1.0 / static_cast<double>(a.count - 1));
}

} // namespace

TEST_CASE("axis values") {
    const auto lin = AxisSpec{SweepAxis::k, 1.0, 3.0, 3, Spacing::linear}.values();
    CHECK(lin == std::vector<double>{1.0, 2.0, 3.0});
    const auto lg = AxisSpec{SweepAxis::k, 1e-8, 1e-4, 5, Spacing::log}.values();
    CHECK(lg.front() == 1e-8);
    CHECK(lg.back() == 1e-4);
    CHECK(lg[2] == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(parse_axis("area") == SweepAxis::area);
    CHECK_FALSE(parse_axis("mass"));
    CHECK(axis_name(SweepAxis::x0) == "x0");
}

TEST_CASE("spec validation") {
    SweepSpec spec = k_sweep();
    CHECK_NOTHROW(spec.validate());
    spec.axes[0].count = 1;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = k_sweep();
    spec.axes[0].min = -1.0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = k_sweep();
    spec.axes[0].max = 1e-9;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = k_sweep();
    spec.axes.push_back(spec.axes[0]);
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = k_sweep();
    spec.axes.clear();
    CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("k sweep brackets the critical stiffness") {
    const SweepSpec spec = k_sweep();
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 41);
    const double k_crit = critical_stiffness(1e-10, 1e-6);
    int transitions = 0;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].stable != rows[i + 1].stable) {
            ++transitions;
            CHECK_FALSE(rows[i].stable);
            CHECK(rows[i].params.k < k_crit);
            CHECK(rows[i + 1].params.k > k_crit);
        }
    }
    CHECK(transitions == 1);
    CHECK(k_crit == doctest::Approx(1.587e-6).epsilon(0.01));
    for (const auto& r : rows) {
        if (r.stable) {
            CHECK(*r.x_eq_stable > 0.8 * r.params.x0);
            CHECK(r.omega_hat);
        } else {
            CHECK_FALSE(r.x_eq_stable);
            CHECK_FALSE(r.omega_hat);
            CHECK_FALSE(r.amp_fit);
        }
        CHECK(r.error.empty());
    }
}

TEST_CASE("degenerate sweep over the preset with simulation") {
    SweepSpec spec;
    spec.fixed = preset::paper().physical;
    spec.axes.push_back(AxisSpec{SweepAxis::k, 1.0, 1.0, 2, Spacing::linear});
    spec.simulate = true;
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].stable == rows[1].stable);
    CHECK(rows[0].x_eq_stable == rows[1].x_eq_stable);
    CHECK(rows[0].omega_hat == rows[1].omega_hat);
    CHECK(rows[0].amp_fit == rows[1].amp_fit);
    const std::string csv = sweep_csv(spec, rows);
    const auto first = csv.find('\n') + 1;
    const auto second = csv.find('\n', first) + 1;
    CHECK(csv.substr(first, second - first) == csv.substr(second));
    REQUIRE(rows[0].amp_fit);
    CHECK(std::abs(std::abs(*rows[0].amp_fit) - 1.302e-9) <= 0.005e-9);
}

TEST_CASE("boundary in (k, area) follows k proportional to area") {
    SweepSpec spec;
    spec.fixed = PhysicalParams{1.0, 1e-10, 1e-6, 8.92e-3};
    spec.axes.push_back(AxisSpec{SweepAxis::k, 1e-9, 1e-3, 31, Spacing::log});
    spec.axes.push_back(AxisSpec{SweepAxis::area, 1e-12, 1e-8, 21, Spacing::log});
    const auto boundary = stability_boundary(spec, 2);
    REQUIRE(!boundary.empty());
    const double tol = std::log(cell_ratio(spec.axes[0])) + std::log(cell_ratio(spec.axes[1]));
    for (const auto& b : boundary)
        CHECK(std::abs(std::log(b.first / critical_stiffness(b.second, 1e-6))) <= tol);
    // At least one crossing per area column.
    CHECK(boundary.size() >= 21);
}

TEST_CASE("boundary in (k, x0) follows the inverse fifth power") {
    SweepSpec spec;
    spec.fixed = PhysicalParams{1.0, 1e-10, 1e-6, 8.92e-3};
    spec.axes.push_back(AxisSpec{SweepAxis::k, 1e-10, 1e-2, 41, Spacing::log});
    spec.axes.push_back(AxisSpec{SweepAxis::x0, 3e-7, 3e-6, 11, Spacing::log});
    const auto boundary = stability_boundary(spec, 3);
    REQUIRE(!boundary.empty());
    const double tol = std::log(cell_ratio(spec.axes[0])) + 5.0 * std::log(cell_ratio(spec.axes[1]));
    for (const auto& b : boundary)
        CHECK(std::abs(std::log(b.first / critical_stiffness(1e-10, b.second))) <= tol);
}

TEST_CASE("all-stable grid has no boundary") {
    SweepSpec spec;
    spec.fixed = PhysicalParams{1.0, 1e-10, 1e-6, 8.92e-3};
    spec.axes.push_back(AxisSpec{SweepAxis::k, 0.1, 10.0, 5, Spacing::log});
    spec.axes.push_back(AxisSpec{SweepAxis::area, 1e-12, 1e-10, 5, Spacing::log});
    CHECK(stability_boundary(spec).empty());
    CHECK_THROWS_AS(stability_boundary(k_sweep()), DomainError);
}

TEST_CASE("CSV is deterministic across runs and thread counts") {
    SweepSpec spec;
    spec.fixed = PhysicalParams{1.0, 1e-10, 1e-6, 8.92e-3};
    spec.axes.push_back(AxisSpec{SweepAxis::k, 1e-7, 1e-5, 7, Spacing::log});
    spec.axes.push_back(AxisSpec{SweepAxis::area, 1e-11, 1e-9, 3, Spacing::log});
    spec.axes.push_back(AxisSpec{SweepAxis::x0, 0.5e-6, 2e-6, 3, Spacing::linear});
    spec.simulate = true;
    spec.periods = 3.0;
    const std::string serial = sweep_csv(spec, run_sweep(spec, 1));
    CHECK(serial == sweep_csv(spec, run_sweep(spec, 1)));
    for (unsigned threads : {2u, 4u, 7u, 64u})
        CHECK(serial == sweep_csv(spec, run_sweep(spec, threads)));

    CHECK(serial.substr(0, serial.find('\n')) == "k,area,x0,stable,x_eq_stable,k_crit,omega_hat,amp_fit,error");
    CHECK(serial.find("true") != std::string::npos);
    CHECK(serial.find("false") != std::string::npos);
}

TEST_CASE("row order is first axis outermost") {
    SweepSpec spec;
    spec.fixed = PhysicalParams{1.0, 1e-10, 1e-6, 8.92e-3};
    spec.axes.push_back(AxisSpec{SweepAxis::k, 1.0, 2.0, 2, Spacing::linear});
    spec.axes.push_back(AxisSpec{SweepAxis::area, 1e-12, 3e-12, 3, Spacing::linear});
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].params.k == 1.0);
    CHECK(rows[2].params.k == 1.0);
    CHECK(rows[3].params.k == 2.0);
    CHECK(rows[1].params.area == doctest::Approx(2e-12).epsilon(1e-15));
    CHECK(rows[4].params.area == rows[1].params.area);
}
