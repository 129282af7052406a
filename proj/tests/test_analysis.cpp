#include <doctest.h>

#include <cmath>
#include <random>

#include "casimir/analysis.hpp"
#include "casimir/errors.hpp"
#include "casimir/physics_model.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {

constexpr double preset_c_hat = 1.459e-25 / (1.121e14 * 1e-30);

// Physical parameters whose derived c_hat equals `c_hat` at the given area and x0.
PhysicalParams params_for(double c_hat, double area = 1e-10, double x0 = 1e-6) {
    const double k = critical_stiffness(area, x0) * critical_c_hat / c_hat;
    return PhysicalParams{k, area, x0, 8.92e-3};
}

// Relative residual of x^4 (x0 - x) = pi^2 hbar c A / (240 k), written in eps = 1 - chi.
double equilibrium_residual(double eps, double c_hat) {
    const double s = 1.0 - eps;
    return std::abs(s * s * s * s * eps - c_hat) / c_hat;
}

} // namespace

TEST_CASE("preset equilibrium") {
    const Device dev = preset::paper();
    const auto r = solve_equilibrium(dev);
    REQUIRE(r.stable);
    REQUIRE(r.displacement_stable);
    CHECK(std::abs(*r.displacement_stable - 1.302e-9) <= 2e-12);
    CHECK(*r.x_eq_stable > critical_gap_fraction * dev.physical.x0);
    CHECK(equilibrium_residual(*r.displacement_stable, dev.scaled.c_hat) < 1e-12);

    // Independent oracles.
    const double fp = oracle::equilibrium_fixed_point(dev.scaled.c_hat);
    CHECK(*r.displacement_stable == doctest::Approx(fp).epsilon(1e-13));
    CHECK(*r.displacement_stable == doctest::Approx(oracle::equilibrium_series(dev.scaled.c_hat)).epsilon(1e-13));

    REQUIRE(r.x_eq_unstable);
    CHECK(*r.x_eq_unstable < critical_gap_fraction * dev.physical.x0);
    CHECK(r.v2_at_min);
    CHECK(*r.omega_eff == doctest::Approx(1.0 - 2.0 * dev.scaled.c_hat).epsilon(1e-15));
}

TEST_CASE("harmonic limit has the equilibrium at x0") {
    const auto roots = solve_scaled_equilibrium(0.0);
    REQUIRE(roots.displacement_stable);
    CHECK(*roots.displacement_stable == 0.0);
    CHECK_FALSE(roots.chi_unstable);

    PhysicalParams p{1.0, 1e-12, 1e-6, 8.92e-3};
    Device d = make_device(p);
    d.scaled = DimensionlessParams::from_coefficients(d.scaled.b, 0.0, p.x0);
    const auto r = solve_equilibrium(d);
    CHECK(r.stable);
    CHECK(*r.x_eq_stable == p.x0);
    CHECK_FALSE(r.x_eq_unstable);
    const auto h = harmonic_expansion(d);
    CHECK(h.k_eff_hat == 1.0);
    CHECK(h.omega_hat == 1.0);
    const auto t = solve_turning_point(d);
    CHECK(t.x_turn == p.x0);
    CHECK(t.displacement == 0.0);
}

TEST_CASE("below the critical stiffness both roots vanish") {
    PhysicalParams p{critical_stiffness(1e-10, 1e-6) / 2.0, 1e-10, 1e-6, 8.92e-3};
    const auto r = solve_equilibrium(p);
    CHECK_FALSE(r.stable);
    CHECK_FALSE(r.x_eq_stable);
    CHECK_FALSE(r.x_eq_unstable);
    CHECK_FALSE(r.omega_eff);
    CHECK(r.c_hat > critical_c_hat);
    CHECK_THROWS_AS(harmonic_expansion(p), UnstableConfigurationError);
    CHECK_THROWS_AS(solve_turning_point(p), UnstableConfigurationError);
}

TEST_CASE("critical stiffness") {
    CHECK(critical_stiffness(1e-10, 1e-6) == doctest::Approx(1.587e-6).epsilon(0.01));
    CHECK(critical_stiffness(1e-12, 1e-6) == doctest::Approx(1.587e-8).epsilon(0.01));
    CHECK(critical_stiffness(2e-10, 1e-6) == doctest::Approx(2.0 * critical_stiffness(1e-10, 1e-6)).epsilon(1e-15));
    CHECK(critical_stiffness(1e-10, 2e-6) == doctest::Approx(critical_stiffness(1e-10, 1e-6) / 32.0).epsilon(1e-15));
    CHECK_THROWS_AS(critical_stiffness(0.0, 1e-6), DomainError);
}

TEST_CASE("stability criterion") {
    const Device dev = preset::paper();
    const auto r = solve_equilibrium(dev);
    CHECK(stability_criterion(1.0, 1e-12, *r.x_eq_stable));
    const double rhs = constants::pi2_hbar_c * 1e-12 / (60.0 * std::pow(*r.x_eq_stable, 5));
    CHECK(rhs == doctest::Approx(5.2e-9).epsilon(0.01));
    CHECK(1.0 / rhs > 1e8);

    // Strict inequality at the boundary.
    CHECK_FALSE(stability_criterion(critical_stiffness(1e-10, 1e-6), 1e-10, 0.8 * 1e-6));
    CHECK_THROWS_AS(stability_criterion(0.0, 1e-10, 1e-6), DomainError);
    CHECK_THROWS_AS(stability_criterion(1.0, 1e-10, -1e-6), DomainError);
}

TEST_CASE("four stability criteria agree") {
    std::mt19937_64 rng(12345);
    int stable_count = 0;
    const int draws = 2000;
    for (int i = 0; i < draws; ++i) {
        const double area = oracle::log_uniform(rng, 1e-12, 1e-8);
        const double x0 = oracle::log_uniform(rng, 1e-7, 1e-5);
        const double k = critical_stiffness(area, x0) * oracle::log_uniform(rng, 0.1, 10.0);
        const PhysicalParams p{k, area, x0, oracle::log_uniform(rng, 1e-4, 1e-1)};
        const auto r = solve_equilibrium(p);

        const bool has_root = r.x_eq_stable.has_value();
        const bool above = has_root && *r.x_eq_stable > 0.8 * x0;
        const bool criterion = has_root ? stability_criterion(k, area, *r.x_eq_stable)
                                        : stability_criterion(k, area, 0.8 * x0);
        const bool stiff = k > critical_stiffness(area, x0);
        const bool curvature = r.v2_at_min.has_value() && *r.v2_at_min > 0.0;
        CHECK(has_root == above);
        CHECK(above == criterion);
        CHECK(criterion == stiff);
        CHECK(stiff == curvature);
        CHECK(r.stable == has_root);
        if (r.x_eq_unstable) {
            CHECK(!stability_criterion(k, area, *r.x_eq_unstable));
            CHECK(*r.x_eq_unstable < 0.8 * x0);
            CHECK(0.8 * x0 < *r.x_eq_stable);
            CHECK(*r.x_eq_stable <= x0);
        }
        if (has_root)
            ++stable_count;
    }
    // Both outcomes are well represented.
    CHECK(stable_count > draws / 4);
    CHECK(stable_count < 3 * draws / 4);
}

TEST_CASE("equilibrium residual and oracle over many c_hat") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        const double c = oracle::log_uniform(rng, 1e-15, 0.08);
        const auto roots = solve_scaled_equilibrium(c);
        REQUIRE(roots.displacement_stable);
        REQUIRE(roots.chi_unstable);
        CHECK(equilibrium_residual(*roots.displacement_stable, c) < 1e-12);
        const double chi = *roots.chi_unstable;
        CHECK(std::abs(chi * chi * chi * chi * (1.0 - chi) - c) / c < 1e-12);
        if (c < 0.05)
            CHECK(*roots.displacement_stable ==
                  doctest::Approx(oracle::equilibrium_fixed_point(c)).epsilon(1e-12));
    }
}

TEST_CASE("dense scan of the potential finds the same minimum") {
    for (double c : {0.001, 0.01, 0.03}) {
        const PhysicalParams p = params_for(c);
        const auto r = solve_equilibrium(p);
        REQUIRE(r.x_eq_stable);
        const std::size_t n = 1000000;
        const double lo = 0.5 * p.x0;
        const double argmin =
            oracle::dense_scan_argmin([&p](double x) { return total_potential(x, p); }, lo, p.x0, n);
        const double cell = (p.x0 - lo) / static_cast<double>(n - 1);
        CHECK(std::abs(argmin - *r.x_eq_stable) <= cell);
    }
}

TEST_CASE("turning point") {
    const Device dev = preset::paper();
    const auto t = solve_turning_point(dev);
    CHECK(std::abs(t.displacement - 2.604e-9) <= 2e-11);
    CHECK(t.x_turn < dev.physical.x0);
    CHECK(t.x_turn > 0.0);
    CHECK(t.margin == doctest::Approx(dev.physical.x0 * t.displacement).epsilon(1e-15));

    const double c = dev.scaled.c_hat;
    CHECK(t.displacement == doctest::Approx(oracle::turning_energy_root(c)).epsilon(1e-13));
    CHECK(t.displacement == doctest::Approx(oracle::turning_series(c)).epsilon(1e-13));

    // x_turn ~ 2 x_eq - x0: the turning displacement is twice the equilibrium one.
    const auto r = solve_equilibrium(dev);
    CHECK(t.displacement == doctest::Approx(2.0 * *r.displacement_stable).epsilon(1e-8));
}

TEST_CASE("turning point satisfies the energy bound as an equality") {
    std::mt19937_64 rng(5);
    int collapsed = 0;
    std::uniform_real_distribution<double> near_critical(0.01, critical_c_hat);
    for (int i = 0; i < 300; ++i) {
        const double c = i % 2 ? oracle::log_uniform(rng, 1e-14, 0.08) : near_critical(rng);
        double eps = 0.0;
        try {
            eps = solve_scaled_turning_point(c);
        } catch (const CollapseError&) {
            CHECK(oracle::turning_energy_root(c) < 0.0);
            ++collapsed;
            continue;
        }
        CHECK(eps > 0.0);
        CHECK(eps < 1.0);
        CHECK(eps == doctest::Approx(oracle::turning_energy_root(c)).epsilon(1e-13));
        // Beyond the equilibrium, inside the barrier.
        const auto roots = solve_scaled_equilibrium(c);
        CHECK(eps > *roots.displacement_stable);
        CHECK(1.0 - eps > *roots.chi_unstable);
    }
    MESSAGE(collapsed << " of 300 draws collapse past the barrier");
    CHECK(collapsed > 0);
}

TEST_CASE("large c_hat above the barrier collapses") {
    CHECK_THROWS_AS(solve_scaled_turning_point(0.08), CollapseError);
    CHECK_NOTHROW(solve_scaled_turning_point(0.01));
    CHECK_THROWS_AS(solve_scaled_turning_point(-1.0), DomainError);
}

TEST_CASE("harmonic expansion") {
    const Device dev = preset::paper();
    const auto h = harmonic_expansion(dev);
    CHECK(h.omega_hat < 1.0);
    CHECK(1.0 - h.omega_hat == doctest::Approx(2.6e-9).epsilon(0.01));
    CHECK(std::round(h.omega_hat * 1000.0) / 1000.0 == 1.0);
    const double unit = dev.physical.k / dev.physical.area * dev.physical.x0 * dev.physical.x0;
    const double chi = *solve_equilibrium(dev).x_eq_stable / dev.physical.x0;
    CHECK(h.v_min == doctest::Approx(unit * scaled_potential(chi, dev.scaled.c_hat)).epsilon(1e-12));

    // Softening toward pull-in.
    double previous = 2.0;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8}) {
        const PhysicalParams p = params_for(critical_c_hat * (1.0 - gap));
        const double k_eff = harmonic_expansion(p).k_eff_hat;
        CHECK(k_eff > 0.0);
        CHECK(k_eff < previous);
        previous = k_eff;
    }
    CHECK(previous < 1e-3);
}
