#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference implementation
// and, on x86-64, an AVX2 variant; the public entry points dispatch to the
// variant selected at startup (overridable with CASIMIR_ISA=scalar|avx2).
//
// Elementwise kernels are bit-identical across variants: both evaluate the same
// IEEE operation sequence and the library is built without FP contraction.
// Reductions differ only in summation order.

#include <span>
#include <string_view>

namespace casimir::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// Best variant supported by the running CPU, after the environment override.
Isa detected_isa() noexcept;

Isa active_isa() noexcept;

/// Selects a variant for subsequent calls. Throws DomainError when the CPU lacks it.
/// Not synchronized: call before spawning worker threads.
void set_active_isa(Isa isa);

/// Sums needed for one Gauss-Newton step of m(tau) = amp (cos(omega tau) - 1).
/// Jacobian columns: d m/d amp = cos - 1, d m/d omega = -amp tau sin.
struct NormalEquations {
    double jtj_aa = 0.0;
    double jtj_aw = 0.0;
    double jtj_ww = 0.0;
    double jtr_a = 0.0;
    double jtr_w = 0.0;
    double ssr = 0.0; ///< sum of squared residuals
};

/// out[i] = v^2/2 + u^2/2 - c_hat / (3 (1 + u)^3)
void total_energy(std::span<const double> u, std::span<const double> v, double c_hat,
                  std::span<double> out);

/// out[i] = E(u[i], v[i]) - E(u_ref, v_ref), evaluated in factored form so the
/// large constant Casimir term cancels analytically rather than numerically.
void energy_change(std::span<const double> u, std::span<const double> v, double u_ref,
                   double v_ref, double c_hat, std::span<double> out);

/// Central differences in the interior, one-sided at both ends. Needs u.size() >= 2.
void central_velocity(std::span<const double> u, double dt, std::span<double> v);

/// out[i] = scaled_potential(chi[i], c_hat), no domain checks.
void scaled_potential(std::span<const double> chi, double c_hat, std::span<double> out);

NormalEquations sinusoid_normal_equations(std::span<const double> tau,
                                          std::span<const double> u,
                                          std::span<const double> cos_wt,
                                          std::span<const double> sin_wt, double amp);

double sum(std::span<const double> a);

/// sum (a[i] - b[i])^2
double sum_squared_difference(std::span<const double> a, std::span<const double> b);

/// sum (a[i] - shift)^2
double sum_squared_deviation(std::span<const double> a, double shift);

// Variant entry points, exposed for equivalence testing.
namespace scalar {
void total_energy(std::span<const double>, std::span<const double>, double, std::span<double>);
void energy_change(std::span<const double>, std::span<const double>, double, double, double,
                   std::span<double>);
void central_velocity(std::span<const double>, double, std::span<double>);
void scaled_potential(std::span<const double>, double, std::span<double>);
NormalEquations sinusoid_normal_equations(std::span<const double>, std::span<const double>,
                                          std::span<const double>, std::span<const double>,
                                          double);
double sum(std::span<const double>);
double sum_squared_difference(std::span<const double>, std::span<const double>);
double sum_squared_deviation(std::span<const double>, double);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define CASIMIR_HAVE_AVX2_KERNELS 1
namespace avx2 {
void total_energy(std::span<const double>, std::span<const double>, double, std::span<double>);
void energy_change(std::span<const double>, std::span<const double>, double, double, double,
                   std::span<double>);
void central_velocity(std::span<const double>, double, std::span<double>);
void scaled_potential(std::span<const double>, double, std::span<double>);
NormalEquations sinusoid_normal_equations(std::span<const double>, std::span<const double>,
                                          std::span<const double>, std::span<const double>,
                                          double);
double sum(std::span<const double>);
double sum_squared_difference(std::span<const double>, std::span<const double>);
double sum_squared_deviation(std::span<const double>, double);
} // namespace avx2
#endif

} // namespace casimir::kernels
