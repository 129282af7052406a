#include <cstddef>

#include "casimir/kernels.hpp"

namespace casimir::kernels::scalar {

void total_energy(std::span<const double> u, std::span<const double> v, double c_hat,
                  std::span<double> out) {
    const double third_c = c_hat / 3.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double s = 1.0 + u[i];
        const double s3 = s * s * s;
        out[i] = (0.5 * (v[i] * v[i]) + 0.5 * (u[i] * u[i])) - third_c / s3;
    }
}

void energy_change(std::span<const double> u, std::span<const double> v, double u_ref,
                   double v_ref, double c_hat, std::span<double> out) {
    const double third_c = c_hat / 3.0;
    const double b = 1.0 + u_ref;
    const double b3 = b * b * b;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double du = u[i] - u_ref;
        const double a = 1.0 + u[i];
        const double a3 = a * a * a;
        // (1+u_ref)^-3 - (1+u)^-3 = (u - u_ref)(a^2 + ab + b^2) / (a^3 b^3)
        const double cas = third_c * ((du * ((a * a + a * b) + b * b)) / (a3 * b3));
        const double kin = 0.5 * ((v[i] - v_ref) * (v[i] + v_ref));
        const double spring = 0.5 * (du * (u[i] + u_ref));
        out[i] = (kin + spring) + cas;
    }
}

void central_velocity(std::span<const double> u, double dt, std::span<double> v) {
    const std::size_t n = u.size();
    const double inv_2dt = 0.5 / dt;
    for (std::size_t i = 1; i + 1 < n; ++i)
        v[i] = (u[i + 1] - u[i - 1]) * inv_2dt;
    v[0] = (u[1] - u[0]) / dt;
    v[n - 1] = (u[n - 1] - u[n - 2]) / dt;
}

void scaled_potential(std::span<const double> chi, double c_hat, std::span<double> out) {
    const double third_c = c_hat / 3.0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        const double d = chi[i] - 1.0;
        const double c3 = chi[i] * chi[i] * chi[i];
        out[i] = 0.5 * (d * d) - third_c / c3;
    }
}

NormalEquations sinusoid_normal_equations(std::span<const double> tau,
                                          std::span<const double> u,
                                          std::span<const double> cos_wt,
                                          std::span<const double> sin_wt, double amp) {
    NormalEquations ne;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        const double ja = cos_wt[i] - 1.0;
        const double jw = -amp * tau[i] * sin_wt[i];
        const double r = u[i] - amp * ja;
        ne.jtj_aa += ja * ja;
        ne.jtj_aw += ja * jw;
        ne.jtj_ww += jw * jw;
        ne.jtr_a += ja * r;
        ne.jtr_w += jw * r;
        ne.ssr += r * r;
    }
    return ne;
}

double sum(std::span<const double> a) {
    double s = 0.0;
    for (double x : a)
        s += x;
    return s;
}

double sum_squared_difference(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double sum_squared_deviation(std::span<const double> a, double shift) {
    double s = 0.0;
    for (double x : a) {
        const double d = x - shift;
        s += d * d;
    }
    return s;
}

} // namespace casimir::kernels::scalar
