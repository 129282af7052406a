#include <cstdlib>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(CASIMIR_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa pick_startup_isa() noexcept {
    if (const char* env = std::getenv("CASIMIR_ISA")) {
        const std::string want(env);
        if (want == "scalar")
            return Isa::scalar;
        if (want == "avx2" && cpu_has_avx2())
            return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa& current() noexcept {
    static Isa isa = pick_startup_isa();
    return isa;
}

} // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa detected_isa() noexcept { return pick_startup_isa(); }

Isa active_isa() noexcept { return current(); }

void set_active_isa(Isa isa) {
    if (!isa_supported(isa))
        throw DomainError("instruction set " + std::string(isa_name(isa)) +
                          " is not supported on this CPU");
    current() = isa;
}

#if defined(CASIMIR_HAVE_AVX2_KERNELS)
#define CASIMIR_DISPATCH(fn, ...)                                                              \
    (current() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define CASIMIR_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void total_energy(std::span<const double> u, std::span<const double> v, double c_hat,
                  std::span<double> out) {
    CASIMIR_DISPATCH(total_energy, u, v, c_hat, out);
}

void energy_change(std::span<const double> u, std::span<const double> v, double u_ref,
                   double v_ref, double c_hat, std::span<double> out) {
    CASIMIR_DISPATCH(energy_change, u, v, u_ref, v_ref, c_hat, out);
}

void central_velocity(std::span<const double> u, double dt, std::span<double> v) {
    CASIMIR_DISPATCH(central_velocity, u, dt, v);
}

void scaled_potential(std::span<const double> chi, double c_hat, std::span<double> out) {
    CASIMIR_DISPATCH(scaled_potential, chi, c_hat, out);
}

NormalEquations sinusoid_normal_equations(std::span<const double> tau,
                                          std::span<const double> u,
                                          std::span<const double> cos_wt,
                                          std::span<const double> sin_wt, double amp) {
    return CASIMIR_DISPATCH(sinusoid_normal_equations, tau, u, cos_wt, sin_wt, amp);
}

double sum(std::span<const double> a) { return CASIMIR_DISPATCH(sum, a); }

double sum_squared_difference(std::span<const double> a, std::span<const double> b) {
    return CASIMIR_DISPATCH(sum_squared_difference, a, b);
}

double sum_squared_deviation(std::span<const double> a, double shift) {
    return CASIMIR_DISPATCH(sum_squared_deviation, a, shift);
}

#undef CASIMIR_DISPATCH

} // namespace casimir::kernels
