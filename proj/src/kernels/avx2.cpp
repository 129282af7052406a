// Compiled with -mavx2 (and without -mfma) so the elementwise paths round
// exactly like the scalar reference.

#include "casimir/kernels.hpp"

#if defined(CASIMIR_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <cstddef>

namespace casimir::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

inline double horizontal_sum(__m256d x) {
    const __m128d lo = _mm256_castpd256_pd128(x);
    const __m128d hi = _mm256_extractf128_pd(x, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    const __m128d swapped = _mm_unpackhi_pd(pair, pair);
    return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

} // namespace

void total_energy(std::span<const double> u, std::span<const double> v, double c_hat,
                  std::span<double> out) {
    const std::size_t n = u.size();
    const double third_c = c_hat / 3.0;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d tc = _mm256_set1_pd(third_c);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d uu = _mm256_loadu_pd(u.data() + i);
        const __m256d vv = _mm256_loadu_pd(v.data() + i);
        const __m256d s = _mm256_add_pd(one, uu);
        const __m256d s3 = _mm256_mul_pd(_mm256_mul_pd(s, s), s);
        const __m256d kin = _mm256_mul_pd(half, _mm256_mul_pd(vv, vv));
        const __m256d spr = _mm256_mul_pd(half, _mm256_mul_pd(uu, uu));
        const __m256d cas = _mm256_div_pd(tc, s3);
        _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(_mm256_add_pd(kin, spr), cas));
    }
    if (i < n)
        scalar::total_energy(u.subspan(i), v.subspan(i), c_hat, out.subspan(i));
}

void energy_change(std::span<const double> u, std::span<const double> v, double u_ref,
                   double v_ref, double c_hat, std::span<double> out) {
    const std::size_t n = u.size();
    const double third_c = c_hat / 3.0;
    const double b = 1.0 + u_ref;
    const double b3 = b * b * b;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d tc = _mm256_set1_pd(third_c);
    const __m256d bb = _mm256_set1_pd(b);
    const __m256d b2 = _mm256_set1_pd(b * b);
    const __m256d bb3 = _mm256_set1_pd(b3);
    const __m256d ur = _mm256_set1_pd(u_ref);
    const __m256d vr = _mm256_set1_pd(v_ref);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d uu = _mm256_loadu_pd(u.data() + i);
        const __m256d vv = _mm256_loadu_pd(v.data() + i);
        const __m256d du = _mm256_sub_pd(uu, ur);
        const __m256d a = _mm256_add_pd(one, uu);
        const __m256d a3 = _mm256_mul_pd(_mm256_mul_pd(a, a), a);
        const __m256d poly =
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(a, bb)), b2);
        const __m256d cas =
            _mm256_mul_pd(tc, _mm256_div_pd(_mm256_mul_pd(du, poly), _mm256_mul_pd(a3, bb3)));
        const __m256d kin =
            _mm256_mul_pd(half, _mm256_mul_pd(_mm256_sub_pd(vv, vr), _mm256_add_pd(vv, vr)));
        const __m256d spr = _mm256_mul_pd(half, _mm256_mul_pd(du, _mm256_add_pd(uu, ur)));
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(_mm256_add_pd(kin, spr), cas));
    }
    if (i < n)
        scalar::energy_change(u.subspan(i), v.subspan(i), u_ref, v_ref, c_hat, out.subspan(i));
}

void central_velocity(std::span<const double> u, double dt, std::span<double> v) {
    const std::size_t n = u.size();
    const double inv_2dt = 0.5 / dt;
    const __m256d scale = _mm256_set1_pd(inv_2dt);
    std::size_t i = 1;
    for (; i + kLanes + 1 <= n; i += kLanes) {
        const __m256d ahead = _mm256_loadu_pd(u.data() + i + 1);
        const __m256d behind = _mm256_loadu_pd(u.data() + i - 1);
        _mm256_storeu_pd(v.data() + i, _mm256_mul_pd(_mm256_sub_pd(ahead, behind), scale));
    }
    for (; i + 1 < n; ++i)
        v[i] = (u[i + 1] - u[i - 1]) * inv_2dt;
    v[0] = (u[1] - u[0]) / dt;
    v[n - 1] = (u[n - 1] - u[n - 2]) / dt;
}

void scaled_potential(std::span<const double> chi, double c_hat, std::span<double> out) {
    const std::size_t n = chi.size();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d tc = _mm256_set1_pd(c_hat / 3.0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d x = _mm256_loadu_pd(chi.data() + i);
        const __m256d d = _mm256_sub_pd(x, one);
        const __m256d x3 = _mm256_mul_pd(_mm256_mul_pd(x, x), x);
        const __m256d val =
            _mm256_sub_pd(_mm256_mul_pd(half, _mm256_mul_pd(d, d)), _mm256_div_pd(tc, x3));
        _mm256_storeu_pd(out.data() + i, val);
    }
    if (i < n)
        scalar::scaled_potential(chi.subspan(i), c_hat, out.subspan(i));
}

NormalEquations sinusoid_normal_equations(std::span<const double> tau,
                                          std::span<const double> u,
                                          std::span<const double> cos_wt,
                                          std::span<const double> sin_wt, double amp) {
    const std::size_t n = tau.size();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d neg_amp = _mm256_set1_pd(-amp);
    const __m256d am = _mm256_set1_pd(amp);
    __m256d aa = _mm256_setzero_pd();
    __m256d aw = _mm256_setzero_pd();
    __m256d ww = _mm256_setzero_pd();
    __m256d ra = _mm256_setzero_pd();
    __m256d rw = _mm256_setzero_pd();
    __m256d rr = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d t = _mm256_loadu_pd(tau.data() + i);
        const __m256d c = _mm256_loadu_pd(cos_wt.data() + i);
        const __m256d s = _mm256_loadu_pd(sin_wt.data() + i);
        const __m256d y = _mm256_loadu_pd(u.data() + i);
        const __m256d ja = _mm256_sub_pd(c, one);
        const __m256d jw = _mm256_mul_pd(_mm256_mul_pd(neg_amp, t), s);
        const __m256d r = _mm256_sub_pd(y, _mm256_mul_pd(am, ja));
        aa = _mm256_add_pd(aa, _mm256_mul_pd(ja, ja));
        aw = _mm256_add_pd(aw, _mm256_mul_pd(ja, jw));
        ww = _mm256_add_pd(ww, _mm256_mul_pd(jw, jw));
        ra = _mm256_add_pd(ra, _mm256_mul_pd(ja, r));
        rw = _mm256_add_pd(rw, _mm256_mul_pd(jw, r));
        rr = _mm256_add_pd(rr, _mm256_mul_pd(r, r));
    }
    NormalEquations ne;
    if (i < n)
        ne = scalar::sinusoid_normal_equations(tau.subspan(i), u.subspan(i), cos_wt.subspan(i),
                                               sin_wt.subspan(i), amp);
    ne.jtj_aa += horizontal_sum(aa);
    ne.jtj_aw += horizontal_sum(aw);
    ne.jtj_ww += horizontal_sum(ww);
    ne.jtr_a += horizontal_sum(ra);
    ne.jtr_w += horizontal_sum(rw);
    ne.ssr += horizontal_sum(rr);
    return ne;
}

double sum(std::span<const double> a) {
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(a.data() + i));
    return horizontal_sum(acc) + scalar::sum(a.subspan(i));
}

double sum_squared_difference(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    return horizontal_sum(acc) + scalar::sum_squared_difference(a.subspan(i), b.subspan(i));
}

double sum_squared_deviation(std::span<const double> a, double shift) {
    const std::size_t n = a.size();
    const __m256d m = _mm256_set1_pd(shift);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), m);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    return horizontal_sum(acc) + scalar::sum_squared_deviation(a.subspan(i), shift);
}

} // namespace casimir::kernels::avx2

#endif
