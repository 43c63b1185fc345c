// AVX2 variants of the batch kernels. Built only into x86-64 binaries and
// selected at runtime after a CPUID check. No FMA: mul/add pairs keep the
// results bit-identical to the scalar reference path.

#include "ascan/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace ascan::kernels {

namespace {

void cmatvec_avx2(std::size_t m, std::size_t d, std::size_t n, const double* a_re,
                  const double* a_im, const double* const* in_re, const double* const* in_im,
                  double* const* out_re, double* const* out_im) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t mm = 0; mm < m; ++mm) {
        double* orow = out_re[mm];
        double* oimw = out_im[mm];
        for (std::size_t dd = 0; dd < d; ++dd) {
            const double ar = a_re[mm * d + dd];
            const double ai = a_im[mm * d + dd];
            const __m256d var = _mm256_set1_pd(ar);
            const __m256d vai = _mm256_set1_pd(ai);
            const double* xr = in_re[dd];
            const double* xi = in_im[dd];
            for (std::size_t s = 0; s < n4; s += 4) {
                const __m256d vxr = _mm256_loadu_pd(xr + s);
                const __m256d vxi = _mm256_loadu_pd(xi + s);
                const __m256d tr =
                    _mm256_sub_pd(_mm256_mul_pd(var, vxr), _mm256_mul_pd(vai, vxi));
                const __m256d ti =
                    _mm256_add_pd(_mm256_mul_pd(var, vxi), _mm256_mul_pd(vai, vxr));
                _mm256_storeu_pd(orow + s, _mm256_add_pd(_mm256_loadu_pd(orow + s), tr));
                _mm256_storeu_pd(oimw + s, _mm256_add_pd(_mm256_loadu_pd(oimw + s), ti));
            }
            for (std::size_t s = n4; s < n; ++s) {
                const double tr = ar * xr[s] - ai * xi[s];
                const double ti = ar * xi[s] + ai * xr[s];
                orow[s] += tr;
                oimw[s] += ti;
            }
        }
    }
}

void caxpy_avx2(std::size_t n, double alpha_re, double alpha_im, const double* x_re,
                const double* x_im, double* y_re, double* y_im) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d var = _mm256_set1_pd(alpha_re);
    const __m256d vai = _mm256_set1_pd(alpha_im);
    for (std::size_t s = 0; s < n4; s += 4) {
        const __m256d vxr = _mm256_loadu_pd(x_re + s);
        const __m256d vxi = _mm256_loadu_pd(x_im + s);
        const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(var, vxr), _mm256_mul_pd(vai, vxi));
        const __m256d ti = _mm256_add_pd(_mm256_mul_pd(var, vxi), _mm256_mul_pd(vai, vxr));
        _mm256_storeu_pd(y_re + s, _mm256_add_pd(_mm256_loadu_pd(y_re + s), tr));
        _mm256_storeu_pd(y_im + s, _mm256_add_pd(_mm256_loadu_pd(y_im + s), ti));
    }
    for (std::size_t s = n4; s < n; ++s) {
        const double tr = alpha_re * x_re[s] - alpha_im * x_im[s];
        const double ti = alpha_re * x_im[s] + alpha_im * x_re[s];
        y_re[s] += tr;
        y_im[s] += ti;
    }
}

double peak_abs_avx2(std::size_t n, const double* x) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    for (std::size_t s = 0; s < n4; s += 4)
        vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + s)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmax);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (std::size_t s = n4; s < n; ++s) m = std::max(m, std::fabs(x[s]));
    return m;
}

void quantize_midrise_avx2(std::size_t n, double inv_step, double step, double half,
                           double* x) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d vinv = _mm256_set1_pd(inv_step);
    const __m256d vstep = _mm256_set1_pd(step);
    const __m256d vlo = _mm256_set1_pd(-half);
    const __m256d vhi = _mm256_set1_pd(half - 1.0);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    for (std::size_t s = 0; s < n4; s += 4) {
        __m256d k = _mm256_floor_pd(_mm256_mul_pd(_mm256_loadu_pd(x + s), vinv));
        k = _mm256_min_pd(_mm256_max_pd(k, vlo), vhi);
        _mm256_storeu_pd(x + s, _mm256_mul_pd(_mm256_add_pd(k, vhalf), vstep));
    }
    for (std::size_t s = n4; s < n; ++s) {
        double k = std::floor(x[s] * inv_step);
        k = std::min(std::max(k, -half), half - 1.0);
        x[s] = (k + 0.5) * step;
    }
}

constexpr Kernels kAvx2 = {
    "avx2", cmatvec_avx2, caxpy_avx2, peak_abs_avx2, quantize_midrise_avx2,
};

}  // namespace

const Kernels* simd_kernels() {
    return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

}  // namespace ascan::kernels

#endif  // x86-64
