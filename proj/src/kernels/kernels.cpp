#include "ascan/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace ascan::kernels {

namespace {

void cmatvec_scalar(std::size_t m, std::size_t d, std::size_t n, const double* a_re,
                    const double* a_im, const double* const* in_re, const double* const* in_im,
                    double* const* out_re, double* const* out_im) {
    for (std::size_t mm = 0; mm < m; ++mm) {
        double* orow = out_re[mm];
        double* oimw = out_im[mm];
        for (std::size_t dd = 0; dd < d; ++dd) {
            const double ar = a_re[mm * d + dd];
            const double ai = a_im[mm * d + dd];
            const double* xr = in_re[dd];
            const double* xi = in_im[dd];
            for (std::size_t s = 0; s < n; ++s) {
                const double tr = ar * xr[s] - ai * xi[s];
                const double ti = ar * xi[s] + ai * xr[s];
                orow[s] += tr;
                oimw[s] += ti;
            }
        }
    }
}

void caxpy_scalar(std::size_t n, double alpha_re, double alpha_im, const double* x_re,
                  const double* x_im, double* y_re, double* y_im) {
    for (std::size_t s = 0; s < n; ++s) {
        const double tr = alpha_re * x_re[s] - alpha_im * x_im[s];
        const double ti = alpha_re * x_im[s] + alpha_im * x_re[s];
        y_re[s] += tr;
        y_im[s] += ti;
    }
}

double peak_abs_scalar(std::size_t n, const double* x) {
    double m = 0.0;
    for (std::size_t s = 0; s < n; ++s) m = std::max(m, std::fabs(x[s]));
    return m;
}

void quantize_midrise_scalar(std::size_t n, double inv_step, double step, double half,
                             double* x) {
    for (std::size_t s = 0; s < n; ++s) {
        double k = std::floor(x[s] * inv_step);
        k = std::min(std::max(k, -half), half - 1.0);
        x[s] = (k + 0.5) * step;
    }
}

constexpr Kernels kScalar = {
    "scalar", cmatvec_scalar, caxpy_scalar, peak_abs_scalar, quantize_midrise_scalar,
};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& active_kernels() {
    static const Kernels& chosen = []() -> const Kernels& {
        const char* env = std::getenv("ASCAN_KERNELS");
        const Kernels* simd = simd_kernels();
        if (env != nullptr) {
            if (std::strcmp(env, "scalar") == 0) return kScalar;
            if (std::strcmp(env, "simd") == 0 && simd) return *simd;
        }
        return simd ? *simd : kScalar;
    }();
    return chosen;
}

#if !defined(ASCAN_HAVE_AVX2_TU)
const Kernels* simd_kernels() { return nullptr; }
#endif

}  // namespace ascan::kernels
