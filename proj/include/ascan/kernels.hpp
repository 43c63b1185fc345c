#pragma once

#include <cstddef>
#include <vector>

namespace ascan::kernels {

// Data-parallel inner loops of the link simulator, batched over symbols in
// split re/im planes. Every function has a scalar reference implementation
// and may have SIMD variants; all variants are written without FMA or
// reassociation so they produce bit-identical results, which the
// equivalence tests assert.
struct Kernels {
    const char* name;

    // out[mm] += A[mm][dd] * in[dd] over the batch, complex, A row-major m x d.
    // out planes must be zeroed by the caller and must not alias the inputs.
    void (*cmatvec)(std::size_t m, std::size_t d, std::size_t n, const double* a_re,
                    const double* a_im, const double* const* in_re, const double* const* in_im,
                    double* const* out_re, double* const* out_im);

    // y += alpha * x over the batch, complex scalar alpha.
    void (*caxpy)(std::size_t n, double alpha_re, double alpha_im, const double* x_re,
                  const double* x_im, double* y_re, double* y_im);

    // max_i |x[i]|
    double (*peak_abs)(std::size_t n, const double* x);

    // Mid-rise ladder in place: x -> (clamp(floor(x * inv_step), -half, half-1) + 0.5) * step
    void (*quantize_midrise)(std::size_t n, double inv_step, double step, double half, double* x);
};

const Kernels& scalar_kernels();

// SIMD variant for the host ISA, or nullptr when unsupported.
const Kernels* simd_kernels();

// Runtime selection: SIMD when the CPU has it, scalar otherwise. The
// ASCAN_KERNELS environment variable (scalar | simd) overrides.
const Kernels& active_kernels();

// Split-plane batch: dim complex components, count samples each.
class CBatch {
public:
    CBatch(std::size_t dim, std::size_t count)
        : dim_(dim), count_(count), buf_(2 * dim * count, 0.0) {
        re_.resize(dim);
        im_.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            re_[d] = buf_.data() + 2 * d * count;
            im_[d] = buf_.data() + (2 * d + 1) * count;
        }
    }

    std::size_t dim() const { return dim_; }
    std::size_t count() const { return count_; }

    double* re(std::size_t d) { return re_[d]; }
    double* im(std::size_t d) { return im_[d]; }
    const double* re(std::size_t d) const { return re_[d]; }
    const double* im(std::size_t d) const { return im_[d]; }

    const double* const* re_planes() const { return re_.data(); }
    const double* const* im_planes() const { return im_.data(); }
    double* const* re_planes() { return re_.data(); }
    double* const* im_planes() { return im_.data(); }

    void zero() { std::fill(buf_.begin(), buf_.end(), 0.0); }

private:
    std::size_t dim_, count_;
    std::vector<double> buf_;
    std::vector<double*> re_, im_;
};

}  // namespace ascan::kernels
