#include "ascan/quantizer.hpp"

#include <cmath>
#include <stdexcept>

namespace ascan {

double quantizer_step(const AdcModel& adc, double fullscale) {
    if (adc.bits < 1 || adc.bits > 30) throw std::invalid_argument("adc: bits must be in 1..30");
    if (!(fullscale > 0.0)) return 0.0;  // degenerate all-zero input; quantize passes through
    return fullscale / static_cast<double>(1u << (adc.bits - 1));
}

double quantize_component(double x, double step, double half_levels) {
    // Same operation sequence as the SIMD kernel: scale, floor, clamp.
    double k = std::floor(x * (1.0 / step));
    k = std::min(std::max(k, -half_levels), half_levels - 1.0);
    return (k + 0.5) * step;
}

CVec quantize(const CVec& v, const AdcModel& adc) {
    if (!finite(v)) throw std::invalid_argument("quantize: non-finite input");
    const double fullscale =
        adc.fixed_fullscale > 0.0 ? adc.fixed_fullscale : peak_component(v);
    const double step = quantizer_step(adc, fullscale);
    if (step == 0.0) return v;
    const double half = static_cast<double>(1u << (adc.bits - 1));
    CVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = {quantize_component(v[i].real(), step, half),
                  quantize_component(v[i].imag(), step, half)};
    return out;
}

double peak_component(const CVec& v) {
    double m = 0.0;
    for (const cxd& z : v) m = std::max(m, std::max(std::abs(z.real()), std::abs(z.imag())));
    return m;
}

}  // namespace ascan
