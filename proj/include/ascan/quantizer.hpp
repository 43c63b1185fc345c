#pragma once

#include "ascan/cvec.hpp"

namespace ascan {

// Uniform mid-rise ADC, applied independently to real and imaginary parts
// with 2^bits levels each. fullscale 0 selects the peak-of-composite rule:
// the converter is scaled so the largest component in the input spans the
// range, which is how a strong in-band signal starves a weak one of levels.
struct AdcModel {
    int bits = 6;
    double fixed_fullscale = 0.0;  // 0 -> peak of the quantized composite
};

// Step size for a given full scale: levels span [-fullscale, fullscale].
double quantizer_step(const AdcModel& adc, double fullscale);

// One component through the mid-rise ladder.
double quantize_component(double x, double step, double half_levels);

// Spec'd single-shot form: full scale from this vector's own peak (or the
// fixed value). In-range error magnitude is at most step/2 per component.
CVec quantize(const CVec& v, const AdcModel& adc);

// Peak |Re| / |Im| over a vector, the composite full-scale measurement.
double peak_component(const CVec& v);

}  // namespace ascan
