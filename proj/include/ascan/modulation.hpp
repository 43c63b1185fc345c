#pragma once

#include "ascan/cvec.hpp"

namespace ascan {

// Square QAM with Gray-mapped axes and unit average symbol energy.
struct ModulationScheme {
    int order = 4;     // M in {4, 16, 64}
    int side = 2;      // sqrt(M)
    int bits_axis = 1; // log2(side)
    double scale = 0.0;
};

ModulationScheme make_qam(int order);

// Symbol index in [0, M) -> constellation point.
cxd qam_map(const ModulationScheme& m, unsigned sym);

// Nearest constellation point (per-axis slicing), Gray-decoded back to the
// symbol index. Inverse of qam_map on exact points.
unsigned qam_demap(const ModulationScheme& m, cxd y);

}  // namespace ascan
