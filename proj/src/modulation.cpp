#include "ascan/modulation.hpp"

#include <cmath>
#include <stdexcept>

namespace ascan {

namespace {

unsigned gray_encode(unsigned p) { return p ^ (p >> 1); }

unsigned gray_decode(unsigned g) {
    unsigned p = g;
    while (g >>= 1) p ^= g;
    return p;
}

double axis_level(const ModulationScheme& m, unsigned pos) {
    return (2.0 * static_cast<double>(pos) - static_cast<double>(m.side - 1)) * m.scale;
}

unsigned axis_slice(const ModulationScheme& m, double x) {
    const double p = std::round((x / m.scale + static_cast<double>(m.side - 1)) / 2.0);
    const double clamped = std::min(std::max(p, 0.0), static_cast<double>(m.side - 1));
    return static_cast<unsigned>(clamped);
}

}  // namespace

ModulationScheme make_qam(int order) {
    if (order != 4 && order != 16 && order != 64)
        throw std::invalid_argument("make_qam: order must be 4, 16 or 64");
    ModulationScheme m;
    m.order = order;
    m.side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    m.bits_axis = 0;
    for (int s = m.side; s > 1; s >>= 1) ++m.bits_axis;
    m.scale = std::sqrt(3.0 / (2.0 * (order - 1)));
    return m;
}

cxd qam_map(const ModulationScheme& m, unsigned sym) {
    const unsigned i_bits = sym >> m.bits_axis;
    const unsigned q_bits = sym & ((1u << m.bits_axis) - 1u);
    return {axis_level(m, gray_decode(i_bits)), axis_level(m, gray_decode(q_bits))};
}

unsigned qam_demap(const ModulationScheme& m, cxd y) {
    const unsigned i_bits = gray_encode(axis_slice(m, y.real()));
    const unsigned q_bits = gray_encode(axis_slice(m, y.imag()));
    return (i_bits << m.bits_axis) | q_bits;
}

}  // namespace ascan
