#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ascan/kron_canceller.hpp"
#include "ascan/modulation.hpp"
#include "ascan/phase_program.hpp"
#include "ascan/quantizer.hpp"
#include "ascan/steering.hpp"

namespace ascan {

// Operating point of the transceiver chains. SNRs are referenced to unit
// noise variance: total received information power per antenna is
// 10^(it_snr_db/10); each interferer's per-antenna power is set either
// from swipt_snr_db directly or from ratio_db above the information power.
struct LinkConfig {
    std::size_t n_r = 4, n_t = 4, k = 1;
    std::size_t it_streams = 2;
    double it_snr_db = 10.0;
    double swipt_snr_db = 60.0;
    double ratio_db = 50.0;
    bool use_ratio = false;
    AdcModel adc{6, 0.0};
    int mod_order = 4;
    int swipt_mod_order = 4;
    double sqnr_c_db = 0.0;
    double perturb_sigma = 0.0;       // std-dev of the angle-estimate error, radians
    std::size_t block_symbols = 1000; // fading + ADC full-scale block
    std::vector<double> thetas;       // size k; default_thetas(k) when empty
    bool quantization = true;
    double noise_var = 1.0;
    bool genie_residual_zf = false;   // let the detector null estimated leakage directions
    std::size_t threads = 0;          // 0 = hardware concurrency
};

void validate_config(const LinkConfig& cfg);
std::vector<double> default_thetas(std::size_t k);
double it_total_power(const LinkConfig& cfg);
double swipt_power(const LinkConfig& cfg);        // |a_i|^2 per interferer
double effective_ratio_db(const LinkConfig& cfg); // R = swipt/it in dB

struct TrialStats {
    double ser_it = 0.0;
    double ser_swipt = 0.0;
    double throughput = 0.0;  // (1 - ser_it) * log2(M)
    std::uint64_t symbols = 0;
};

// SQNR ~ 6.02 b + c - R (dB) for a weak signal quantized alongside an
// interferer R dB stronger.
double sqnr_estimate_db(int bits, double c_db, double ratio_db);

double effective_throughput(double ser, int mod_order);

// Independent Gaussian shifts on each angle: the estimate the canceller is
// built from, while the channel keeps the true angles.
std::vector<double> perturb_thetas(const std::vector<double>& thetas, double sigma_e,
                                   RngStream& rng);

// Cancellation front-end for a config: the matrix at the true angles plus a
// rebuild hook for re-evaluating at estimated angles (the offline-construct /
// online-evaluate split).
struct AnalogDesign {
    PhaseMatrix base;
    SelectionResult selection;
    std::function<CMat(const std::vector<double>&)> rebuild;
};

AnalogDesign design_canceller(std::size_t n_r, std::size_t k, const std::vector<double>& thetas,
                              SearchMethod method, RngStream& rng, std::size_t threads = 1);

// Quantize-first receiver: ADC on the raw antenna signals, then a numeric
// null-space projection of the interference directions and zero-forcing
// detection. No unit-modulus constraint anywhere; quantization is the only
// thing it cannot undo.
TrialStats run_digital_baseline(const LinkConfig& cfg, std::size_t n_symbols, std::uint64_t seed,
                                std::uint64_t stream_base = 0);

// Cancel-first receiver: the phase network S is applied before the ADCs,
// each surviving branch is quantized on its own scale, then ZF detection
// over S G. Interferers are separately coherent-combined and decoded.
TrialStats run_analog_chain(const LinkConfig& cfg, const AnalogDesign& design,
                            std::size_t n_symbols, std::uint64_t seed,
                            std::uint64_t stream_base = 0);

struct CondStudy {
    std::vector<double> cond;        // per realization
    std::vector<double> iterations;  // search iterations per realization
};

// Draw angle tuples uniformly (near-duplicates rejected), run the full
// construct-and-select pipeline, record condition numbers.
CondStudy condition_number_study(std::size_t n_r, std::size_t k, SearchMethod method,
                                 std::size_t n_realizations, std::uint64_t seed,
                                 std::size_t threads = 0);

// Weak-signal SQNR measured through the actual quantizer: a constant-envelope
// interferer ratio_db above a unit-power weak signal, both quantized
// together on the composite's scale.
double measure_weak_sqnr_db(int bits, double ratio_db, std::size_t n_samples, RngStream& rng);

}  // namespace ascan
