#pragma once

#include "mcwf/channel.hpp"
#include "mcwf/ddam.hpp"
#include "mcwf/detection.hpp"
#include "mcwf/waveforms.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mcwf {

// ---- BER ------------------------------------------------------------------

enum class Detector { SingleTap, MMSE };
enum class DopplerModel { Jakes, Profile };
// RayleighUniform keeps the profile delays but gives every path equal average power.
enum class GainModel { Rayleigh, RayleighUniform, Profile };

std::string to_string(Detector d);
Detector parse_detector(const std::string& name);

struct ChannelConfig {
    PathSet profile = channel_preset("AWGN");
    ChannelModelKind kind = ChannelModelKind::NarrowbandDDC;
    DopplerModel doppler = DopplerModel::Jakes;
    GainModel gains = GainModel::Rayleigh;
    double max_doppler_hz = 0.0;
};

// Continuous realization for one trial; identical for every waveform given the seed.
PathSet draw_path_set(const ChannelConfig& cfg, std::uint64_t trial_seed);

struct BerSetup {
    ChannelConfig channel;
    Detector detector = Detector::MMSE;
    std::vector<double> snr_db;
    int trials = 1;
    std::uint64_t seed = 1;
    int threads = 1;
    int modulation_order = 4;
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;
};

struct BerResult {
    std::vector<BerPoint> points;
    std::string stream_digest;  // SHA-256 over the per-trial bits and path sets
};

BerResult run_ber(const WaveformBundle& bundle, const BerSetup& setup);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// ---- PAPR -----------------------------------------------------------------

struct CcdfPoint {
    double papr_db = 0.0;
    double ccdf = 0.0;
};

double papr_db(const CVector& s);
std::vector<double> papr_samples(const WaveformBundle& bundle, int trials, std::uint64_t seed, int order,
                                 int threads = 1);

struct DdamPaprSetup {
    Eigen::Index antennas = 64;
    std::size_t paths = 5;
    Eigen::Index symbols = 512;
    Eigen::Index max_delay = 40;  // samples
    Beamformer beamformer = Beamformer::ZF;
    int order = 128;
};

// Per-antenna PAPR values pooled over all frames.
std::vector<double> papr_samples_ddam(const DdamPaprSetup& setup, int trials, std::uint64_t seed, int threads = 1);

// Empirical survivor function P(PAPR > v) at each sorted value, truncated at 10/n.
std::vector<CcdfPoint> empirical_ccdf(std::vector<double> values);
// Smallest PAPR whose exceedance probability is <= level.
double papr_at_ccdf(std::vector<double> values, double level);

// ---- ambiguity function ----------------------------------------------------

enum class AfConvention { Aperiodic, Cyclic };
std::string to_string(AfConvention c);
AfConvention parse_af_convention(const std::string& name);

// sum_n a[n] b*[n - lag] e^{-j2pi nu n}, nu in cycles per sample.
cdouble ambiguity(const CVector& a, const CVector& b, Eigen::Index lag, double nu, AfConvention conv);

struct AfGrid {
    std::vector<double> delay_s, delay_norm;     // lag / f_s and lag / L
    std::vector<double> doppler_hz, doppler_norm;  // nu f_s and nu (cycles per sample)
    RMatrix magnitude;                            // rows: delay, cols: Doppler; peak 1
    AfConvention convention = AfConvention::Aperiodic;
    double peak_raw = 0.0;
};

AfGrid ambiguity_grid(const CVector& a, const CVector& b, const std::vector<Eigen::Index>& lags,
                      const std::vector<double>& nus, AfConvention conv, double sample_rate_hz);

struct CutMetrics {
    double width_3db = 0.0;  // in axis units (index spacing times `spacing`)
    double pslr_db = 0.0;
    double islr_db = 0.0;
    bool no_null = false;
    Eigen::Index mainlobe_lo = 0, mainlobe_hi = 0;
};

inline constexpr const char* kMainlobeRule = "first-local-minima";
inline constexpr double kDbFloor = -400.0;

CutMetrics af_cut_metrics(const RVector& cut, double spacing);

struct AfMetrics {
    double delay_width = 0.0;    // fraction of the frame duration
    double doppler_width = 0.0;  // fraction of the sample rate
    double pslr_delay = 0.0, islr_delay = 0.0;
    double pslr_doppler = 0.0, islr_doppler = 0.0;
    bool delay_no_null = false, doppler_no_null = false;
    std::string boundary_rule = kMainlobeRule;
    AfConvention convention = AfConvention::Aperiodic;
};

AfMetrics af_metrics(const CVector& s, AfConvention conv, int doppler_oversampling = 8);

// ---- overhead ---------------------------------------------------------------

double cp_overhead(double t_cp, double t_sym);
double spectral_efficiency(double pilot_fraction, int order, double symbols, double t_sym, double t_cp,
                           double bandwidth);

enum class PilotScheme { AFDM, OTFS };

struct PilotOverhead {
    long long count = 0;
    double fraction = 0.0;
};

PilotOverhead pilot_overhead(PilotScheme scheme, long long l_max, long long alpha_max, long long xi, long long size);

}  // namespace mcwf
