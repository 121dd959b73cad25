#pragma once

#include "mcwf/transforms.hpp"
#include "mcwf/types.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mcwf {

enum class Scheme { SCM, OFDM, DFTsOFDM, FrFTOFDM, OCDM, IFDM, AFDM, FBMC, MCOTFS, ZAKOTFS, ODDM, OTSM };

std::string scheme_name(Scheme s);
// Case-insensitive; accepts "OTFS" for MC-OTFS and "ZAK" for ZAK-OTFS.
Scheme parse_scheme(const std::string& name);
std::vector<Scheme> all_schemes();
bool is_two_dimensional(Scheme s);

struct FrameGeometry {
    Index M = 1;                          // subcarriers / delay bins
    Index N = 1;                          // slots / Doppler bins
    double subcarrier_spacing_hz = 1.0;   // 1D: spacing of the M tones; 2D: 1/T with T = M samples
    Index prefix_len = 0;                 // L_p

    Index symbols() const { return M * N; }
    double sample_rate_hz() const { return double(M) * subcarrier_spacing_hz; }
    double sample_interval_s() const { return 1.0 / sample_rate_hz(); }
};

enum class PrefixKind { None, CP, CPP };

struct PrefixRule {
    PrefixKind kind = PrefixKind::CP;
    double c1 = 0.0;  // CPP chirp parameter
};

enum class OddmPulse { DDOP, Rect };

struct WaveformParams {
    // AFDM: NaN selects c1 = (2 alpha_max + 1)/(2M) from afdm_max_doppler.
    double afdm_c1 = std::numeric_limits<double>::quiet_NaN();
    double afdm_c2 = 0.0;
    double afdm_max_doppler = 0.0;  // normalized to the subcarrier spacing
    double frft_order = 0.5;
    std::uint64_t ifdm_seed = 1;
    Index dfts_width = 0;   // IDFT size W >= M, 0 means W = M
    Index dfts_offset = 0;  // frequency shift of the localized block around DC
    OddmPulse oddm_pulse = OddmPulse::DDOP;
    int oddm_q = 4;
    double oddm_rolloff = 0.1;
    int oddm_oversampling = 4;
    int fbmc_overlap = 6;
    WhtOrder otsm_order = WhtOrder::Sequency;
};

double afdm_default_c1(Index m, double max_normalized_doppler);

struct WaveformBundle {
    Scheme scheme = Scheme::OFDM;
    FrameGeometry geometry;
    CMatrix tx;  // symbols -> core samples
    CMatrix rx;  // core samples -> modulation-domain symbols
    PrefixRule prefix;
    double sample_rate_hz = 1.0;
    std::string domain;
    bool unitary = true;
    bool real_field = false;  // FBMC/OQAM: only Re{rx tx} = I holds
    double c1 = 0.0, c2 = 0.0;  // AFDM chirp parameters, recorded for manifests

    Index symbols() const { return tx.cols(); }
    Index core_length() const { return tx.rows(); }
    Index prefix_length() const { return prefix.kind == PrefixKind::None ? 0 : geometry.prefix_len; }
    Index frame_length() const { return core_length() + prefix_length(); }

    CVector modulate(const CVector& x) const;
    CVector demodulate(const CVector& core) const;
    CVector transmit(const CVector& x) const;     // modulate + prefix
    CVector receive(const CVector& frame) const;  // strip prefix + demodulate
};

WaveformBundle build_waveform(Scheme scheme, const FrameGeometry& geometry, const WaveformParams& params = {});

CVector add_prefix(const CVector& core, const PrefixRule& rule, Index lp);
CVector remove_prefix(const CVector& frame, Index lp);
// Column-wise versions used to assemble effective channels.
CMatrix add_prefix_rows(const CMatrix& core, const PrefixRule& rule, Index lp);

struct FbmcSynthesis {
    CMatrix G;
    Index sample_count = 0;
    double dt = 0.0;  // in units of T0
};

// Hermite prototype, time in units of T0.
double fbmc_prototype(double t);
FbmcSynthesis fbmc_synthesis(const FrameGeometry& geometry, int overlap_factor = 6);

struct SampledPulse {
    std::vector<double> samples;
    double dt = 0.0;  // in units of T
    double t0 = 0.0;  // time of samples[0], units of T
};

double root_raised_cosine(double t, double symbol_period, double rolloff);
// DDOP g(t) = sum_k a(t - kT), unit energy; oversampling samples per T/M.
SampledPulse ddop_pulse(Index m, Index n, int q, double rolloff, int oversampling = 4);

}  // namespace mcwf
