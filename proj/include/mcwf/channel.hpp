#pragma once

#include "mcwf/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcwf {

struct WaveformBundle;

struct Path {
    cdouble gain{1.0, 0.0};
    double delay_s = 0.0;
    double doppler_hz = 0.0;
    double scale = 0.0;  // alpha = nu / f_c
};

struct PathSet {
    std::string name;
    std::vector<Path> paths;
    double carrier_hz = 0.0;
    double max_doppler_hz = 0.0;  // nominal nu_max of the profile, 0 if none
    bool normalized = false;

    std::size_t size() const { return paths.size(); }
    double max_delay() const;
    double total_power() const;
};

enum class ChannelModelKind { WidebandDDC, NarrowbandDDC, TDC, FDC };

struct Tap {
    Eigen::Index delay = 0;  // samples
    double doppler_hz = 0.0;
    cdouble gain{1.0, 0.0};
    double scale = 0.0;
};

struct ChannelRealization {
    ChannelModelKind kind = ChannelModelKind::NarrowbandDDC;
    std::vector<Tap> taps;
    double sample_rate_hz = 1.0;
    double subcarrier_spacing_hz = 1.0;
    double noise_variance = 0.0;

    Eigen::Index max_delay() const;
    double normalized_doppler(std::size_t i) const { return taps.at(i).doppler_hz / subcarrier_spacing_hz; }
};

struct SparsityMetrics {
    double support_fraction = 0.0;
    Eigen::Index max_row_support = 0;
};

std::string to_string(ChannelModelKind kind);
ChannelModelKind parse_channel_kind(const std::string& name);

double doppler_from_speed(double speed_kmh, double carrier_hz);
double noise_variance_from_snr(double snr_db);

// EPA, EVA, ETU, FIG16, AWGN. Gains carry the profile amplitudes.
PathSet channel_preset(const std::string& name);
std::vector<std::string> channel_preset_names();

// Profile text: one path per line, "power_dB delay_s doppler_Hz" or
// "power_dB delay_s 123kmh"; '#' starts a comment; commas or blanks separate.
PathSet parse_profile(const std::string& text, double carrier_hz);
PathSet load_profile(const std::string& path, double carrier_hz);

PathSet draw_jakes_dopplers(const PathSet& ps, double max_doppler_hz, std::uint64_t seed);
// i.i.d. CN gains scaled by the profile amplitudes, then normalized to unit power.
PathSet draw_rayleigh_gains(const PathSet& ps, std::uint64_t seed);
PathSet normalize_power(const PathSet& ps);
PathSet apply_model(const PathSet& ps, ChannelModelKind kind);

ChannelRealization discretize(const PathSet& ps, double sample_rate_hz, double subcarrier_spacing_hz,
                              ChannelModelKind kind = ChannelModelKind::NarrowbandDDC);
PathSet implied_path_set(const ChannelRealization& real);

CVector apply_channel(const CVector& s, const ChannelRealization& real, std::uint64_t noise_seed);
CMatrix channel_matrix_full(const ChannelRealization& real, Eigen::Index length);
// Noiseless channel applied to every column of a frame matrix.
CMatrix apply_channel_columns(const CMatrix& frames, const ChannelRealization& real);

CMatrix effective_channel(const WaveformBundle& bundle, const ChannelRealization& real);

SparsityMetrics sparsity_metrics(const CMatrix& h, double threshold);

}  // namespace mcwf
