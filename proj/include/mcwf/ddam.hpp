#pragma once

#include "mcwf/channel.hpp"
#include "mcwf/types.hpp"

#include <cstdint>
#include <vector>

namespace mcwf {

enum class Beamformer { MRT, ZF };

struct DdamConfig {
    Eigen::Index antennas = 1;      // M_t
    Eigen::Index streams = 1;       // N_s, only 1 supported
    Beamformer beamformer = Beamformer::ZF;
    std::vector<CVector> steering;  // h_i, one per channel tap
};

// h_i with i.i.d. CN(0, 1/M_t) entries.
std::vector<CVector> random_steering(Eigen::Index antennas, std::size_t paths, std::uint64_t seed);

// F_i, each with ||F_i||^2 = 1/P; also pre-rotates by e^{-j2pi nu_i l_i Ts}
// so the compensated paths add coherently at the receiver.
std::vector<CVector> ddam_beamformers(const DdamConfig& cfg, const ChannelRealization& real);

// M_t x (K + kappa_max) samples.
CMatrix ddam_precode(const CVector& x, const DdamConfig& cfg, const ChannelRealization& real);

// r[n] = sum_i h_i^H s[n - l_i] e^{j2pi nu_i n Ts} + w[n]; output length = cols + max delay.
CVector apply_miso_channel(const CMatrix& s, const DdamConfig& cfg, const ChannelRealization& real,
                           std::uint64_t noise_seed);

cdouble ddam_composite_gain(const DdamConfig& cfg, const ChannelRealization& real);

// Picks K symbols starting at the common tap tau_max and divides by the composite gain.
CVector ddam_receive(const CVector& r, Eigen::Index tau_max, cdouble gain, Eigen::Index count);

}  // namespace mcwf
