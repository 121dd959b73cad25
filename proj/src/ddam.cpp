#include "mcwf/ddam.hpp"

#include "mcwf/rng.hpp"

#include <cmath>

namespace mcwf {

namespace {

void check(const DdamConfig& cfg, const ChannelRealization& real)
{
    if (cfg.streams != 1) throw ConfigError("DDAM: only a single stream is supported");
    if (cfg.steering.size() != real.taps.size())
        throw ConfigError("DDAM: need one steering vector per channel tap");
    for (const auto& h : cfg.steering) {
        if (h.size() != cfg.antennas) throw ShapeError("DDAM: steering vector length must equal M_t");
        if (!(h.norm() > 0)) throw BeamformerError("DDAM: steering vector has zero norm");
    }
}

cdouble cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

std::vector<CVector> random_steering(Eigen::Index antennas, std::size_t paths, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<CVector> out(paths, CVector(antennas));
    for (auto& h : out)
        for (Eigen::Index a = 0; a < antennas; ++a) h(a) = rng.complex_normal(1.0 / double(antennas));
    return out;
}

std::vector<CVector> ddam_beamformers(const DdamConfig& cfg, const ChannelRealization& real)
{
    check(cfg, real);
    const std::size_t p = cfg.steering.size();
    const double ts = 1.0 / real.sample_rate_hz;
    const double share = 1.0 / std::sqrt(double(p));
    std::vector<CVector> f(p);
    for (std::size_t i = 0; i < p; ++i) {
        CVector v = cfg.steering[i];
        if (cfg.beamformer == Beamformer::ZF && p > 1) {
            if (cfg.antennas < Eigen::Index(p)) throw BeamformerError("DDAM ZF: needs M_t >= P");
            CMatrix others(cfg.antennas, Eigen::Index(p - 1));
            Eigen::Index c = 0;
            for (std::size_t j = 0; j < p; ++j)
                if (j != i) others.col(c++) = cfg.steering[j];
            Eigen::ColPivHouseholderQR<CMatrix> qr(others);
            if (qr.rank() < others.cols()) throw BeamformerError("DDAM ZF: steering vectors are rank deficient");
            CMatrix q = qr.householderQ() * CMatrix::Identity(cfg.antennas, others.cols());
            v -= q * (q.adjoint() * v);
            if (v.norm() < 1e-12 * cfg.steering[i].norm())
                throw BeamformerError("DDAM ZF: path lies in the span of the others");
        }
        const double phase = -2.0 * kPi * real.taps[i].doppler_hz * double(real.taps[i].delay) * ts;
        f[i] = (share / v.norm()) * cis(phase) * v;
    }
    return f;
}

CMatrix ddam_precode(const CVector& x, const DdamConfig& cfg, const ChannelRealization& real)
{
    const auto f = ddam_beamformers(cfg, real);
    const Eigen::Index lmax = real.max_delay();
    const Eigen::Index len = x.size() + lmax;
    const double ts = 1.0 / real.sample_rate_hz;
    CMatrix s = CMatrix::Zero(cfg.antennas, len);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Eigen::Index kappa = lmax - real.taps[i].delay;
        const double w = -2.0 * kPi * real.taps[i].doppler_hz * ts;
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            const Eigen::Index n = k + kappa;
            s.col(n) += (x(k) * cis(w * double(n))) * f[i];
        }
    }
    return s;
}

CVector apply_miso_channel(const CMatrix& s, const DdamConfig& cfg, const ChannelRealization& real,
                           std::uint64_t noise_seed)
{
    check(cfg, real);
    if (s.rows() != cfg.antennas) throw ShapeError("MISO channel: signal rows must equal M_t");
    const Eigen::Index lmax = real.max_delay();
    const Eigen::Index len = s.cols() + lmax;
    const double ts = 1.0 / real.sample_rate_hz;
    CVector r = CVector::Zero(len);
    for (std::size_t i = 0; i < real.taps.size(); ++i) {
        const auto& tap = real.taps[i];
        // h_i^H s[:, m] for every transmit sample
        Eigen::Matrix<cdouble, 1, Eigen::Dynamic> proj = cfg.steering[i].adjoint() * s;
        const double w = 2.0 * kPi * tap.doppler_hz * ts;
        for (Eigen::Index m = 0; m < s.cols(); ++m) {
            const Eigen::Index n = m + tap.delay;
            r(n) += proj(m) * cis(w * double(n));
        }
    }
    if (real.noise_variance > 0) {
        SplitMix64 rng(noise_seed);
        for (Eigen::Index n = 0; n < len; ++n) r(n) += rng.complex_normal(real.noise_variance);
    }
    return r;
}

cdouble ddam_composite_gain(const DdamConfig& cfg, const ChannelRealization& real)
{
    const auto f = ddam_beamformers(cfg, real);
    const double ts = 1.0 / real.sample_rate_hz;
    cdouble g(0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& tap = real.taps[i];
        g += cfg.steering[i].dot(f[i]) * cis(2.0 * kPi * tap.doppler_hz * double(tap.delay) * ts);
    }
    return g;
}

CVector ddam_receive(const CVector& r, Eigen::Index tau_max, cdouble gain, Eigen::Index count)
{
    if (std::abs(gain) == 0.0) throw DomainError("DDAM: composite gain is zero");
    if (tau_max < 0 || tau_max + count > r.size()) throw ShapeError("DDAM: received sequence too short");
    return r.segment(tau_max, count) / gain;
}

}  // namespace mcwf
