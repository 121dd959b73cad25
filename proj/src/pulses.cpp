#include "mcwf/waveforms.hpp"

#include <cmath>

namespace mcwf {

namespace {

constexpr int kHermiteOrders[] = {0, 4, 8, 12, 16, 20};
constexpr double kHermiteCoeffs[] = {1.412692577, -3.0145e-3, -8.8041e-6, -2.2611e-9, -4.4570e-15, 1.8633e-16};

}  // namespace

double fbmc_prototype(double t)
{
    const double x = 2.0 * std::sqrt(kPi) * t;
    double acc = 0.0;
    for (int i = 0; i < 6; ++i) acc += kHermiteCoeffs[i] * std::hermite(kHermiteOrders[i], x);
    return std::exp(-2.0 * kPi * t * t) * acc;
}

FbmcSynthesis fbmc_synthesis(const FrameGeometry& g, int overlap_factor)
{
    if (overlap_factor < 4) throw ConfigError("FBMC: overlap factor must be >= 4");
    if (g.M < 2 || g.M % 2 != 0) throw ConfigError("FBMC: M must be even (T = T0/2 on the sample grid)");
    const Index m = g.M, n = g.N;
    // T0 = M samples, T = T0/2, F = 1/T0; time measured in T0
    const double dt = 1.0 / double(m);
    const Index rows = (n - 1) * m / 2 + Index(overlap_factor) * m + 1;
    const double t_start = -0.5 * overlap_factor;
    const double sqrt_dt = std::sqrt(dt);

    FbmcSynthesis out;
    out.dt = dt;
    out.sample_count = rows;
    out.G = CMatrix::Zero(rows, m * n);
    for (Index k = 0; k < n; ++k)
        for (Index i = 0; i < rows; ++i) {
            const double tk = t_start + double(i) * dt - 0.5 * double(k);
            if (std::abs(tk) > 0.5 * overlap_factor) continue;
            const double p = sqrt_dt * fbmc_prototype(tk);
            for (Index l = 0; l < m; ++l) {
                const double ph = 2.0 * kPi * double(l) * tk + 0.5 * kPi * double((l + k) % 4);
                out.G(i, l + k * m) = p * cdouble(std::cos(ph), std::sin(ph));
            }
        }
    return out;
}

double root_raised_cosine(double t, double ts, double beta)
{
    const double x = t / ts;
    const double norm = 1.0 / std::sqrt(ts);
    if (std::abs(x) < 1e-12) return norm * (1.0 - beta + 4.0 * beta / kPi);
    if (beta > 0.0 && std::abs(std::abs(x) - 1.0 / (4.0 * beta)) < 1e-9) {
        const double a = kPi / (4.0 * beta);
        return norm * beta / std::sqrt(2.0) * ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
    }
    const double num = std::sin(kPi * x * (1.0 - beta)) + 4.0 * beta * x * std::cos(kPi * x * (1.0 + beta));
    const double den = kPi * x * (1.0 - 16.0 * beta * beta * x * x);
    return norm * num / den;
}

SampledPulse ddop_pulse(Index m, Index n, int q, double rolloff, int oversampling)
{
    if (q < 1 || 2 * Index(q) >= m) throw ConfigError("DDOP: requires 1 <= Q and 2Q < M");
    if (rolloff < 0.0 || rolloff > 1.0) throw ConfigError("DDOP: rolloff must lie in [0, 1]");
    if (n < 1 || oversampling < 1) throw ConfigError("DDOP: N and oversampling must be >= 1");

    // time in units of T; a(t) is root-Nyquist for T/M and truncated to |t| < Q T/M
    const double ts = 1.0 / double(m);
    const double half = double(q) * ts;
    SampledPulse out;
    out.dt = ts / double(oversampling);
    out.t0 = -half;
    const Index count = ((n - 1) * m + 2 * Index(q)) * oversampling + 1;
    out.samples.assign(static_cast<std::size_t>(count), 0.0);
    for (Index i = 0; i < count; ++i) {
        // exact sample offset relative to each pulse centre, in units of dt
        for (Index k = 0; k < n; ++k) {
            const Index off = i - Index(q) * oversampling - k * m * oversampling;
            if (std::abs(off) >= Index(q) * oversampling) continue;
            out.samples[i] += root_raised_cosine(double(off) * out.dt, ts, rolloff);
        }
    }
    double energy = 0.0;
    for (double v : out.samples) energy += v * v * out.dt;
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : out.samples) v *= scale;
    return out;
}

}  // namespace mcwf
