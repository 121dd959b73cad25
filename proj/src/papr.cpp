#include "mcwf/kpi.hpp"
#include "mcwf/rng.hpp"

#include <algorithm>
#include <cmath>

namespace mcwf {

namespace {

CVector random_symbols(const Constellation& c, Eigen::Index n, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    CVector x(n);
    for (Eigen::Index k = 0; k < n; ++k) x(k) = c.points()(Eigen::Index(rng.below(std::uint64_t(c.order()))));
    return x;
}

double to_db(double v) { return 10.0 * std::log10(v); }

}  // namespace

double papr_db(const CVector& s)
{
    if (s.size() == 0) throw ShapeError("papr: empty signal");
    const double mean = s.squaredNorm() / double(s.size());
    if (!(mean > 0)) throw DomainError("papr: zero-power signal");
    return to_db(s.cwiseAbs2().maxCoeff() / mean);
}

std::vector<double> papr_samples(const WaveformBundle& bundle, int trials, std::uint64_t seed, int order, int threads)
{
    if (trials < 1) throw ConfigError("papr: trials must be >= 1");
    const Constellation c(order);
    std::vector<double> out(std::size_t(trials), 0.0);
    parallel_for(trials, threads, [&](int t) {
        const CVector x = random_symbols(c, bundle.symbols(), derive_seed(seed, std::uint64_t(t)));
        // prefix excluded: statistic over the core frame
        out[std::size_t(t)] = papr_db(bundle.modulate(x));
    });
    return out;
}

std::vector<double> papr_samples_ddam(const DdamPaprSetup& setup, int trials, std::uint64_t seed, int threads)
{
    if (trials < 1) throw ConfigError("papr: trials must be >= 1");
    if (setup.paths < 1) throw ConfigError("DDAM: at least one path");
    const Constellation c(setup.order);
    const std::size_t per = std::size_t(setup.antennas);
    std::vector<double> out(std::size_t(trials) * per, 0.0);
    parallel_for(trials, threads, [&](int t) {
        const std::uint64_t ts = derive_seed(seed, std::uint64_t(t));
        SplitMix64 rng(derive_seed(ts, 1));
        ChannelRealization real;
        real.sample_rate_hz = 1.0;
        for (std::size_t i = 0; i < setup.paths; ++i) {
            Tap tap;
            if (i == 0)
                tap.delay = 0;
            else if (i + 1 == setup.paths)
                tap.delay = setup.max_delay;
            else
                tap.delay = Eigen::Index(rng.below(std::uint64_t(setup.max_delay + 1)));
            real.taps.push_back(tap);
        }
        DdamConfig cfg;
        cfg.antennas = setup.antennas;
        cfg.beamformer = setup.beamformer;
        cfg.steering = random_steering(setup.antennas, setup.paths, derive_seed(ts, 2));
        const CVector x = random_symbols(c, setup.symbols, derive_seed(ts, 3));
        const CMatrix s = ddam_precode(x, cfg, real);
        for (std::size_t a = 0; a < per; ++a) out[std::size_t(t) * per + a] = papr_db(s.row(Eigen::Index(a)).transpose());
    });
    return out;
}

std::vector<CcdfPoint> empirical_ccdf(std::vector<double> values)
{
    if (values.empty()) throw ShapeError("ccdf: no samples");
    std::sort(values.begin(), values.end());
    const double n = double(values.size());
    const double floor = std::min(1.0, 10.0 / n);
    std::vector<CcdfPoint> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        // skip ties so each point reports P(X > v)
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        const double p = (n - double(i + 1)) / n;
        if (p < floor) break;
        out.push_back({values[i], p});
    }
    return out;
}

double papr_at_ccdf(std::vector<double> values, double level)
{
    if (values.empty()) throw ShapeError("ccdf: no samples");
    if (!(level > 0 && level < 1)) throw DomainError("ccdf level must lie in (0, 1)");
    std::sort(values.begin(), values.end());
    const double n = double(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        if ((n - double(i + 1)) / n <= level) return values[i];
    return values.back();
}

}  // namespace mcwf
