#include "mcwf/digest.hpp"
#include "mcwf/kpi.hpp"
#include "mcwf/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <thread>

namespace mcwf {

namespace {

// Stream tags under a trial seed.
constexpr std::uint64_t kChannelStream = 1;
constexpr std::uint64_t kBitStream = 2;
constexpr std::uint64_t kNoiseStream = 100;

Bits random_bits(std::size_t n, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    Bits b(n);
    for (std::size_t i = 0; i < n; i += 64) {
        std::uint64_t word = rng();
        for (std::size_t j = i; j < std::min(n, i + 64); ++j, word >>= 1) b[j] = std::uint8_t(word & 1);
    }
    return b;
}

void hash_path_set(Sha256& h, const PathSet& ps)
{
    for (const auto& p : ps.paths) {
        const double v[5] = {p.gain.real(), p.gain.imag(), p.delay_s, p.doppler_hz, p.scale};
        h.update(v, sizeof v);
    }
}

}  // namespace

std::string to_string(Detector d) { return d == Detector::MMSE ? "mmse" : "single-tap"; }

Detector parse_detector(const std::string& name)
{
    std::string u = name;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (u == "mmse") return Detector::MMSE;
    if (u == "single-tap" || u == "single_tap" || u == "one-tap") return Detector::SingleTap;
    throw LookupError("unknown detector '" + name + "'");
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn)
{
    if (count <= 0) return;
    const int workers = std::max(1, std::min(threads, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

PathSet draw_path_set(const ChannelConfig& cfg, std::uint64_t trial_seed)
{
    const std::uint64_t s = derive_seed(trial_seed, kChannelStream);
    PathSet ps = cfg.profile;
    if (cfg.gains == GainModel::RayleighUniform)
        for (auto& p : ps.paths) p.gain = 1.0;
    if (cfg.gains != GainModel::Profile) ps = draw_rayleigh_gains(ps, derive_seed(s, 0));
    if (cfg.doppler == DopplerModel::Jakes) ps = draw_jakes_dopplers(ps, cfg.max_doppler_hz, derive_seed(s, 1));
    return ps;
}

BerResult run_ber(const WaveformBundle& bundle, const BerSetup& setup)
{
    if (setup.trials < 1) throw ConfigError("run_ber: trials must be >= 1");
    if (setup.snr_db.empty()) throw ConfigError("run_ber: SNR list is empty");
    if (bundle.real_field) throw ConfigError("run_ber: " + scheme_name(bundle.scheme) + " needs a real-field receiver");
    const Constellation constellation(setup.modulation_order);
    const std::size_t nbits = std::size_t(bundle.symbols()) * std::size_t(constellation.bits_per_symbol());
    const std::size_t nsnr = setup.snr_db.size();

    std::vector<std::vector<std::uint64_t>> errors(std::size_t(setup.trials), std::vector<std::uint64_t>(nsnr, 0));
    std::vector<std::string> digests(std::size_t(setup.trials));

    parallel_for(setup.trials, setup.threads, [&](int t) {
        const std::uint64_t trial_seed = derive_seed(setup.seed, std::uint64_t(t));
        const PathSet ps = draw_path_set(setup.channel, trial_seed);
        ChannelRealization real = discretize(ps, bundle.sample_rate_hz, bundle.geometry.subcarrier_spacing_hz,
                                             setup.channel.kind);
        const Bits bits = random_bits(nbits, derive_seed(trial_seed, kBitStream));
        {
            Sha256 h;
            h.update(bits.data(), bits.size());
            hash_path_set(h, ps);
            digests[std::size_t(t)] = h.hex();
        }
        const CVector x = constellation.map_bits(bits);
        const CVector frame = bundle.transmit(x);
        const CMatrix heff = effective_channel(bundle, real);

        std::unique_ptr<MmseSolver> mmse;
        CMatrix diag;
        if (setup.detector == Detector::MMSE)
            mmse = std::make_unique<MmseSolver>(heff);
        else
            diag = CMatrix(heff.diagonal().asDiagonal());

        for (std::size_t k = 0; k < nsnr; ++k) {
            real.noise_variance = noise_variance_from_snr(setup.snr_db[k]);
            const CVector r = apply_channel(frame, real, derive_seed(trial_seed, kNoiseStream + k));
            const CVector y = bundle.receive(r);
            const CVector xhat = mmse ? mmse->solve(y, real.noise_variance)
                                      : single_tap_equalize(y, diag, real.noise_variance, constellation).soft;
            const Bits decided = constellation.demap_hard(xhat);
            std::uint64_t e = 0;
            for (std::size_t i = 0; i < nbits; ++i) e += decided[i] != bits[i];
            errors[std::size_t(t)][k] = e;
        }
    });

    BerResult out;
    Sha256 total;
    for (const auto& d : digests) total.update(d);
    out.stream_digest = total.hex();
    for (std::size_t k = 0; k < nsnr; ++k) {
        BerPoint p;
        p.snr_db = setup.snr_db[k];
        for (const auto& row : errors) p.bit_errors += row[k];
        p.bits = std::uint64_t(nbits) * std::uint64_t(setup.trials);
        p.ber = double(p.bit_errors) / double(p.bits);
        out.points.push_back(p);
    }
    return out;
}

}  // namespace mcwf
