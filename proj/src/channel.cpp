#include "mcwf/channel.hpp"

#include "mcwf/rng.hpp"
#include "mcwf/waveforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mcwf {

namespace {

struct ProfileTable {
    const char* name;
    std::vector<double> delays_ns;
    std::vector<double> powers_db;
    double max_doppler_hz;
};

// 3GPP TS 36.104 Annex B.2 extended models.
const std::vector<ProfileTable>& profile_tables()
{
    static const std::vector<ProfileTable> tables = {
        {"EPA", {0, 30, 70, 90, 110, 190, 410}, {0.0, -1.0, -2.0, -3.0, -8.0, -17.2, -20.8}, 5.0},
        {"EVA",
         {0, 30, 150, 310, 370, 710, 1090, 1730, 2510},
         {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9},
         70.0},
        {"ETU",
         {0, 50, 120, 200, 230, 500, 1600, 2300, 5000},
         {-1.0, -1.0, -1.0, 0.0, 0.0, 0.0, -3.0, -5.0, -7.0},
         300.0},
    };
    return tables;
}

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::toupper(c)); });
    return s;
}

cdouble cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Source sample index feeding output sample n through one tap, or -1.
Eigen::Index source_index(const Tap& tap, ChannelModelKind kind, Eigen::Index n)
{
    if (kind == ChannelModelKind::WidebandDDC)
        return static_cast<Eigen::Index>(std::llround(double(n) * (1.0 + tap.scale) - double(tap.delay)));
    return n - tap.delay;
}

}  // namespace

double PathSet::max_delay() const
{
    double m = 0.0;
    for (const auto& p : paths) m = std::max(m, p.delay_s);
    return m;
}

double PathSet::total_power() const
{
    double s = 0.0;
    for (const auto& p : paths) s += std::norm(p.gain);
    return s;
}

Eigen::Index ChannelRealization::max_delay() const
{
    Eigen::Index m = 0;
    for (const auto& t : taps) m = std::max(m, t.delay);
    return m;
}

std::string to_string(ChannelModelKind kind)
{
    switch (kind) {
    case ChannelModelKind::WidebandDDC: return "wideband-ddc";
    case ChannelModelKind::NarrowbandDDC: return "ddc";
    case ChannelModelKind::TDC: return "tdc";
    case ChannelModelKind::FDC: return "fdc";
    }
    return "ddc";
}

ChannelModelKind parse_channel_kind(const std::string& name)
{
    const std::string u = upper(name);
    if (u == "DDC" || u == "NARROWBAND-DDC" || u == "NARROWBAND") return ChannelModelKind::NarrowbandDDC;
    if (u == "WIDEBAND-DDC" || u == "WIDEBAND") return ChannelModelKind::WidebandDDC;
    if (u == "TDC") return ChannelModelKind::TDC;
    if (u == "FDC") return ChannelModelKind::FDC;
    throw LookupError("unknown channel model '" + name + "'");
}

double doppler_from_speed(double speed_kmh, double carrier_hz) { return speed_kmh / 3.6 * carrier_hz / kSpeedOfLight; }

double noise_variance_from_snr(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

std::vector<std::string> channel_preset_names() { return {"EPA", "EVA", "ETU", "FIG16", "AWGN"}; }

PathSet channel_preset(const std::string& name)
{
    const std::string u = upper(name);
    PathSet ps;
    ps.name = u;
    if (u == "AWGN") {
        ps.paths.push_back(Path{});
        ps.normalized = true;
        return ps;
    }
    if (u == "FIG16") {
        const double delays_us[] = {0.0, 0.0, 0.39, 1.17, 2.34};
        const double speeds_kmh[] = {0.0, -1080.0, 648.0, 270.0, 108.0};
        ps.carrier_hz = 24e9;
        const double g = 1.0 / std::sqrt(5.0);
        for (int i = 0; i < 5; ++i) {
            Path p;
            p.gain = g;
            p.delay_s = delays_us[i] * 1e-6;
            p.doppler_hz = doppler_from_speed(speeds_kmh[i], ps.carrier_hz);
            p.scale = p.doppler_hz / ps.carrier_hz;
            ps.paths.push_back(p);
            ps.max_doppler_hz = std::max(ps.max_doppler_hz, std::abs(p.doppler_hz));
        }
        ps.normalized = true;
        return ps;
    }
    for (const auto& t : profile_tables()) {
        if (u != t.name) continue;
        for (std::size_t i = 0; i < t.delays_ns.size(); ++i) {
            Path p;
            p.gain = std::sqrt(std::pow(10.0, t.powers_db[i] / 10.0));
            p.delay_s = t.delays_ns[i] * 1e-9;
            ps.paths.push_back(p);
        }
        ps.max_doppler_hz = t.max_doppler_hz;
        return normalize_power(ps);
    }
    throw LookupError("unknown channel preset '" + name + "'");
}

PathSet parse_profile(const std::string& text, double carrier_hz)
{
    PathSet ps;
    ps.name = "custom";
    ps.carrier_hz = carrier_hz;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::string f_power, f_delay, f_doppler, extra;
        if (!(fields >> f_power)) continue;
        if (!(fields >> f_delay >> f_doppler) || (fields >> extra))
            throw ConfigError("profile line " + std::to_string(lineno) + ": expected 3 fields");
        try {
            Path p;
            p.gain = std::sqrt(std::pow(10.0, std::stod(f_power) / 10.0));
            p.delay_s = std::stod(f_delay);
            std::string low = f_doppler;
            std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return char(std::tolower(c)); });
            if (low.size() > 3 && low.substr(low.size() - 3) == "kmh") {
                if (carrier_hz <= 0) throw ConfigError("velocity entries need a carrier frequency");
                p.doppler_hz = doppler_from_speed(std::stod(low.substr(0, low.size() - 3)), carrier_hz);
            } else {
                p.doppler_hz = std::stod(f_doppler);
            }
            if (p.delay_s < 0) throw DomainError("negative delay");
            p.scale = carrier_hz > 0 ? p.doppler_hz / carrier_hz : 0.0;
            ps.max_doppler_hz = std::max(ps.max_doppler_hz, std::abs(p.doppler_hz));
            ps.paths.push_back(p);
        } catch (const std::invalid_argument&) {
            throw ConfigError("profile line " + std::to_string(lineno) + ": not a number");
        }
    }
    if (ps.paths.empty()) throw ConfigError("profile has no paths");
    return normalize_power(ps);
}

PathSet load_profile(const std::string& path, double carrier_hz)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open channel profile '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_profile(buf.str(), carrier_hz);
}

PathSet normalize_power(const PathSet& ps)
{
    PathSet out = ps;
    const double total = ps.total_power();
    if (!(total > 0)) throw DomainError("path set has zero power");
    const double s = 1.0 / std::sqrt(total);
    for (auto& p : out.paths) p.gain *= s;
    out.normalized = true;
    return out;
}

PathSet draw_jakes_dopplers(const PathSet& ps, double max_doppler_hz, std::uint64_t seed)
{
    if (max_doppler_hz < 0) throw DomainError("maximum Doppler must be >= 0");
    PathSet out = ps;
    SplitMix64 rng(seed);
    for (auto& p : out.paths) {
        const double theta = -kPi + 2.0 * kPi * rng.uniform();
        p.doppler_hz = max_doppler_hz * std::cos(theta);
        p.scale = out.carrier_hz > 0 ? p.doppler_hz / out.carrier_hz : 0.0;
    }
    out.max_doppler_hz = max_doppler_hz;
    return out;
}

PathSet draw_rayleigh_gains(const PathSet& ps, std::uint64_t seed)
{
    PathSet out = ps;
    SplitMix64 rng(seed);
    for (auto& p : out.paths) p.gain = std::abs(p.gain) * rng.complex_normal();
    return normalize_power(out);
}

PathSet apply_model(const PathSet& ps, ChannelModelKind kind)
{
    PathSet out = ps;
    for (auto& p : out.paths) {
        if (kind == ChannelModelKind::TDC) {
            p.doppler_hz = 0.0;
            p.scale = 0.0;
        } else if (kind == ChannelModelKind::FDC) {
            p.delay_s = 0.0;
        } else if (kind == ChannelModelKind::NarrowbandDDC) {
            p.scale = 0.0;
        }
    }
    return out;
}

ChannelRealization discretize(const PathSet& ps, double fs, double df, ChannelModelKind kind)
{
    if (!(fs > 0) || !(df > 0)) throw DomainError("sample rate and subcarrier spacing must be positive");
    if (ps.paths.empty()) throw ShapeError("path set is empty");
    PathSet model = apply_model(ps, kind);
    ChannelRealization r;
    r.kind = kind;
    r.sample_rate_hz = fs;
    r.subcarrier_spacing_hz = df;
    for (const auto& p : model.paths) {
        if (p.delay_s < 0) throw DomainError("negative path delay");
        Tap t;
        t.delay = static_cast<Eigen::Index>(std::llround(p.delay_s * fs));
        t.doppler_hz = p.doppler_hz;
        t.gain = p.gain;
        t.scale = kind == ChannelModelKind::WidebandDDC ? p.scale : 0.0;
        r.taps.push_back(t);
    }
    return r;
}

PathSet implied_path_set(const ChannelRealization& r)
{
    PathSet ps;
    ps.name = "implied";
    for (const auto& t : r.taps) {
        Path p;
        p.gain = t.gain;
        p.delay_s = double(t.delay) / r.sample_rate_hz;
        p.doppler_hz = t.doppler_hz;
        p.scale = t.scale;
        ps.paths.push_back(p);
    }
    return ps;
}

CMatrix apply_channel_columns(const CMatrix& s, const ChannelRealization& r)
{
    const Eigen::Index len = s.rows();
    CMatrix out = CMatrix::Zero(len, s.cols());
    for (const auto& tap : r.taps) {
        const double w = 2.0 * kPi * tap.doppler_hz / r.sample_rate_hz;
        for (Eigen::Index n = 0; n < len; ++n) {
            const Eigen::Index src = source_index(tap, r.kind, n);
            if (src < 0 || src >= len) continue;
            out.row(n) += (tap.gain * cis(w * double(n))) * s.row(src);
        }
    }
    return out;
}

CVector apply_channel(const CVector& s, const ChannelRealization& r, std::uint64_t noise_seed)
{
    if (s.size() == 0) throw ShapeError("apply_channel: empty input");
    CVector out = apply_channel_columns(s, r).col(0);
    if (r.noise_variance > 0) {
        SplitMix64 rng(noise_seed);
        for (Eigen::Index n = 0; n < out.size(); ++n) out(n) += rng.complex_normal(r.noise_variance);
    }
    return out;
}

CMatrix channel_matrix_full(const ChannelRealization& r, Eigen::Index length)
{
    if (length < r.max_delay() + 1) throw ShapeError("channel_matrix_full: length shorter than the delay spread");
    CMatrix h = CMatrix::Zero(length, length);
    for (const auto& tap : r.taps) {
        const double w = 2.0 * kPi * tap.doppler_hz / r.sample_rate_hz;
        for (Eigen::Index n = 0; n < length; ++n) {
            const Eigen::Index src = source_index(tap, r.kind, n);
            if (src < 0 || src >= length) continue;
            h(n, src) += tap.gain * cis(w * double(n));
        }
    }
    return h;
}

CMatrix effective_channel(const WaveformBundle& bundle, const ChannelRealization& r)
{
    const double rel = std::abs(bundle.sample_rate_hz - r.sample_rate_hz) / bundle.sample_rate_hz;
    if (rel > 1e-9) throw ConfigError("effective_channel: waveform and channel sample rates differ");
    const Eigen::Index lp = bundle.prefix_length();
    if (bundle.prefix.kind != PrefixKind::None && r.max_delay() > lp)
        throw ConfigError("effective_channel: prefix of " + std::to_string(lp) + " samples is shorter than the " +
                          std::to_string(r.max_delay()) + "-sample delay spread");
    CMatrix frames = add_prefix_rows(bundle.tx, bundle.prefix, lp);
    CMatrix received = apply_channel_columns(frames, r);
    return bundle.rx * received.bottomRows(bundle.core_length());
}

SparsityMetrics sparsity_metrics(const CMatrix& h, double threshold)
{
    if (!(threshold > 0 && threshold < 1)) throw DomainError("sparsity threshold must lie in (0, 1)");
    SparsityMetrics m;
    if (h.size() == 0) return m;
    const double cut = threshold * h.cwiseAbs().maxCoeff();
    Eigen::Index total = 0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        Eigen::Index row = 0;
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            if (std::abs(h(i, j)) >= cut) ++row;
        total += row;
        m.max_row_support = std::max(m.max_row_support, row);
    }
    m.support_fraction = double(total) / double(h.size());
    return m;
}

}  // namespace mcwf
