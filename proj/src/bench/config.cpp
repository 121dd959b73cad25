#include "mcwf/bench/config.hpp"
#include "mcwf/bench/presets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace mcwf::bench {

namespace {

const std::vector<std::pair<std::string, std::string>>& defaults()
{
    static const std::vector<std::pair<std::string, std::string>> d = {
        {"experiment", "ber"},
        {"preset", ""},
        {"schemes", "OFDM"},
        {"frame.m", "64"},
        {"frame.grid_m", "16"},
        {"frame.grid_n", "16"},
        {"frame.bandwidth_hz", "3072000"},
        {"frame.prefix", "auto"},
        {"channel.preset", "AWGN"},
        {"channel.profile_file", ""},
        {"channel.kind", "ddc"},
        {"channel.carrier_hz", "24000000000"},
        {"channel.speed_kmh", "0"},
        {"channel.max_doppler_hz", "auto"},
        {"channel.doppler", "jakes"},
        {"channel.gains", "rayleigh"},
        {"sim.snr_db", "0,5,10,15,20"},
        {"sim.trials", "100"},
        {"sim.seed", "1"},
        {"sim.threads", "1"},
        {"sim.modulation", "4"},
        {"sim.detector", "mmse"},
        {"waveform.afdm.c1", "auto"},
        {"waveform.afdm.c2", "0"},
        {"waveform.afdm.max_doppler", "auto"},
        {"waveform.frft.order", "0.5"},
        {"waveform.ifdm.seed", "1"},
        {"waveform.dfts.width", "0"},
        {"waveform.dfts.offset", "0"},
        {"waveform.oddm.pulse", "ddop"},
        {"waveform.oddm.q", "4"},
        {"waveform.oddm.rolloff", "0.1"},
        {"waveform.oddm.oversampling", "4"},
        {"waveform.fbmc.overlap", "6"},
        {"waveform.otsm.order", "sequency"},
        {"af.convention", "aperiodic"},
        {"af.include_prefix", "false"},
        {"af.doppler_oversampling", "8"},
        {"papr.include_ddam", "false"},
        {"papr.ddam.antennas", "64"},
        {"papr.ddam.paths", "5"},
        {"papr.ddam.max_delay", "40"},
        {"papr.ddam.symbols", "0"},
        {"papr.ddam.beamformer", "zf"},
        {"papr.ccdf_level", "0.01"},
        {"chanmat.kinds", "tdc,fdc,ddc"},
        {"chanmat.threshold", "1e-9"},
        {"sweep.points", "16"},
        {"sweep.snr_db", "15"},
        {"overhead.l_max", "8"},
        {"overhead.alpha_max", "4"},
        {"overhead.xi", "0"},
        {"output.dir", ""},
    };
    return d;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

std::vector<std::pair<std::string, std::string>> parse_lines(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

double parse_double(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) throw FieldError(key, "expected a number, got '" + v + "'");
    return x;
}

long long parse_integer(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size()) throw FieldError(key, "expected an integer, got '" + v + "'");
    return x;
}

template <class F>
auto wrap(const std::string& key, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const FieldError&) {
        throw;
    } catch (const Error& e) {
        throw FieldError(key, e.what());
    }
}

}  // namespace

std::string to_string(ExperimentKind k)
{
    switch (k) {
    case ExperimentKind::Ber: return "ber";
    case ExperimentKind::Papr: return "papr";
    case ExperimentKind::Af: return "af";
    case ExperimentKind::Chanmat: return "chanmat";
    case ExperimentKind::AfdmSweep: return "afdm-sweep";
    case ExperimentKind::Overhead: return "overhead";
    }
    return "";
}

ExperimentKind parse_experiment(const std::string& name)
{
    for (auto k : {ExperimentKind::Ber, ExperimentKind::Papr, ExperimentKind::Af, ExperimentKind::Chanmat,
                   ExperimentKind::AfdmSweep, ExperimentKind::Overhead})
        if (lower(name) == to_string(k)) return k;
    throw FieldError("experiment", "unknown experiment '" + name + "'");
}

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (const auto& [k, v] : defaults()) keys.push_back(k);
    return keys;
}

Config::Config()
{
    for (const auto& [k, v] : defaults()) values_[k] = v;
}

Config Config::from_preset(const std::string& name)
{
    const Preset& p = find_preset(name);
    Config c;
    for (const auto& [k, v] : p.entries) c.set(k, v);
    c.set("preset", p.name);
    return c;
}

Config Config::parse(const std::string& text)
{
    const auto lines = parse_lines(text);
    Config c;
    for (const auto& [k, v] : lines)
        if (k == "preset" && !v.empty()) c = from_preset(v);
    for (const auto& [k, v] : lines)
        if (k != "preset") c.set(k, v);
    return c;
}

Config Config::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void Config::set(const std::string& key, const std::string& value)
{
    auto it = values_.find(key);
    if (it == values_.end()) throw FieldError(key, "unknown configuration key");
    it->second = value;
}

void Config::assign(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

const std::string& Config::get(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end()) throw FieldError(key, "unknown configuration key");
    return it->second;
}

double Config::number(const std::string& key) const { return parse_double(key, get(key)); }
long long Config::integer(const std::string& key) const { return parse_integer(key, get(key)); }

bool Config::flag(const std::string& key) const
{
    const std::string v = lower(get(key));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw FieldError(key, "expected true or false, got '" + v + "'");
}

std::vector<std::string> Config::list(const std::string& key) const
{
    std::vector<std::string> out;
    std::istringstream in(get(key));
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> Config::numbers(const std::string& key) const
{
    std::vector<double> out;
    for (const auto& s : list(key)) out.push_back(parse_double(key, s));
    return out;
}

std::string Config::serialize() const
{
    std::ostringstream out;
    for (const auto& [k, v] : values_) out << k << " = " << v << '\n';
    return out.str();
}

Experiment resolve(const Config& cfg)
{
    Experiment e;
    e.kind = parse_experiment(cfg.get("experiment"));
    e.preset = cfg.get("preset");

    for (const auto& s : cfg.list("schemes")) e.schemes.push_back(wrap("schemes", [&] { return parse_scheme(s); }));
    if (e.schemes.empty() && !(e.kind == ExperimentKind::Overhead || (e.kind == ExperimentKind::Papr && cfg.flag("papr.include_ddam"))))
        throw FieldError("schemes", "at least one waveform is required");
    if (e.kind == ExperimentKind::AfdmSweep && (e.schemes.size() != 1 || e.schemes[0] != Scheme::AFDM))
        throw FieldError("schemes", "the AFDM sweep takes exactly 'AFDM'");

    const long long m = cfg.integer("frame.m"), gm = cfg.integer("frame.grid_m"), gn = cfg.integer("frame.grid_n");
    if (m < 1) throw FieldError("frame.m", "must be >= 1");
    if (gm < 1) throw FieldError("frame.grid_m", "must be >= 1");
    if (gn < 1) throw FieldError("frame.grid_n", "must be >= 1");
    const double bw = cfg.number("frame.bandwidth_hz");
    if (!(bw > 0)) throw FieldError("frame.bandwidth_hz", "must be positive");

    // channel
    e.carrier_hz = cfg.number("channel.carrier_hz");
    if (!(e.carrier_hz > 0)) throw FieldError("channel.carrier_hz", "must be positive");
    const std::string file = cfg.get("channel.profile_file");
    e.channel.profile = file.empty()
                            ? wrap("channel.preset", [&] { return channel_preset(cfg.get("channel.preset")); })
                            : wrap("channel.profile_file", [&] { return load_profile(file, e.carrier_hz); });
    e.channel.kind = wrap("channel.kind", [&] { return parse_channel_kind(cfg.get("channel.kind")); });
    const std::string dm = lower(cfg.get("channel.doppler"));
    if (dm == "jakes")
        e.channel.doppler = DopplerModel::Jakes;
    else if (dm == "profile")
        e.channel.doppler = DopplerModel::Profile;
    else
        throw FieldError("channel.doppler", "expected jakes or profile");
    const std::string gmodel = lower(cfg.get("channel.gains"));
    if (gmodel == "rayleigh")
        e.channel.gains = GainModel::Rayleigh;
    else if (gmodel == "rayleigh-uniform")
        e.channel.gains = GainModel::RayleighUniform;
    else if (gmodel == "profile")
        e.channel.gains = GainModel::Profile;
    else
        throw FieldError("channel.gains", "expected rayleigh, rayleigh-uniform or profile");
    const double speed = cfg.number("channel.speed_kmh");
    if (speed < 0) throw FieldError("channel.speed_kmh", "must be >= 0");
    if (lower(cfg.get("channel.max_doppler_hz")) == "auto")
        e.channel.max_doppler_hz = speed > 0 ? doppler_from_speed(speed, e.carrier_hz) : e.channel.profile.max_doppler_hz;
    else
        e.channel.max_doppler_hz = cfg.number("channel.max_doppler_hz");
    if (e.channel.max_doppler_hz < 0) throw FieldError("channel.max_doppler_hz", "must be >= 0");

    // geometry
    long long prefix = 0;
    if (lower(cfg.get("frame.prefix")) == "auto")
        prefix = std::llround(e.channel.profile.max_delay() * bw);
    else
        prefix = cfg.integer("frame.prefix");
    if (prefix < 0) throw FieldError("frame.prefix", "must be >= 0");
    e.geometry_1d = FrameGeometry{m, 1, bw / double(m), prefix};
    e.geometry_2d = FrameGeometry{gm, gn, bw / double(gm), prefix};

    // simulation
    e.snr_db = cfg.numbers("sim.snr_db");
    const long long trials = cfg.integer("sim.trials");
    if (trials < 1) throw FieldError("sim.trials", "trials must be >= 1");
    e.trials = int(trials);
    e.seed = std::uint64_t(cfg.integer("sim.seed"));
    const long long threads = cfg.integer("sim.threads");
    if (threads < 1) throw FieldError("sim.threads", "must be >= 1");
    e.threads = int(threads);
    e.modulation_order = int(cfg.integer("sim.modulation"));
    wrap("sim.modulation", [&] { return Constellation(e.modulation_order).order(); });
    e.detector = wrap("sim.detector", [&] { return parse_detector(cfg.get("sim.detector")); });

    // waveform parameters
    WaveformParams& p = e.params;
    p.afdm_c1 = lower(cfg.get("waveform.afdm.c1")) == "auto" ? std::numeric_limits<double>::quiet_NaN()
                                                            : cfg.number("waveform.afdm.c1");
    p.afdm_c2 = cfg.number("waveform.afdm.c2");
    p.afdm_max_doppler = lower(cfg.get("waveform.afdm.max_doppler")) == "auto"
                             ? e.channel.max_doppler_hz / e.geometry_1d.subcarrier_spacing_hz
                             : cfg.number("waveform.afdm.max_doppler");
    if (p.afdm_max_doppler < 0) throw FieldError("waveform.afdm.max_doppler", "must be >= 0");
    p.frft_order = cfg.number("waveform.frft.order");
    if (std::abs(std::sin(p.frft_order * kPi / 2)) < 1e-12)
        throw FieldError("waveform.frft.order", "order must not be an even integer");
    p.ifdm_seed = std::uint64_t(cfg.integer("waveform.ifdm.seed"));
    p.dfts_width = cfg.integer("waveform.dfts.width");
    if (p.dfts_width != 0 && p.dfts_width < m) throw FieldError("waveform.dfts.width", "must be 0 or >= frame.m");
    p.dfts_offset = cfg.integer("waveform.dfts.offset");
    const std::string pulse = lower(cfg.get("waveform.oddm.pulse"));
    if (pulse == "ddop")
        p.oddm_pulse = OddmPulse::DDOP;
    else if (pulse == "rect")
        p.oddm_pulse = OddmPulse::Rect;
    else
        throw FieldError("waveform.oddm.pulse", "expected ddop or rect");
    p.oddm_q = int(cfg.integer("waveform.oddm.q"));
    p.oddm_rolloff = cfg.number("waveform.oddm.rolloff");
    if (p.oddm_rolloff < 0 || p.oddm_rolloff > 1) throw FieldError("waveform.oddm.rolloff", "must lie in [0, 1]");
    p.oddm_oversampling = int(cfg.integer("waveform.oddm.oversampling"));
    p.fbmc_overlap = int(cfg.integer("waveform.fbmc.overlap"));
    if (p.fbmc_overlap < 1) throw FieldError("waveform.fbmc.overlap", "must be >= 1");
    const std::string order = lower(cfg.get("waveform.otsm.order"));
    if (order == "sequency")
        p.otsm_order = WhtOrder::Sequency;
    else if (order == "hadamard")
        p.otsm_order = WhtOrder::Hadamard;
    else
        throw FieldError("waveform.otsm.order", "expected sequency or hadamard");

    // AF
    e.af_convention = wrap("af.convention", [&] { return parse_af_convention(cfg.get("af.convention")); });
    e.af_include_prefix = cfg.flag("af.include_prefix");
    e.af_doppler_oversampling = int(cfg.integer("af.doppler_oversampling"));
    if (e.af_doppler_oversampling < 1) throw FieldError("af.doppler_oversampling", "must be >= 1");

    // PAPR
    e.papr_ddam = cfg.flag("papr.include_ddam");
    e.ddam.antennas = cfg.integer("papr.ddam.antennas");
    const long long paths = cfg.integer("papr.ddam.paths");
    if (paths < 1) throw FieldError("papr.ddam.paths", "must be >= 1");
    e.ddam.paths = std::size_t(paths);
    e.ddam.max_delay = cfg.integer("papr.ddam.max_delay");
    if (e.ddam.max_delay < 0) throw FieldError("papr.ddam.max_delay", "must be >= 0");
    const std::string bf = lower(cfg.get("papr.ddam.beamformer"));
    if (bf == "zf")
        e.ddam.beamformer = Beamformer::ZF;
    else if (bf == "mrt")
        e.ddam.beamformer = Beamformer::MRT;
    else
        throw FieldError("papr.ddam.beamformer", "expected zf or mrt");
    if (e.ddam.beamformer == Beamformer::ZF && e.ddam.antennas < paths)
        throw FieldError("papr.ddam.antennas", "zero-forcing needs at least as many antennas as paths");
    if (e.ddam.antennas < 1) throw FieldError("papr.ddam.antennas", "must be >= 1");
    e.ddam.symbols = cfg.integer("papr.ddam.symbols");
    if (e.ddam.symbols < 0) throw FieldError("papr.ddam.symbols", "must be >= 0");
    if (e.ddam.symbols == 0) e.ddam.symbols = m;
    e.ddam.order = e.modulation_order;
    e.ccdf_level = cfg.number("papr.ccdf_level");
    if (!(e.ccdf_level > 0 && e.ccdf_level < 1)) throw FieldError("papr.ccdf_level", "must lie in (0, 1)");

    // channel matrices
    for (const auto& k : cfg.list("chanmat.kinds"))
        e.chanmat_kinds.push_back(wrap("chanmat.kinds", [&] { return parse_channel_kind(k); }));
    e.chanmat_threshold = cfg.number("chanmat.threshold");
    if (e.chanmat_threshold < 0) throw FieldError("chanmat.threshold", "must be >= 0");

    e.sweep_points = int(cfg.integer("sweep.points"));
    if (e.sweep_points < 2) throw FieldError("sweep.points", "must be >= 2");
    e.sweep_snr_db = cfg.number("sweep.snr_db");

    e.overhead_l_max = cfg.integer("overhead.l_max");
    e.overhead_alpha_max = cfg.integer("overhead.alpha_max");
    e.overhead_xi = cfg.integer("overhead.xi");
    if (e.overhead_l_max < 0) throw FieldError("overhead.l_max", "must be >= 0");
    if (e.overhead_alpha_max < 0) throw FieldError("overhead.alpha_max", "must be >= 0");
    if (e.overhead_xi < 0) throw FieldError("overhead.xi", "must be >= 0");

    e.output_dir = cfg.get("output.dir");

    // experiment-specific feasibility
    std::set<Scheme> seen;
    for (Scheme s : e.schemes) {
        if (!seen.insert(s).second) throw FieldError("schemes", "duplicate waveform " + scheme_name(s));
        if (s == Scheme::OTSM && !is_power_of_two(Index(gn))) throw FieldError("frame.grid_n", "OTSM needs a power-of-two N");
        if (s == Scheme::FBMC && m % 2 != 0) throw FieldError("frame.m", "FBMC needs an even M");
        if (s == Scheme::FBMC && (e.kind == ExperimentKind::Ber || e.kind == ExperimentKind::AfdmSweep))
            throw FieldError("schemes", "FBMC has a real-field receiver and is not supported in BER runs");
        if (s == Scheme::ODDM && p.oddm_pulse == OddmPulse::DDOP && 2 * p.oddm_q >= gm)
            throw FieldError("waveform.oddm.q", "2Q must be smaller than frame.grid_m");
        if (s == Scheme::ODDM && p.oddm_pulse == OddmPulse::DDOP && e.kind == ExperimentKind::Ber)
            throw FieldError("waveform.oddm.pulse", "the DDOP bundle has no prefix; use rect for BER runs");
    }
    if (e.kind == ExperimentKind::Ber) {
        if (e.snr_db.empty()) throw FieldError("sim.snr_db", "at least one SNR is required");
        const double max_delay = std::llround(e.channel.profile.max_delay() * bw);
        if (prefix < max_delay)
            throw FieldError("frame.prefix", "prefix (" + std::to_string(prefix) + ") is shorter than the channel delay spread (" +
                                                 std::to_string((long long)max_delay) + " samples)");
    }
    for (Scheme s : e.schemes) wrap("schemes", [&] { return bundle_for(e, s).symbols(); });
    return e;
}

const FrameGeometry& geometry_for(const Experiment& e, Scheme s)
{
    return is_two_dimensional(s) ? e.geometry_2d : e.geometry_1d;
}

WaveformBundle bundle_for(const Experiment& e, Scheme s) { return build_waveform(s, geometry_for(e, s), e.params); }

}  // namespace mcwf::bench
