#include "mcwf/bench/runner.hpp"
#include "mcwf/bench/presets.hpp"
#include "mcwf/digest.hpp"
#include "mcwf/rng.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

namespace mcwf::bench {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Context {
    const Experiment& e;
    fs::path dir;
    RunSummary& out;
    nlohmann::json derived = nlohmann::json::object();

    void csv(const std::string& name, const Row& header, const std::vector<Row>& rows)
    {
        write_csv((dir / name).string(), header, rows);
        out.files.push_back(name);
    }
};

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

void run_ber_experiment(Context& c)
{
    const Experiment& e = c.e;
    BerSetup setup;
    setup.channel = e.channel;
    setup.detector = e.detector;
    setup.snr_db = e.snr_db;
    setup.trials = e.trials;
    setup.seed = e.seed;
    setup.threads = e.threads;
    setup.modulation_order = e.modulation_order;
    for (Scheme s : e.schemes) {
        const WaveformBundle b = bundle_for(e, s);
        const BerResult r = run_ber(b, setup);
        std::vector<Row> rows;
        for (const auto& p : r.points) rows.push_back({scheme_name(s), num(p.snr_db), num(p.bits), num(p.bit_errors), num(p.ber)});
        c.csv("ber_" + file_label(s) + ".csv", {"scheme", "snr_db", "bits", "bit_errors", "ber"}, rows);
        c.derived["schemes"][scheme_name(s)] = {{"stream_digest", r.stream_digest}, {"c1", b.c1}, {"c2", b.c2},
                                                {"prefix", b.prefix_length()}};
        c.out.ber[scheme_name(s)] = r;
    }
}

void run_papr_experiment(Context& c)
{
    const Experiment& e = c.e;
    std::vector<Row> rows, summary;
    auto record = [&](const std::string& name, const std::vector<double>& samples) {
        for (const auto& p : empirical_ccdf(samples)) rows.push_back({name, num(p.papr_db), num(p.ccdf)});
        const double at = papr_at_ccdf(samples, e.ccdf_level);
        summary.push_back({name, num(e.ccdf_level), num(at), num(std::uint64_t(samples.size()))});
        c.out.papr[name] = samples;
        c.out.papr_at_level[name] = at;
    };
    for (Scheme s : e.schemes) {
        const WaveformBundle b = bundle_for(e, s);
        record(scheme_name(s), papr_samples(b, e.trials, e.seed, e.modulation_order, e.threads));
    }
    if (e.papr_ddam) record("DDAM", papr_samples_ddam(e.ddam, e.trials, e.seed, e.threads));
    c.csv("papr.csv", {"scheme", "papr_db", "ccdf"}, rows);
    c.csv("papr_summary.csv", {"scheme", "ccdf_level", "papr_db", "samples"}, summary);
    if (e.papr_ddam)
        c.derived["ddam"] = {{"antennas", e.ddam.antennas}, {"paths", e.ddam.paths}, {"max_delay", e.ddam.max_delay},
                             {"symbols", e.ddam.symbols},
                             {"beamformer", e.ddam.beamformer == Beamformer::ZF ? "zf" : "mrt"},
                             {"samples", "per-antenna PAPR pooled over frames"}};
}

void run_af_experiment(Context& c)
{
    const Experiment& e = c.e;
    std::vector<Row> wide, lng;
    for (Scheme s : e.schemes) {
        const WaveformBundle b = bundle_for(e, s);
        const CVector x = CVector::Ones(b.symbols());
        const CVector sig = e.af_include_prefix ? b.transmit(x) : b.modulate(x);
        const AfMetrics m = af_metrics(sig, e.af_convention, e.af_doppler_oversampling);
        const std::string name = scheme_name(s);
        wide.push_back({name, num(m.delay_width), num(m.doppler_width), num(m.pslr_delay), num(m.islr_delay),
                        num(m.pslr_doppler), num(m.islr_doppler)});
        lng.push_back({name, "delay", "width_3db", num(m.delay_width)});
        lng.push_back({name, "delay", "pslr_db", num(m.pslr_delay)});
        lng.push_back({name, "delay", "islr_db", num(m.islr_delay)});
        lng.push_back({name, "doppler", "width_3db", num(m.doppler_width)});
        lng.push_back({name, "doppler", "pslr_db", num(m.pslr_doppler)});
        lng.push_back({name, "doppler", "islr_db", num(m.islr_doppler)});
        c.derived["schemes"][name] = {{"signal_length", sig.size()}, {"delay_no_null", m.delay_no_null},
                                      {"doppler_no_null", m.doppler_no_null}, {"c1", b.c1}, {"c2", b.c2}};
        c.out.af[name] = m;
    }
    c.csv("af_metrics.csv",
          {"scheme", "delay_width", "doppler_width", "pslr_delay_db", "islr_delay_db", "pslr_doppler_db", "islr_doppler_db"},
          wide);
    c.csv("af_long.csv", {"scheme", "axis", "metric", "value"}, lng);
    c.derived["af"] = {{"mainlobe_rule", kMainlobeRule},
                       {"db_floor", kDbFloor},
                       {"delay_width_unit", "fraction of the evaluated signal length"},
                       {"doppler_width_unit", "cycles per sample"},
                       {"doppler_oversampling", e.af_doppler_oversampling}};
}

void run_chanmat_experiment(Context& c)
{
    const Experiment& e = c.e;
    std::vector<Row> sparsity;
    const PathSet ps = draw_path_set(e.channel, derive_seed(e.seed, 0));
    for (Scheme s : e.schemes) {
        const WaveformBundle b = bundle_for(e, s);
        for (ChannelModelKind kind : e.chanmat_kinds) {
            const ChannelRealization real = discretize(ps, b.sample_rate_hz, b.geometry.subcarrier_spacing_hz, kind);
            const CMatrix h = effective_channel(b, real);
            const double peak = h.cwiseAbs().maxCoeff();
            const double cut = e.chanmat_threshold * peak;
            std::vector<Row> rows;
            for (Eigen::Index i = 0; i < h.rows(); ++i)
                for (Eigen::Index j = 0; j < h.cols(); ++j) {
                    const double v = std::abs(h(i, j));
                    if (v >= cut && v > 0) rows.push_back({std::to_string(i), std::to_string(j), num(v)});
                }
            c.csv("chanmat_" + file_label(s) + "_" + to_string(kind) + ".csv", {"row", "col", "magnitude"}, rows);
            const SparsityMetrics sm = sparsity_metrics(h, e.chanmat_threshold > 0 ? e.chanmat_threshold : 1e-12);
            sparsity.push_back({scheme_name(s), to_string(kind), num(sm.support_fraction),
                                std::to_string(sm.max_row_support)});
        }
    }
    c.csv("sparsity.csv", {"scheme", "channel", "support_fraction", "max_row_support"}, sparsity);
}

void run_sweep_experiment(Context& c)
{
    const Experiment& e = c.e;
    BerSetup setup;
    setup.channel = e.channel;
    setup.detector = e.detector;
    setup.snr_db = {e.sweep_snr_db};
    setup.trials = e.trials;
    setup.seed = e.seed;
    setup.threads = e.threads;
    setup.modulation_order = e.modulation_order;
    const double top = 1.0 / (2.0 * double(e.geometry_1d.M));
    std::vector<Row> rows;
    for (int i = 0; i < e.sweep_points; ++i)
        for (int j = 0; j < e.sweep_points; ++j) {
            WaveformParams p = e.params;
            p.afdm_c1 = top * double(i) / double(e.sweep_points - 1);
            p.afdm_c2 = top * double(j) / double(e.sweep_points - 1);
            const WaveformBundle b = build_waveform(Scheme::AFDM, e.geometry_1d, p);
            const BerPoint pt = run_ber(b, setup).points.front();
            rows.push_back({num(p.afdm_c1), num(p.afdm_c2), num(pt.snr_db), num(pt.bits), num(pt.bit_errors), num(pt.ber)});
        }
    c.csv("afdm_sweep.csv", {"c1", "c2", "snr_db", "bits", "bit_errors", "ber"}, rows);
    c.derived["sweep"] = {{"c1_range", {0.0, top}}, {"c2_range", {0.0, top}}, {"points", e.sweep_points}};
}

void run_overhead_experiment(Context& c)
{
    const Experiment& e = c.e;
    const FrameGeometry& g1 = e.geometry_1d;
    const FrameGeometry& g2 = e.geometry_2d;
    const PilotOverhead afdm = pilot_overhead(PilotScheme::AFDM, e.overhead_l_max, e.overhead_alpha_max, e.overhead_xi, g1.M);
    const PilotOverhead otfs =
        pilot_overhead(PilotScheme::OTFS, e.overhead_l_max, e.overhead_alpha_max, e.overhead_xi, g2.M * g2.N);
    c.out.pilots["AFDM"] = afdm;
    c.out.pilots["OTFS"] = otfs;
    std::vector<Row> rows = {
        {"pilot_count", "AFDM", num(std::uint64_t(afdm.count))},
        {"pilot_fraction", "AFDM", num(afdm.fraction)},
        {"pilot_count", "OTFS", num(std::uint64_t(otfs.count))},
        {"pilot_fraction", "OTFS", num(otfs.fraction)},
    };
    for (Scheme s : e.schemes) {
        const WaveformBundle b = bundle_for(e, s);
        const double ts = double(b.core_length()) / b.sample_rate_hz;
        const double tcp = double(b.prefix_length()) / b.sample_rate_hz;
        const double k = s == Scheme::AFDM ? afdm.fraction : (s == Scheme::MCOTFS || s == Scheme::ZAKOTFS) ? otfs.fraction : 0.0;
        rows.push_back({"cp_overhead", scheme_name(s), num(cp_overhead(tcp, ts))});
        rows.push_back({"spectral_efficiency", scheme_name(s),
                        num(spectral_efficiency(std::min(k, 0.999999), e.modulation_order, double(b.symbols()), ts, tcp,
                                                b.sample_rate_hz))});
    }
    c.csv("overhead.csv", {"quantity", "scheme", "value"}, rows);
}

std::string pulse_description(const Experiment& e)
{
    std::string s = "rectangular sample pulses with cyclic prefix; AFDM chirp-periodic prefix";
    s += "; FBMC Hermite prototype, overlap " + std::to_string(e.params.fbmc_overlap) + ", no prefix";
    if (e.params.oddm_pulse == OddmPulse::DDOP)
        s += "; ODDM DDOP with root-raised-cosine rolloff " + format_number(e.params.oddm_rolloff) + ", Q " +
             std::to_string(e.params.oddm_q) + ", oversampling " + std::to_string(e.params.oddm_oversampling);
    else
        s += "; ODDM rectangular pulse";
    return s;
}

}  // namespace

std::string default_output_dir()
{
    if (const char* env = std::getenv("MCWF_OUTPUT_DIR"); env && *env) return env;
    return "mcwf-results";
}

std::string file_label(Scheme s) { return scheme_name(s); }

RunSummary run(const Config& cfg, const RunOptions& opt)
{
    Experiment e = resolve(cfg);
    if (opt.threads > 0) e.threads = opt.threads;
    RunSummary out;
    out.output_dir = !opt.output_dir.empty() ? opt.output_dir : !e.output_dir.empty() ? e.output_dir : default_output_dir();
    const fs::path dir(out.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + out.output_dir + "': " + ec.message());

    Context c{e, dir, out};
    switch (e.kind) {
    case ExperimentKind::Ber: run_ber_experiment(c); break;
    case ExperimentKind::Papr: run_papr_experiment(c); break;
    case ExperimentKind::Af: run_af_experiment(c); break;
    case ExperimentKind::Chanmat: run_chanmat_experiment(c); break;
    case ExperimentKind::AfdmSweep: run_sweep_experiment(c); break;
    case ExperimentKind::Overhead: run_overhead_experiment(c); break;
    }
    std::sort(out.files.begin(), out.files.end());

    nlohmann::json config = nlohmann::json::object();
    for (const auto& [k, v] : cfg.entries())
        if (k != "sim.threads" && k != "output.dir") config[k] = v;

    nlohmann::json& d = c.derived;
    d["sample_rate_hz"] = e.geometry_1d.sample_rate_hz();
    d["geometry_1d"] = {{"M", e.geometry_1d.M}, {"subcarrier_spacing_hz", e.geometry_1d.subcarrier_spacing_hz},
                        {"prefix", e.geometry_1d.prefix_len}};
    d["geometry_2d"] = {{"M", e.geometry_2d.M}, {"N", e.geometry_2d.N},
                        {"subcarrier_spacing_hz", e.geometry_2d.subcarrier_spacing_hz}, {"prefix", e.geometry_2d.prefix_len}};
    d["max_doppler_hz"] = e.channel.max_doppler_hz;
    d["max_doppler_normalized_1d"] = e.channel.max_doppler_hz / e.geometry_1d.subcarrier_spacing_hz;
    nlohmann::json delays = nlohmann::json::array(), dopplers = nlohmann::json::array();
    for (const auto& p : e.channel.profile.paths) {
        delays.push_back(p.delay_s * e.geometry_1d.sample_rate_hz());
        dopplers.push_back(p.doppler_hz / e.geometry_1d.subcarrier_spacing_hz);
    }
    d["channel_profile"] = {{"name", e.channel.profile.name}, {"delays_samples", delays}, {"dopplers_normalized_1d", dopplers}};
    if (!e.preset.empty()) {
        const Preset& p = find_preset(e.preset);
        d["preset_anchor"] = p.anchor;
        d["desk_scale"] = p.desk_delta.empty() ? "full size" : p.desk_delta;
    }

    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& f : out.files) outputs.push_back({{"file", f}, {"sha256", sha256_file((dir / f).string())}});

    out.manifest = {
        {"schema", kManifestSchema},
        {"tool", {{"name", "mcwf"}, {"version", kVersion}}},
        {"experiment", to_string(e.kind)},
        {"preset", e.preset},
        {"config", config},
        {"derived", d},
        {"conventions",
         {{"snr", "SNR = Es/N0 with unit-energy symbols and unitary modulation; noise variance per sample 10^(-SNR/10)"},
          {"delay_rounding", "nearest sample (round half away from zero)"},
          {"pulses", pulse_description(e)},
          {"af", to_string(e.af_convention) + (e.af_include_prefix ? ", prefixed frame" : ", core frame without prefix") +
                     ", mainlobe bounded by " + kMainlobeRule},
          {"papr_prefix", "excluded; statistic over the core frame"},
          {"detector", to_string(e.detector) + ", perfect channel knowledge, hard decisions, no coding"}}},
        {"outputs", outputs},
    };
    write_json((dir / "manifest.json").string(), out.manifest);
    return out;
}

}  // namespace mcwf::bench
