#pragma once

#include "mcwf/kpi.hpp"
#include "mcwf/waveforms.hpp"

#include <map>
#include <string>
#include <vector>

namespace mcwf::bench {

enum class ExperimentKind { Ber, Papr, Af, Chanmat, AfdmSweep, Overhead };

std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment(const std::string& name);

// Validation failure tied to one configuration key.
class FieldError : public ConfigError {
public:
    FieldError(std::string field, const std::string& what)
        : ConfigError(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Flat key/value configuration with dotted keys. Every key has a registered
// default; setting an unknown key is an error.
class Config {
public:
    Config();

    // "key = value" lines, '#' comments. A "preset" line loads that preset
    // first; the remaining lines override it regardless of their position.
    static Config parse(const std::string& text);
    static Config load(const std::string& path);
    static Config from_preset(const std::string& name);

    void set(const std::string& key, const std::string& value);
    // "key=value"
    void assign(const std::string& assignment);
    const std::string& get(const std::string& key) const;
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double number(const std::string& key) const;
    long long integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::vector<std::string> list(const std::string& key) const;
    std::vector<double> numbers(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }
    // Round-trips through parse().
    std::string serialize() const;

private:
    std::map<std::string, std::string> values_;
};

std::vector<std::string> config_keys();

// Typed, validated view of a Config.
struct Experiment {
    ExperimentKind kind = ExperimentKind::Ber;
    std::string preset;
    std::vector<Scheme> schemes;
    FrameGeometry geometry_1d, geometry_2d;
    WaveformParams params;

    ChannelConfig channel;
    double carrier_hz = 0.0;

    std::vector<double> snr_db;
    int trials = 1;
    std::uint64_t seed = 1;
    int threads = 1;
    int modulation_order = 4;
    Detector detector = Detector::MMSE;

    AfConvention af_convention = AfConvention::Aperiodic;
    bool af_include_prefix = false;
    int af_doppler_oversampling = 8;

    bool papr_ddam = false;
    DdamPaprSetup ddam;
    double ccdf_level = 1e-2;

    std::vector<ChannelModelKind> chanmat_kinds;
    double chanmat_threshold = 1e-9;

    int sweep_points = 16;
    double sweep_snr_db = 15.0;

    long long overhead_l_max = 0, overhead_alpha_max = 0, overhead_xi = 0;

    std::string output_dir;
};

// Throws FieldError naming the offending key.
Experiment resolve(const Config& cfg);

const FrameGeometry& geometry_for(const Experiment& e, Scheme s);
WaveformBundle bundle_for(const Experiment& e, Scheme s);

}  // namespace mcwf::bench
