#include "mcwf/bench/config.hpp"
#include "mcwf/bench/presets.hpp"
#include "mcwf/bench/runner.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace mcwf;
using namespace mcwf::bench;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kRuntime = 3 };

// A path that exists is read as a config file; otherwise the argument names a preset.
Config load_config(const std::string& source, const std::string& preset, const std::vector<std::string>& sets)
{
    Config cfg;
    if (!preset.empty())
        cfg = Config::from_preset(preset);
    else if (std::filesystem::exists(source))
        cfg = Config::load(source);
    else if (!source.empty())
        cfg = Config::from_preset(source);
    else
        throw ConfigError("expected a config file or --preset");
    for (const auto& s : sets) cfg.assign(s);
    return cfg;
}

int report_config_error(const std::exception& e)
{
    std::cerr << "mcwf: invalid configuration: " << e.what() << '\n';
    return kInvalid;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multicarrier waveform benchmark"};
    app.require_subcommand(1);

    std::string source, preset, out_dir;
    std::vector<std::string> sets;
    int threads = 0;
    bool quiet = false;

    auto* run = app.add_subcommand("run", "run an experiment and write CSV files plus manifest.json");
    run->add_option("config", source, "config file or preset name");
    run->add_option("--preset", preset, "start from a named preset");
    run->add_option("--set", sets, "override a key, e.g. --set sim.trials=50")->take_all();
    run->add_option("--threads", threads, "worker threads (overrides sim.threads)")->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "output directory (default: output.dir, $MCWF_OUTPUT_DIR, mcwf-results)");
    run->add_flag("-q,--quiet", quiet, "do not list written files");

    auto* validate = app.add_subcommand("validate", "check a config without running it");
    validate->add_option("config", source, "config file or preset name");
    validate->add_option("--preset", preset, "start from a named preset");
    validate->add_option("--set", sets, "override a key")->take_all();

    bool show_config = false;
    auto* list = app.add_subcommand("presets", "list the built-in presets");
    list->add_flag("--config", show_config, "print every preset's full configuration");

    bool dump = false;
    auto* keys = app.add_subcommand("keys", "list configuration keys and defaults");
    keys->add_flag("--dump", dump, "print the default configuration in file format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    if (*list) {
        for (const auto& p : presets()) {
            std::cout << p.name << "\n  " << p.anchor << '\n';
            if (!p.desk_delta.empty()) std::cout << "  desk: " << p.desk_delta << '\n';
            if (show_config)
                for (const auto& [k, v] : p.entries) std::cout << "    " << k << " = " << v << '\n';
        }
        return kOk;
    }
    if (*keys) {
        const Config d;
        if (dump) {
            std::cout << d.serialize();
        } else {
            for (const auto& k : config_keys()) std::cout << k << " (default: " << d.get(k) << ")\n";
        }
        return kOk;
    }

    Config cfg;
    try {
        cfg = load_config(source, preset, sets);
        resolve(cfg);
    } catch (const Error& e) {
        return report_config_error(e);
    }

    if (*validate) {
        std::cout << "ok\n";
        return kOk;
    }

    try {
        RunOptions opt;
        opt.output_dir = out_dir;
        opt.threads = threads;
        const RunSummary s = bench::run(cfg, opt);
        if (!quiet) {
            for (const auto& f : s.files) std::cout << (std::filesystem::path(s.output_dir) / f).string() << '\n';
            std::cout << (std::filesystem::path(s.output_dir) / "manifest.json").string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "mcwf: run failed: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}
