#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcwf/bench/config.hpp"
#include "mcwf/bench/emit.hpp"
#include "mcwf/bench/presets.hpp"
#include "mcwf/bench/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mcwf;
using namespace mcwf::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("mcwf_test_bench_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string field_of(const Config& cfg)
{
    try {
        resolve(cfg);
    } catch (const FieldError& e) {
        return e.field();
    }
    return "";
}

Config tiny_ber()
{
    Config c;
    c.set("experiment", "ber");
    c.set("schemes", "OFDM,AFDM,OTFS");
    c.set("frame.m", "16");
    c.set("frame.grid_m", "4");
    c.set("frame.grid_n", "4");
    c.set("channel.preset", "EPA");
    c.set("sim.trials", "3");
    c.set("sim.snr_db", "0,10");
    return c;
}

}  // namespace

TEST_CASE("config parsing and round trip")
{
    Config c = Config::parse("# comment\nexperiment = papr\nsim.trials = 7\nschemes = OFDM, OCDM\n");
    CHECK(c.get("experiment") == "papr");
    CHECK(c.integer("sim.trials") == 7);
    CHECK(c.list("schemes") == std::vector<std::string>{"OFDM", "OCDM"});
    CHECK(Config::parse(c.serialize()).entries() == c.entries());

    // a preset line applies first, other lines win wherever they appear
    const Config p = Config::parse("sim.trials = 3\npreset = tab5-ber-desk\n");
    CHECK(p.integer("sim.trials") == 3);
    CHECK(p.get("channel.preset") == "EVA");

    CHECK_THROWS_AS(Config::parse("no.such.key = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("frame.m\n"), ConfigError);
    CHECK_THROWS_AS(c.assign("sim.seed"), ConfigError);
    CHECK_THROWS_AS(c.number("experiment"), ConfigError);
    CHECK_THROWS_AS(Config::from_preset("nope"), LookupError);
    c.assign("af.include_prefix=true");
    CHECK(c.flag("af.include_prefix"));
    CHECK(config_keys().size() == Config().entries().size());
}

TEST_CASE("validation names the offending key")
{
    Config c = tiny_ber();
    c.set("sim.trials", "-1");
    try {
        resolve(c);
        FAIL("expected FieldError");
    } catch (const FieldError& e) {
        CHECK(e.field() == "sim.trials");
        CHECK(std::string(e.what()).find("trials") != std::string::npos);
    }

    Config otsm = tiny_ber();
    otsm.set("schemes", "OTSM");
    otsm.set("frame.grid_n", "6");
    CHECK(field_of(otsm) == "frame.grid_n");

    Config fbmc = tiny_ber();
    fbmc.set("schemes", "FBMC");
    CHECK(field_of(fbmc) == "schemes");

    Config prefix = tiny_ber();
    prefix.set("channel.preset", "ETU");
    prefix.set("frame.prefix", "1");
    CHECK(field_of(prefix) == "frame.prefix");

    Config zf;
    zf.set("experiment", "papr");
    zf.set("papr.include_ddam", "true");
    zf.set("papr.ddam.antennas", "4");
    zf.set("papr.ddam.paths", "5");
    CHECK(field_of(zf) == "papr.ddam.antennas");

    Config kind;
    kind.set("experiment", "wibble");
    CHECK(field_of(kind) == "experiment");
}

TEST_CASE("presets")
{
    bool fig21 = false, fig21_desk = false;
    for (const Preset& p : presets()) {
        CAPTURE(p.name);
        CHECK_FALSE(p.anchor.empty());
        const Experiment e = resolve(Config::from_preset(p.name));
        CHECK_FALSE(e.schemes.empty());
        CHECK(e.preset == p.name);
        if (p.name.size() > 5 && p.name.compare(p.name.size() - 5, 5, "-desk") == 0) CHECK_FALSE(p.desk_delta.empty());
        fig21 |= p.name == "fig21-sweep";
        fig21_desk |= p.name == "fig21-sweep-desk";
    }
    CHECK(fig21);
    CHECK(fig21_desk);
    CHECK(find_preset("tab5-ber").name == "tab5-ber");

    const Experiment desk = resolve(Config::from_preset("tab5-ber-desk"));
    CHECK(desk.kind == ExperimentKind::Ber);
    CHECK(desk.geometry_1d.M == 256);
    CHECK(desk.geometry_2d.M * desk.geometry_2d.N == 256);
    // auto prefix covers the delay spread at the preset sample rate
    CHECK(double(desk.geometry_1d.prefix_len) >= desk.channel.profile.max_delay() * desk.geometry_1d.sample_rate_hz() - 0.5);
}

TEST_CASE("number formatting and CSV")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-HUGE_VAL) == "-inf");
    CHECK(format_number(42LL) == "42");
    const fs::path d = scratch("csv");
    fs::create_directories(d);
    write_csv((d / "t.csv").string(), {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    CHECK(slurp(d / "t.csv") == "a,b\n1,2\n3,4\n");
    CHECK_THROWS_AS(write_csv((d / "u.csv").string(), {"a", "b"}, {{"1"}}), ShapeError);
}

TEST_CASE("BER run: files, manifest and determinism")
{
    const fs::path d1 = scratch("ber1"), d2 = scratch("ber2");
    const RunSummary a = run(tiny_ber(), {d1.string(), 1});
    const RunSummary b = run(tiny_ber(), {d2.string(), 3});
    CHECK(a.files == b.files);
    CHECK(a.ber.size() == 3);
    for (const auto& f : a.files) CHECK(slurp(d1 / f) == slurp(d2 / f));

    const std::string csv = slurp(d1 / "ber_OFDM.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "scheme,snr_db,bits,bit_errors,ber");
    CHECK(fs::exists(d1 / "ber_MC-OTFS.csv"));

    CHECK(validate_manifest(a.manifest).empty());
    const auto disk = nlohmann::json::parse(slurp(d1 / "manifest.json"));
    CHECK(validate_manifest(disk).empty());
    CHECK(disk["schema"] == kManifestSchema);
    CHECK(disk["config"]["sim.trials"] == "3");
    CHECK_FALSE(disk["config"].contains("sim.threads"));

    nlohmann::json broken = disk;
    broken.erase("conventions");
    broken["outputs"][0]["sha256"] = "abc";
    CHECK(validate_manifest(broken).size() >= 2);
}

TEST_CASE("other experiment kinds run")
{
    Config af;
    af.set("experiment", "af");
    af.set("schemes", "SCM,OFDM,AFDM");
    af.set("frame.m", "32");
    af.set("af.doppler_oversampling", "2");
    const RunSummary s = run(af, {scratch("af").string(), 1});
    CHECK(s.af.size() == 3);
    CHECK(fs::exists(fs::path(s.output_dir) / "af_metrics.csv"));

    const RunSummary o = run(Config::from_preset("overhead-desk"), {scratch("ovh").string(), 1});
    CHECK(o.pilots.size() == 2);

    Config cm = Config::from_preset("fig16-chanmat-desk");
    const RunSummary c = run(cm, {scratch("cm").string(), 1});
    CHECK(fs::exists(fs::path(c.output_dir) / "sparsity.csv"));

    Config sw = Config::from_preset("fig21-sweep-desk");
    sw.set("sim.trials", "1");
    sw.set("sweep.points", "3");
    const RunSummary w = run(sw, {scratch("sweep").string(), 2});
    const std::string csv = slurp(fs::path(w.output_dir) / "afdm_sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= 4);
}
