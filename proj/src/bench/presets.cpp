#include "mcwf/bench/presets.hpp"
#include "mcwf/types.hpp"

namespace mcwf::bench {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

Entries with(Entries base, const Entries& overrides)
{
    for (const auto& [k, v] : overrides) {
        bool found = false;
        for (auto& [bk, bv] : base)
            if (bk == k) {
                bv = v;
                found = true;
            }
        if (!found) base.emplace_back(k, v);
    }
    return base;
}

const Entries kBer = {
    {"experiment", "ber"},
    {"schemes", "SCM,OFDM,OCDM,AFDM,OTFS,OTSM"},
    {"frame.m", "1024"},
    {"frame.grid_m", "32"},
    {"frame.grid_n", "32"},
    {"frame.bandwidth_hz", "3072000"},
    {"frame.prefix", "auto"},
    {"channel.preset", "EVA"},
    {"channel.kind", "ddc"},
    {"channel.carrier_hz", "24000000000"},
    {"channel.speed_kmh", "540"},
    {"channel.doppler", "jakes"},
    {"channel.gains", "rayleigh-uniform"},
    {"sim.snr_db", "0,5,10,15,20"},
    {"sim.trials", "1000"},
    {"sim.modulation", "4"},
    {"sim.detector", "mmse"},
};
const Entries kBerDesk = {{"frame.m", "256"}, {"frame.grid_m", "16"}, {"frame.grid_n", "16"}, {"sim.trials", "200"}};

const Entries kPapr = {
    {"experiment", "papr"},
    {"schemes", "OFDM,OCDM,AFDM,OTFS"},
    {"frame.m", "512"},
    {"frame.grid_m", "32"},
    {"frame.grid_n", "16"},
    {"frame.bandwidth_hz", "128000000"},
    {"channel.carrier_hz", "28000000000"},
    {"sim.modulation", "128"},
    {"sim.trials", "10000"},
    {"papr.include_ddam", "true"},
    {"papr.ddam.antennas", "256"},
    {"papr.ddam.paths", "5"},
    {"papr.ddam.max_delay", "40"},
    {"papr.ddam.beamformer", "zf"},
    {"papr.ccdf_level", "0.01"},
};
const Entries kPaprDesk = {{"papr.ddam.antennas", "64"}, {"sim.trials", "2000"}};

// 1/(2M) chirp pair reproduces the AFDM row; the core frame is evaluated.
const Entries kAf = {
    {"experiment", "af"},
    {"schemes", "SCM,OFDM,OCDM,OTFS,AFDM"},
    {"frame.m", "256"},
    {"frame.grid_m", "16"},
    {"frame.grid_n", "16"},
    {"frame.bandwidth_hz", "3072000"},
    {"frame.prefix", "32"},
    {"waveform.afdm.c1", "0.005859375"},
    {"waveform.afdm.c2", "0.001953125"},
    {"af.convention", "aperiodic"},
    {"af.include_prefix", "false"},
    {"af.doppler_oversampling", "8"},
};
const Entries kAfDesk = {{"af.doppler_oversampling", "4"}};

const Entries kChanmat = {
    {"experiment", "chanmat"},
    {"schemes", "SCM,OFDM,AFDM,OTFS"},
    {"frame.m", "128"},
    {"frame.grid_m", "16"},
    {"frame.grid_n", "8"},
    {"frame.bandwidth_hz", "1536000"},
    {"frame.prefix", "auto"},
    {"channel.preset", "FIG16"},
    {"channel.carrier_hz", "24000000000"},
    {"channel.doppler", "profile"},
    {"channel.gains", "profile"},
    {"chanmat.kinds", "tdc,fdc,ddc"},
    {"chanmat.threshold", "1e-9"},
};
const Entries kChanmatDesk = {{"frame.m", "64"}, {"frame.grid_m", "8"}, {"frame.grid_n", "8"}, {"frame.bandwidth_hz", "768000"}};

const Entries kSweep = {
    {"experiment", "afdm-sweep"},
    {"schemes", "AFDM"},
    {"frame.m", "128"},
    {"frame.bandwidth_hz", "1536000"},
    {"frame.prefix", "auto"},
    {"channel.preset", "FIG16"},
    {"channel.carrier_hz", "24000000000"},
    {"channel.doppler", "profile"},
    {"channel.gains", "rayleigh"},
    {"sim.modulation", "4"},
    {"sim.detector", "mmse"},
    {"sim.trials", "200"},
    {"sweep.points", "16"},
    {"sweep.snr_db", "15"},
};
const Entries kSweepDesk = {{"sim.trials", "10"}};

const Entries kOverhead = {
    {"experiment", "overhead"},
    {"schemes", "OFDM,AFDM,OTFS"},
    {"frame.m", "1024"},
    {"frame.grid_m", "32"},
    {"frame.grid_n", "32"},
    {"frame.bandwidth_hz", "3072000"},
    {"frame.prefix", "auto"},
    {"channel.preset", "EVA"},
    {"overhead.l_max", "8"},
    {"overhead.alpha_max", "4"},
    {"overhead.xi", "0"},
};
const Entries kOverheadDesk = {{"frame.m", "256"}, {"frame.grid_m", "16"}, {"frame.grid_n", "16"}};

}  // namespace

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> list = {
        {"tab5-ber", "BER vs SNR, EVA at 540 km/h, fc 24 GHz, B 3.072 MHz, 4-QAM, MMSE, M=1024 and 32x32, 1000 realizations",
         "", kBer},
        {"tab5-ber-desk", "tab5-ber at desk scale", "M=256 (1D), 16x16 (2D), 200 realizations", with(kBer, kBerDesk)},
        {"fig17-desk", "BER curves for SCM, OFDM, OCDM, AFDM, OTFS, OTSM (same as tab5-ber-desk)",
         "M=256 (1D), 16x16 (2D), 200 realizations", with(kBer, kBerDesk)},
        {"tab6-papr", "PAPR CCDF, M=512, 32x16, 128-QAM, DDAM with 256 antennas and 5 paths, 10000 frames", "", kPapr},
        {"tab6-papr-desk", "tab6-papr at desk scale", "64 DDAM antennas, 2000 frames", with(kPapr, kPaprDesk)},
        {"tab8-unit", "AF sidelobe metrics of all-one frames, M=256, 16x16, AFDM c1=3/(2M) c2=1/(2M), aperiodic core frame",
         "", kAf},
        {"tab8-unit-desk", "tab8-unit at desk scale", "Doppler cut oversampling 4 instead of 8", with(kAf, kAfDesk)},
        {"fig16-chanmat", "effective channel magnitudes under TDC, FDC and DDC, M=128, 16x8, five-path channel", "",
         kChanmat},
        {"fig16-chanmat-desk", "fig16-chanmat at desk scale", "M=64, 8x8, B halved", with(kChanmat, kChanmatDesk)},
        {"fig21-sweep", "AFDM BER over a 16x16 (c1, c2) grid spanning [0, 1/(2M)], QPSK, M=128, 15 dB (grid range is a chosen default)",
         "", kSweep},
        {"fig21-sweep-desk", "fig21-sweep at desk scale", "10 realizations per grid point", with(kSweep, kSweepDesk)},
        {"overhead", "pilot overhead (l_max=8, alpha_max=4), CP overhead and spectral efficiency, M=1024 and 32x32", "",
         kOverhead},
        {"overhead-desk", "overhead at desk scale", "M=256, 16x16", with(kOverhead, kOverheadDesk)},
    };
    return list;
}

const Preset& find_preset(const std::string& name)
{
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw LookupError("unknown preset '" + name + "'");
}

}  // namespace mcwf::bench
