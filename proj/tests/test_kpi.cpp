#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcwf/kpi.hpp"
#include "mcwf/rng.hpp"

#include <numeric>

using namespace mcwf;
using Eigen::Index;

namespace {

CVector random_vector(Index n, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    CVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v;
}

}  // namespace

TEST_CASE("PAPR of simple signals")
{
    CHECK(papr_db(CVector::Constant(8, cdouble(0.3, -0.4))) == doctest::Approx(0.0).epsilon(1e-12));
    CVector s(2);
    s << 1.0, 0.0;
    CHECK(papr_db(s) == doctest::Approx(10.0 * std::log10(2.0)));
    const CVector x = random_vector(64, 2);
    CHECK(papr_db(x * cdouble(0.0, 3.0)) == doctest::Approx(papr_db(x)).epsilon(1e-12));
    CHECK_THROWS_AS(papr_db(CVector::Zero(4)), DomainError);
    CHECK_THROWS_AS(papr_db(CVector()), ShapeError);
}

TEST_CASE("PAPR samples are reproducible and thread independent")
{
    const WaveformBundle b = build_waveform(Scheme::OFDM, FrameGeometry{64, 1, 1.0, 0});
    const auto a = papr_samples(b, 50, 7, 16, 1);
    CHECK(a == papr_samples(b, 50, 7, 16, 4));
    CHECK(a != papr_samples(b, 50, 8, 16, 1));
    // SCM on a square constellation: peak over mean of the symbol energies
    const WaveformBundle scm = build_waveform(Scheme::SCM, FrameGeometry{64, 1, 1.0, 0});
    for (double v : papr_samples(scm, 20, 1, 16)) CHECK(v <= 10.0 * std::log10(1.8 / 0.2) + 1e-9);
}

TEST_CASE("empirical CCDF")
{
    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 0.0);
    std::reverse(v.begin(), v.end());
    const auto c = empirical_ccdf(v);
    CHECK(c.size() == 90);
    CHECK(c.front().papr_db == 0.0);
    CHECK(c.front().ccdf == doctest::Approx(0.99));
    CHECK(c.back().ccdf == doctest::Approx(0.10));
    CHECK(papr_at_ccdf(v, 0.01) == 98.0);
    CHECK(papr_at_ccdf(v, 0.5) == 49.0);
    // ties collapse to one point
    std::vector<double> ties(200, 1.0);
    std::fill(ties.begin() + 100, ties.end(), 2.0);
    const auto t = empirical_ccdf(ties);
    REQUIRE(t.size() == 1);
    CHECK(t[0].papr_db == 1.0);
    CHECK(t[0].ccdf == 0.5);
    CHECK_THROWS_AS(papr_at_ccdf(v, 1.0), DomainError);
    CHECK_THROWS_AS(empirical_ccdf({}), ShapeError);
}

TEST_CASE("ambiguity function basics")
{
    const CVector a = random_vector(32, 1);
    CHECK(std::abs(ambiguity(a, a, 0, 0.0, AfConvention::Aperiodic) - a.squaredNorm()) <= 1e-12);

    // cyclic shift by d with Doppler nu0 moves the cross-AF peak to (d, nu0)
    const Index d = 5;
    const double nu0 = 3.0 / 32.0;
    CVector b(32);
    for (Index n = 0; n < 32; ++n) b(n) = a(((n - d) % 32 + 32) % 32) * std::polar(1.0, 2.0 * kPi * nu0 * double(n));
    CHECK(std::abs(ambiguity(b, a, d, nu0, AfConvention::Cyclic)) == doctest::Approx(a.squaredNorm()));

    // bilinearity: A_{x1 + x2} = A_11 + A_12 + A_21 + A_22
    const CVector c = random_vector(32, 2);
    for (Index lag : {-7, 0, 3})
        for (double nu : {-0.2, 0.0, 0.31}) {
            const auto A = [&](const CVector& p, const CVector& q) { return ambiguity(p, q, lag, nu, AfConvention::Aperiodic); };
            CHECK(std::abs(A(a + c, a + c) - (A(a, a) + A(a, c) + A(c, a) + A(c, c))) <= 1e-10);
        }
    CHECK_THROWS_AS(ambiguity(a, CVector(3), 0, 0.0, AfConvention::Cyclic), ShapeError);
    CHECK(parse_af_convention("periodic") == AfConvention::Cyclic);
    CHECK_THROWS_AS(parse_af_convention("circular"), LookupError);
}

TEST_CASE("ambiguity grid")
{
    const CVector a = random_vector(16, 3);
    const AfGrid g = ambiguity_grid(a, a, {-2, -1, 0, 1, 2}, {-0.25, 0.0, 0.25}, AfConvention::Aperiodic, 1e3);
    CHECK(g.magnitude.maxCoeff() == doctest::Approx(1.0));
    CHECK(g.magnitude(2, 1) == doctest::Approx(1.0));
    CHECK(g.peak_raw == doctest::Approx(a.squaredNorm()));
    CHECK(g.delay_s.front() == doctest::Approx(-2e-3));
    CHECK(g.doppler_hz.back() == doctest::Approx(250.0));
    CHECK_THROWS_AS(ambiguity_grid(a, a, {1, 0}, {0.0}, AfConvention::Aperiodic, 1.0), DomainError);
    CHECK_THROWS_AS(ambiguity_grid(a, a, {0, 16}, {0.0}, AfConvention::Aperiodic, 1.0), DomainError);
}

TEST_CASE("cut metrics")
{
    // impulse: no sidelobe energy, floored at -400 dB
    RVector imp = RVector::Zero(9);
    imp(4) = 1.0;
    const CutMetrics m = af_cut_metrics(imp, 1.0);
    CHECK(m.pslr_db == kDbFloor);
    CHECK(m.islr_db == kDbFloor);
    CHECK(m.mainlobe_lo == 3);
    CHECK(m.mainlobe_hi == 5);

    RVector tri(7);
    tri << 0.0, 0.5, 1.0, 0.5, 0.0, 0.25, 0.0;
    const CutMetrics t = af_cut_metrics(tri, 0.5);
    CHECK(t.mainlobe_lo == 0);
    CHECK(t.mainlobe_hi == 4);
    CHECK(t.pslr_db == doctest::Approx(20.0 * std::log10(0.25)));
    const double x = 1.0 - (1.0 / std::sqrt(2.0) - 0.5) / 0.5;  // one-sided 3 dB offset in bins
    CHECK(t.width_3db == doctest::Approx(2.0 * x * 0.5));

    RVector mono(4);
    mono << 1.0, 0.8, 0.6, 0.4;
    CHECK(af_cut_metrics(mono, 1.0).no_null);
    CHECK_THROWS_AS(af_cut_metrics(RVector::Zero(3), 1.0), DomainError);
}

TEST_CASE("AF metrics invariances")
{
    const CVector s = random_vector(64, 5);
    const AfMetrics base = af_metrics(s, AfConvention::Cyclic, 2);
    const AfMetrics scaled = af_metrics(s * cdouble(0.0, -2.5), AfConvention::Cyclic, 2);
    CHECK(scaled.pslr_delay == doctest::Approx(base.pslr_delay));
    CHECK(scaled.doppler_width == doctest::Approx(base.doppler_width));
    CVector rolled(64);
    for (Index n = 0; n < 64; ++n) rolled(n) = s((n + 11) % 64);
    CHECK(af_metrics(rolled, AfConvention::Cyclic, 2).pslr_delay == doctest::Approx(base.pslr_delay));

    CHECK(base.boundary_rule == std::string("first-local-minima"));
    CHECK_THROWS_AS(af_metrics(s, AfConvention::Cyclic, 0), DomainError);
}

TEST_CASE("overhead formulas")
{
    CHECK(cp_overhead(1.0, 4.0) == doctest::Approx(0.2));
    CHECK(cp_overhead(0.0, 4.0) == 0.0);
    CHECK_THROWS_AS(cp_overhead(-1.0, 4.0), DomainError);

    const double m = 1024, b = 3.072e6, ts = m / b;
    CHECK(spectral_efficiency(0.0, 4, m, ts, 0.0, b) == doctest::Approx(2.0));
    CHECK(spectral_efficiency(0.2, 4, m, ts, 0.0, b) == doctest::Approx(1.6));
    CHECK(spectral_efficiency(0.2, 4, m, ts, ts / 9.0, b) == doctest::Approx(1.44));
    CHECK_THROWS_AS(spectral_efficiency(1.0, 4, m, ts, 0.0, b), DomainError);

    CHECK(pilot_overhead(PilotScheme::AFDM, 0, 0, 0, 16).count == 1);
    CHECK(pilot_overhead(PilotScheme::OTFS, 0, 0, 0, 16).count == 1);
    CHECK(pilot_overhead(PilotScheme::AFDM, 3, 1, 1, 0).count == 39);
    CHECK(pilot_overhead(PilotScheme::OTFS, 3, 1, 1, 0).count == 63);
    const PilotOverhead p = pilot_overhead(PilotScheme::OTFS, 8, 4, 0, 1024);
    CHECK(p.count == 289);
    CHECK(p.fraction == doctest::Approx(289.0 / 1024.0));
    CHECK_THROWS_AS(pilot_overhead(PilotScheme::AFDM, -1, 0, 0, 1), DomainError);
}

TEST_CASE("BER driver")
{
    BerSetup s;
    s.trials = 4;
    s.snr_db = {300.0};
    const WaveformBundle ofdm = build_waveform(Scheme::OFDM, FrameGeometry{32, 1, 15e3, 4});
    const WaveformBundle afdm = build_waveform(Scheme::AFDM, FrameGeometry{32, 1, 15e3, 4});
    const BerResult r = run_ber(ofdm, s);
    CHECK(r.points[0].bit_errors == 0);
    CHECK(r.points[0].bits == 4u * 64u);
    // the bit and channel streams do not depend on the waveform
    CHECK(run_ber(afdm, s).stream_digest == r.stream_digest);

    s.channel.profile = channel_preset("EPA");
    s.snr_db = {0.0, 10.0};
    s.trials = 6;
    const BerResult one = run_ber(ofdm, s);
    s.threads = 3;
    const BerResult three = run_ber(ofdm, s);
    CHECK(one.points[0].bit_errors == three.points[0].bit_errors);
    CHECK(one.points[1].bit_errors == three.points[1].bit_errors);
    CHECK(one.points[0].ber > one.points[1].ber);

    s.trials = 0;
    CHECK_THROWS_AS(run_ber(ofdm, s), ConfigError);
    s.trials = 1;
    CHECK_THROWS_AS(run_ber(build_waveform(Scheme::FBMC, FrameGeometry{8, 4, 15e3, 0}), s), ConfigError);
    CHECK(parse_detector("single-tap") == Detector::SingleTap);
}

TEST_CASE("equal-power Rayleigh keeps profile delays")
{
    ChannelConfig c;
    c.profile = channel_preset("EVA");
    c.gains = GainModel::RayleighUniform;
    c.doppler = DopplerModel::Profile;
    const PathSet a = draw_path_set(c, 3);
    CHECK(a.size() == c.profile.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.paths[i].delay_s == c.profile.paths[i].delay_s);
    c.gains = GainModel::Profile;
    const PathSet p = draw_path_set(c, 3);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.paths[i].gain == c.profile.paths[i].gain);
}
