#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcwf/ddam.hpp"
#include "mcwf/rng.hpp"

using namespace mcwf;
using Eigen::Index;

namespace {

ChannelRealization taps(std::vector<std::pair<Index, double>> delays_dopplers, double fs = 1e6)
{
    ChannelRealization r;
    r.sample_rate_hz = fs;
    for (auto [d, nu] : delays_dopplers) {
        Tap t;
        t.delay = d;
        t.doppler_hz = nu;
        r.taps.push_back(t);
    }
    return r;
}

CVector symbols(Index k, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    CVector x(k);
    for (Index i = 0; i < k; ++i) x(i) = rng.complex_normal();
    return x;
}

DdamConfig config(Index antennas, std::size_t paths, Beamformer bf, std::uint64_t seed)
{
    DdamConfig c;
    c.antennas = antennas;
    c.beamformer = bf;
    c.steering = random_steering(antennas, paths, seed);
    return c;
}

}  // namespace

TEST_CASE("steering statistics")
{
    const auto h = random_steering(256, 3, 5);
    CHECK(h.size() == 3);
    for (const auto& v : h) CHECK(v.squaredNorm() == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("ZF beamformers null the other paths")
{
    const ChannelRealization r = taps({{0, 300.0}, {3, -120.0}, {7, 50.0}, {11, 0.0}});
    const DdamConfig c = config(16, 4, Beamformer::ZF, 9);
    const auto f = ddam_beamformers(c, r);
    double leak = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(f[i].squaredNorm() == doctest::Approx(0.25).epsilon(1e-12));
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) leak = std::max(leak, std::abs(c.steering[j].dot(f[i])));
    }
    CHECK(leak <= 1e-10);
}

TEST_CASE("single path reduces to rank-one beamforming")
{
    const ChannelRealization r = taps({{2, 0.0}});
    for (Beamformer bf : {Beamformer::ZF, Beamformer::MRT}) {
        const DdamConfig c = config(8, 1, bf, 4);
        const auto f = ddam_beamformers(c, r);
        CHECK(std::abs(std::abs(c.steering[0].dot(f[0])) - c.steering[0].norm()) <= 1e-12);
    }
}

TEST_CASE("ZF precoding yields a single equivalent tap")
{
    const ChannelRealization r = taps({{0, 400.0}, {5, -250.0}, {9, 90.0}, {14, 10.0}});
    const DdamConfig c = config(16, 4, Beamformer::ZF, 21);
    const Index k = 64;
    const CVector x = symbols(k, 2);
    const CMatrix s = ddam_precode(x, c, r);
    CHECK(s.rows() == 16);
    CHECK(s.cols() == k + 14);

    const CVector rx = apply_miso_channel(s, c, r, 0);
    const cdouble g = ddam_composite_gain(c, r);
    CHECK(std::abs(g) > 0.1);
    // energy outside the common tap at tau_max
    CHECK(rx.head(14).norm() <= 1e-9 * rx.norm());
    CHECK(rx.tail(14).norm() <= 1e-9 * rx.norm());
    CHECK((ddam_receive(rx, 14, g, k) - x).cwiseAbs().maxCoeff() <= 1e-9);

    CHECK(apply_miso_channel(ddam_precode(CVector::Zero(k), c, r), c, r, 0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("MRT with orthogonal steering vectors behaves like ZF")
{
    const ChannelRealization r = taps({{0, 0.0}, {4, 0.0}});
    DdamConfig c;
    c.antennas = 4;
    c.beamformer = Beamformer::MRT;
    c.steering = {CVector::Unit(4, 0), CVector::Unit(4, 2) * cdouble(0.0, 2.0)};
    const CVector x = symbols(16, 3);
    const CVector rx = apply_miso_channel(ddam_precode(x, c, r), c, r, 0);
    CHECK((ddam_receive(rx, 4, ddam_composite_gain(c, r), 16) - x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("errors")
{
    const ChannelRealization r = taps({{0, 0.0}, {1, 0.0}, {2, 0.0}});
    CHECK_THROWS_AS(ddam_beamformers(config(2, 3, Beamformer::ZF, 1), r), BeamformerError);
    CHECK_THROWS_AS(ddam_beamformers(config(4, 2, Beamformer::ZF, 1), r), ConfigError);
    DdamConfig dup = config(4, 3, Beamformer::ZF, 1);
    dup.steering[2] = dup.steering[0];
    CHECK_THROWS_AS(ddam_beamformers(dup, r), BeamformerError);
    DdamConfig two = config(4, 3, Beamformer::ZF, 1);
    two.streams = 2;
    CHECK_THROWS_AS(ddam_beamformers(two, r), ConfigError);
    CHECK_THROWS_AS(ddam_receive(CVector::Ones(4), 2, 1.0, 4), ShapeError);
    CHECK_THROWS_AS(ddam_receive(CVector::Ones(4), 0, 0.0, 4), DomainError);
}
