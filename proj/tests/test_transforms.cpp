#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcwf/transforms.hpp"

#include <random>

using namespace mcwf;

namespace {

CVector random_vector(Index n, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    CVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v;
}

double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("dft_matrix")
{
    CHECK(dft_matrix(1)(0, 0) == cdouble(1, 0));

    CMatrix f2 = dft_matrix(2);
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix expect(2, 2);
    expect << r, r, r, -r;
    CHECK(max_abs(f2 - expect) < 1e-15);

    CHECK(unitarity_error(dft_matrix(8)) <= 1e-12);
    CHECK_THROWS_AS(dft_matrix(0), InvalidSize);
}

TEST_CASE("daft_matrix")
{
    for (Index m : {1, 5, 16, 64}) CHECK(max_abs(daft_matrix(m, 0.0, 0.0) - dft_matrix(m)) <= 1e-14);
    CHECK(unitarity_error(daft_matrix(16, 0.01, 0.3)) <= 1e-10);

    // c1 = c2 = 1/(2M) differs from the DFnT only by unit-modulus diagonals
    const Index m = 8;
    const double c = 1.0 / (2.0 * m);
    CMatrix a = daft_matrix(m, c, c);
    CMatrix phi = dfnt_matrix(m).phi;
    CHECK(max_abs(CMatrix(a.cwiseAbs().cast<cdouble>() - phi.cwiseAbs().cast<cdouble>())) <= 1e-14);
    CVector dl(m), dr(m);
    for (Index k = 0; k < m; ++k) dl(k) = a(k, 0) / phi(k, 0);
    for (Index l = 0; l < m; ++l) dr(l) = a(0, l) / (phi(0, l) * dl(0));
    CMatrix rebuilt = dl.asDiagonal() * phi * dr.asDiagonal();
    CHECK(max_abs(rebuilt - a) <= 1e-12);
    CHECK(dl.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dr.cwiseAbs().minCoeff() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dfrft_matrix")
{
    for (Index m : {1, 7, 16}) CHECK(max_abs(dfrft_matrix(m, 1.0) - dft_matrix(m)) <= 1e-12);
    CHECK(unitarity_error(dfrft_matrix(16, 0.5)) <= 1e-8);
    CMatrix one = dfrft_matrix(1, 0.37);
    CHECK(std::abs(one(0, 0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(dfrft_matrix(8, 0.0), DomainError);
    CHECK_THROWS_AS(dfrft_matrix(8, 2.0), DomainError);
}

TEST_CASE("dfnt_matrix")
{
    for (Index m : {3, 4, 8, 9}) {
        auto f = dfnt_matrix(m);
        CMatrix direct = f.theta2.asDiagonal() * dft_matrix(m) * f.theta1.asDiagonal();
        CHECK(max_abs(f.phi - direct) <= 1e-14);
        CHECK(unitarity_error(f.phi) <= 1e-12);
        CHECK(f.theta1.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
        CHECK(f.theta2.cwiseAbs().minCoeff() == doctest::Approx(1.0));
    }
    // even branch spot check: e^{-j pi/4} e^{j pi k^2/4} at k=1 is 1
    auto f4 = dfnt_matrix(4);
    CHECK(std::abs(f4.theta1(1) - cdouble(1, 0)) < 1e-15);
    // Phi entries reduce to e^{-j pi/4} e^{j pi (k-l)^2/M} / sqrt(M) for even M
    const Index m = 6;
    auto f6 = dfnt_matrix(m);
    for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
            double d = double(k - l);
            cdouble expect = std::polar(1.0 / std::sqrt(double(m)), -kPi / 4 + kPi * d * d / m);
            CHECK(std::abs(f6.phi(k, l) - expect) < 1e-12);
        }
}

TEST_CASE("wht_matrix")
{
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix w2 = wht_matrix(2);
    CMatrix expect(2, 2);
    expect << r, r, r, -r;
    CHECK(max_abs(w2 - expect) < 1e-15);

    CMatrix w4 = wht_matrix(4);
    for (Index i = 0; i < 4; ++i) CHECK(sign_changes(w4.row(i).real().transpose()) == i);

    CMatrix w8 = wht_matrix(8);
    CHECK(max_abs(w8 * w8.transpose() - CMatrix::Identity(8, 8)) <= 1e-12);
    CHECK(max_abs(w8 * w8 - CMatrix::Identity(8, 8)) <= 1e-12);
    CHECK(max_abs(w8.imag().cast<cdouble>()) == 0.0);

    CMatrix h8 = wht_matrix(8, WhtOrder::Hadamard);
    CHECK(max_abs(h8 * h8 - CMatrix::Identity(8, 8)) <= 1e-12);
    CHECK(sign_changes(h8.row(1).real().transpose()) == 7);

    CHECK_THROWS_AS(wht_matrix(6), InvalidSize);
    CHECK_THROWS_AS(wht_matrix(0), InvalidSize);
}

TEST_CASE("random_interleaver")
{
    for (std::uint64_t seed : {0ull, 1ull, 12345ull}) {
        auto p = random_interleaver(37, seed);
        auto sorted = p;
        std::sort(sorted.begin(), sorted.end());
        for (Index i = 0; i < 37; ++i) CHECK(sorted[i] == i);
        CHECK(random_interleaver(37, seed) == p);
    }
    CHECK(random_interleaver(64, 1) != random_interleaver(64, 2));
    CMatrix pm = permutation_matrix(random_interleaver(16, 9));
    CHECK(max_abs(pm * pm.transpose() - CMatrix::Identity(16, 16)) == 0.0);
}

TEST_CASE("dzt")
{
    CVector delta = CVector::Zero(4);
    delta(0) = 1.0;
    CVector s = dzt(delta, 2, 2, ZakDirection::Inverse);
    const double r = 1.0 / std::sqrt(2.0);
    CVector expect(4);
    expect << r, 0, r, 0;
    CHECK((s - expect).cwiseAbs().maxCoeff() < 1e-15);

    CVector x = random_vector(16, 3);
    CVector back = dzt(dzt(x, 4, 4, ZakDirection::Inverse), 4, 4, ZakDirection::Forward);
    CHECK((back - x).cwiseAbs().maxCoeff() <= 1e-12);

    CVector y = random_vector(5, 4);
    CHECK((dzt(y, 5, 1, ZakDirection::Forward) - y).cwiseAbs().maxCoeff() == 0.0);
    CHECK((dzt(y, 5, 1, ZakDirection::Inverse) - y).cwiseAbs().maxCoeff() == 0.0);

    // IDZT equals (F_N^H kron I_M)
    const Index m = 4, n = 8;
    CMatrix op = kron(CMatrix(dft_matrix(n).adjoint()), CMatrix(CMatrix::Identity(m, m)));
    CVector z = random_vector(m * n, 5);
    CHECK((dzt(z, m, n, ZakDirection::Inverse) - op * z).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(dzt(z, 3, 3, ZakDirection::Forward), ShapeError);
}

TEST_CASE("structured_permutation")
{
    CMatrix p = structured_permutation(PermutationKind::Oddm, 2, 2);
    const Index target[4] = {0, 2, 1, 3};
    for (Index k = 0; k < 4; ++k) CHECK(p(k, target[k]) == cdouble(1, 0));

    CHECK(max_abs(structured_permutation(PermutationKind::Shuffle, 1, 5) - CMatrix::Identity(5, 5)) == 0.0);

    for (auto kind : {PermutationKind::Oddm, PermutationKind::Shuffle}) {
        CMatrix q = structured_permutation(kind, 3, 2);
        CHECK(max_abs(q * q.transpose() - CMatrix::Identity(6, 6)) == 0.0);
    }

    // shuffle rows are the stacked blocks I_N kron e_m^T
    const Index m = 3, n = 2;
    CMatrix sh = structured_permutation(PermutationKind::Shuffle, m, n);
    for (Index mm = 0; mm < m; ++mm) {
        CMatrix e = CMatrix::Zero(1, m);
        e(0, mm) = 1.0;
        CMatrix block = kron(CMatrix(CMatrix::Identity(n, n)), e);
        CHECK(max_abs(sh.middleRows(mm * n, n) - block) == 0.0);
    }
}

TEST_CASE("unitarity property over random sizes")
{
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> size(1, 64);
    std::uniform_real_distribution<double> coef(-0.5, 0.5);
    for (int trial = 0; trial < 12; ++trial) {
        Index m = size(gen);
        CHECK(unitarity_error(dft_matrix(m)) <= 1e-10);
        CHECK(unitarity_error(daft_matrix(m, coef(gen), coef(gen))) <= 1e-10);
        CHECK(unitarity_error(dfrft_matrix(m, 0.3 + coef(gen))) <= 1e-10);
        CHECK(unitarity_error(dfnt_matrix(m).phi) <= 1e-10);
    }
    CHECK(unitarity_error(dft_matrix(1024)) <= 1e-10);
    CHECK(unitarity_error(wht_matrix(1024)) <= 1e-10);
}

TEST_CASE("float scalar instantiation")
{
    auto f = dft_matrix<float>(16);
    CHECK(unitarity_error(f) <= 1e-5f);
    auto a = daft_matrix<float>(16, 0.1f, 0.2f);
    CHECK(unitarity_error(a) <= 1e-5f);
}
