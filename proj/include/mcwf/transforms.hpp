#pragma once

#include "mcwf/rng.hpp"
#include "mcwf/types.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace mcwf {

using Index = Eigen::Index;

enum class WhtOrder { Sequency, Hadamard };
enum class ZakDirection { Forward, Inverse };
enum class PermutationKind { Oddm, Shuffle };

namespace detail {

inline void require_size(Index m, const char* what)
{
    if (m < 1) throw InvalidSize(std::string(what) + ": size must be >= 1");
}

template <typename Real>
std::complex<Real> cis(Real phase)
{
    return {std::cos(phase), std::sin(phase)};
}

// e^{-j 2 pi c l^2}; l^2 reduced in long double to keep the phase accurate for large l
template <typename Real>
std::complex<Real> chirp_phase(Real c, Index l)
{
    long double ph = -2.0L * 3.14159265358979323846L * static_cast<long double>(c) *
                     static_cast<long double>(l) * static_cast<long double>(l);
    return {static_cast<Real>(std::cos(ph)), static_cast<Real>(std::sin(ph))};
}

}  // namespace detail

// Forward unitary DFT: F(k,l) = e^{-j2pi kl/M}/sqrt(M).
template <typename Real = double>
ComplexMatrix<Real> dft_matrix(Index m)
{
    detail::require_size(m, "dft_matrix");
    ComplexMatrix<Real> f(m, m);
    const Real scale = Real(1) / std::sqrt(Real(m));
    for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
            // reduce kl mod M before forming the angle
            Index r = (k * l) % m;
            f(k, l) = scale * detail::cis<Real>(-Real(2) * Real(kPi) * Real(r) / Real(m));
        }
    return f;
}

// Diagonal of Lambda_c = diag(e^{-j2pi c l^2}).
template <typename Real = double>
ComplexVector<Real> chirp_diagonal(Index m, Real c)
{
    detail::require_size(m, "chirp_diagonal");
    ComplexVector<Real> d(m);
    for (Index l = 0; l < m; ++l) d(l) = detail::chirp_phase<Real>(c, l);
    return d;
}

// Forward DAFT A = Lambda_c2 F Lambda_c1. The AFDM modulator is A^H.
template <typename Real = double>
ComplexMatrix<Real> daft_matrix(Index m, Real c1, Real c2)
{
    ComplexVector<Real> l1 = chirp_diagonal<Real>(m, c1);
    ComplexVector<Real> l2 = chirp_diagonal<Real>(m, c2);
    return l2.asDiagonal() * dft_matrix<Real>(m) * l1.asDiagonal();
}

// Discrete fractional Fourier kernel with rotation alpha = p pi / 2 and
// symmetric sampling du = Ts = sqrt(2 pi |sin a| / M).
template <typename Real = double>
ComplexMatrix<Real> dfrft_matrix(Index m, Real p)
{
    detail::require_size(m, "dfrft_matrix");
    const Real alpha = p * Real(kPi) / Real(2);
    const Real s = std::sin(alpha);
    const Real c = std::cos(alpha);
    if (std::abs(s) < Real(1e-12))
        throw DomainError("dfrft_matrix: rotation angle is a multiple of pi (cot undefined)");
    const Real cot = c / s;
    const Real step2 = Real(2) * Real(kPi) * std::abs(s) / Real(m);  // du^2 = Ts^2
    const std::complex<Real> lead = std::sqrt(std::complex<Real>(s, -c));

    ComplexVector<Real> chirp(m);
    for (Index l = 0; l < m; ++l) chirp(l) = detail::cis<Real>(Real(0.5) * cot * Real(l * l) * step2);
    ComplexMatrix<Real> k = dft_matrix<Real>(m);
    return lead * (chirp.asDiagonal() * k * chirp.asDiagonal());
}

template <typename Real>
struct DfntFactors {
    ComplexVector<Real> theta1;
    ComplexVector<Real> theta2;
    ComplexMatrix<Real> phi;  // Theta2 F Theta1
};

// Discrete Fresnel transform factored as Phi = Theta2 F Theta1.
template <typename Real = double>
DfntFactors<Real> dfnt_matrix(Index m)
{
    detail::require_size(m, "dfnt_matrix");
    DfntFactors<Real> out;
    out.theta1.resize(m);
    out.theta2.resize(m);
    const Real pi = Real(kPi);
    const Real mm = Real(m);
    const std::complex<Real> lead = detail::cis<Real>(-pi / Real(4));
    for (Index k = 0; k < m; ++k) {
        const Real kk = Real(k);
        if (m % 2 == 0) {
            out.theta1(k) = lead * detail::cis<Real>(pi * kk * kk / mm);
            out.theta2(k) = detail::cis<Real>(pi * kk * kk / mm);
        } else {
            out.theta1(k) = lead * detail::cis<Real>(pi / (Real(4) * mm) + pi * (kk * kk + kk) / mm);
            out.theta2(k) = detail::cis<Real>(pi * (kk * kk - kk) / mm);
        }
    }
    out.phi = out.theta2.asDiagonal() * dft_matrix<Real>(m) * out.theta1.asDiagonal();
    return out;
}

inline bool is_power_of_two(Index n) { return n >= 1 && (n & (n - 1)) == 0; }

inline int sign_changes(const Eigen::Ref<const Eigen::VectorXd>& row)
{
    int count = 0;
    for (Index i = 1; i < row.size(); ++i)
        if ((row(i) > 0) != (row(i - 1) > 0)) ++count;
    return count;
}

// Orthonormal Walsh-Hadamard matrix, sequency ordered by default.
template <typename Real = double>
ComplexMatrix<Real> wht_matrix(Index n, WhtOrder order = WhtOrder::Sequency)
{
    if (!is_power_of_two(n)) throw InvalidSize("wht_matrix: size must be a power of two");
    Eigen::MatrixXd h = Eigen::MatrixXd::Ones(1, 1);
    while (h.rows() < n) {
        const Index r = h.rows();
        Eigen::MatrixXd next(2 * r, 2 * r);
        next << h, h, h, -h;
        h.swap(next);
    }
    if (order == WhtOrder::Sequency) {
        Eigen::MatrixXd sorted(n, n);
        for (Index i = 0; i < n; ++i) sorted.row(sign_changes(h.row(i).transpose())) = h.row(i);
        h.swap(sorted);
    }
    return (h / std::sqrt(double(n))).cast<std::complex<Real>>();
}

// Fisher-Yates over a SplitMix64 stream keyed on seed.
inline std::vector<Index> random_interleaver(Index m, std::uint64_t seed)
{
    detail::require_size(m, "random_interleaver");
    std::vector<Index> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), Index{0});
    SplitMix64 rng(seed);
    for (Index i = m - 1; i > 0; --i) {
        Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

// Pi(l, perm[l]) = 1, so (Pi x)(l) = x(perm[l]).
template <typename Real = double>
ComplexMatrix<Real> permutation_matrix(const std::vector<Index>& perm)
{
    const Index m = static_cast<Index>(perm.size());
    ComplexMatrix<Real> p = ComplexMatrix<Real>::Zero(m, m);
    for (Index l = 0; l < m; ++l) p(l, perm[l]) = Real(1);
    return p;
}

// ODDM: row k has its one at column (k mod M) N + floor(k/M).
// Shuffle: row m N + n has its one at column n M + m.
template <typename Real = double>
ComplexMatrix<Real> structured_permutation(PermutationKind kind, Index m, Index n)
{
    detail::require_size(m, "structured_permutation");
    detail::require_size(n, "structured_permutation");
    std::vector<Index> perm(static_cast<std::size_t>(m * n));
    for (Index row = 0; row < m * n; ++row) {
        if (kind == PermutationKind::Oddm)
            perm[row] = (row % m) * n + row / m;
        else
            perm[row] = (row % n) * m + row / n;
    }
    return permutation_matrix<Real>(perm);
}

// Discrete Zak transform pair, delay index fastest: x[l + kM].
template <typename Real = double>
ComplexVector<Real> dzt(const ComplexVector<Real>& x, Index m, Index n, ZakDirection dir)
{
    detail::require_size(m, "dzt");
    detail::require_size(n, "dzt");
    if (x.size() != m * n) throw ShapeError("dzt: input length must equal M*N");
    const Real scale = Real(1) / std::sqrt(Real(n));
    const Real sign = dir == ZakDirection::Inverse ? Real(1) : Real(-1);
    ComplexVector<Real> out = ComplexVector<Real>::Zero(m * n);
    for (Index l = 0; l < m; ++l)
        for (Index a = 0; a < n; ++a) {
            std::complex<Real> acc(0);
            for (Index b = 0; b < n; ++b) {
                Index r = (a * b) % n;
                acc += x(l + b * m) * detail::cis<Real>(sign * Real(2) * Real(kPi) * Real(r) / Real(n));
            }
            out(l + a * m) = scale * acc;
        }
    return out;
}

template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    using Plain = typename A::PlainObject;
    Plain out = Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
    return out;
}

}  // namespace mcwf
