#include "mcwf/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcwf {

namespace {

int gray_to_binary(int g)
{
    int b = 0;
    for (; g; g >>= 1) b ^= g;
    return b;
}

EqualizerOutput finish(CVector soft, const Constellation& c)
{
    EqualizerOutput out;
    out.hard = c.slice(soft);
    out.soft = std::move(soft);
    return out;
}

}  // namespace

Constellation::Constellation(int order) : order_(order)
{
    if (order != 4 && order != 16 && order != 64 && order != 128)
        throw DomainError("constellation order must be 4, 16, 64 or 128");
    bits_ = 0;
    while ((1 << bits_) < order) ++bits_;
    points_.resize(order);

    if (order == 128) {
        int label = 0;
        for (int row = 0; row < 12; ++row)
            for (int col = 0; col < 12; ++col) {
                const int x = 2 * col - 11, y = 11 - 2 * row;
                if (std::abs(x) > 7 && std::abs(y) > 7) continue;
                points_(label++) = cdouble(x, y);
            }
    } else {
        side_ = 1 << (bits_ / 2);
        const int half = bits_ / 2;
        level_to_gray_.resize(side_);
        for (int level = 0; level < side_; ++level) level_to_gray_[level] = level ^ (level >> 1);
        for (int w = 0; w < order; ++w) {
            const int li = gray_to_binary(w >> half);
            const int lq = gray_to_binary(w & (side_ - 1));
            points_(w) = cdouble(2 * li - (side_ - 1), 2 * lq - (side_ - 1));
        }
    }
    const double energy = points_.squaredNorm() / double(order);
    scale_ = 1.0 / std::sqrt(energy);
    points_ *= scale_;
}

CVector Constellation::map_bits(const Bits& bits) const
{
    if (bits.size() % std::size_t(bits_) != 0) throw ShapeError("bit count is not a multiple of bits per symbol");
    const Eigen::Index n = Eigen::Index(bits.size() / bits_);
    CVector out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        int w = 0;
        for (int b = 0; b < bits_; ++b) w = (w << 1) | (bits[std::size_t(k * bits_ + b)] & 1);
        out(k) = points_(w);
    }
    return out;
}

int Constellation::nearest(cdouble z) const
{
    if (side_ > 0) {
        auto axis = [&](double v) {
            int level = int(std::lround((v / scale_ + double(side_ - 1)) / 2.0));
            return level_to_gray_[std::clamp(level, 0, side_ - 1)];
        };
        return (axis(z.real()) << (bits_ / 2)) | axis(z.imag());
    }
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < order_; ++i) {
        const double d = std::norm(z - points_(i));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::vector<int> Constellation::slice(const CVector& symbols) const
{
    std::vector<int> out(std::size_t(symbols.size()));
    for (Eigen::Index k = 0; k < symbols.size(); ++k) out[std::size_t(k)] = nearest(symbols(k));
    return out;
}

Bits Constellation::label_bits(const std::vector<int>& labels) const
{
    Bits out(labels.size() * std::size_t(bits_));
    for (std::size_t k = 0; k < labels.size(); ++k)
        for (int b = 0; b < bits_; ++b) out[k * bits_ + b] = std::uint8_t((labels[k] >> (bits_ - 1 - b)) & 1);
    return out;
}

Bits Constellation::demap_hard(const CVector& symbols) const { return label_bits(slice(symbols)); }

EqualizerOutput single_tap_equalize(const CVector& y, const CMatrix& h, double noise_var, const Constellation& c,
                                    double diag_tolerance)
{
    if (h.rows() != h.cols() || h.rows() != y.size()) throw ShapeError("single-tap: H must be square and match y");
    if (noise_var < 0) throw DomainError("noise variance must be >= 0");
    const double peak = h.cwiseAbs().maxCoeff();
    CMatrix off = h;
    off.diagonal().setZero();
    if (off.size() > 0 && off.cwiseAbs().maxCoeff() > diag_tolerance * peak)
        throw ContractViolation("single-tap equalizer needs a diagonal channel");
    CVector x(y.size());
    for (Eigen::Index k = 0; k < y.size(); ++k) {
        const cdouble hk = h(k, k);
        const double den = std::norm(hk) + noise_var;
        if (den == 0.0) throw SolverError("single-tap: zero channel tap with zero noise");
        x(k) = std::conj(hk) * y(k) / den;
    }
    return finish(std::move(x), c);
}

MmseSolver::MmseSolver(const CMatrix& h) : h_(h)
{
    if (h.rows() != h.cols()) throw ShapeError("MMSE: H must be square");
    gram_ = h.adjoint() * h;
}

CVector MmseSolver::solve(const CVector& y, double noise_var) const
{
    if (y.size() != h_.rows()) throw ShapeError("MMSE: y length must match H");
    if (noise_var < 0) throw DomainError("noise variance must be >= 0");
    if (noise_var == 0.0) {
        Eigen::ColPivHouseholderQR<CMatrix> qr(h_);
        if (qr.rank() < h_.cols()) throw SolverError("MMSE: H is rank deficient at zero noise");
        return qr.solve(y);
    }
    CMatrix a = gram_;
    a.diagonal().array() += noise_var;
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) throw SolverError("MMSE: factorization failed");
    return llt.solve(h_.adjoint() * y);
}

EqualizerOutput mmse_equalize(const CVector& y, const CMatrix& h, double noise_var, const Constellation& c)
{
    return finish(MmseSolver(h).solve(y, noise_var), c);
}

std::vector<int> ml_oracle(const CVector& y, const CMatrix& h, const Constellation& c)
{
    const Eigen::Index n = h.cols();
    if (n > 8) throw DomainError("ml_oracle: at most 8 symbols");
    if (h.rows() != y.size()) throw ShapeError("ml_oracle: H rows must match y");
    const double combos = std::pow(double(c.order()), double(n));
    if (combos > double(1 << 24)) throw DomainError("ml_oracle: search space too large");

    std::vector<int> idx(std::size_t(n), 0), best(std::size_t(n), 0);
    double best_d = std::numeric_limits<double>::infinity();
    CVector x(n);
    for (;;) {
        for (Eigen::Index k = 0; k < n; ++k) x(k) = c.points()(idx[std::size_t(k)]);
        const double d = (y - h * x).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = idx;
        }
        Eigen::Index pos = n - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == c.order()) idx[std::size_t(pos--)] = 0;
        if (pos < 0) break;
    }
    return best;
}

}  // namespace mcwf
