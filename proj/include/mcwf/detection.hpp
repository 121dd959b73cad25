#pragma once

#include "mcwf/types.hpp"

#include <cstdint>
#include <vector>

namespace mcwf {

using Bits = std::vector<std::uint8_t>;

// Square orders 4/16/64 use per-axis Gray labels; 128 is the 12x12 cross with
// plain row-major labels.
class Constellation {
public:
    explicit Constellation(int order);

    int order() const { return order_; }
    int bits_per_symbol() const { return bits_; }
    const CVector& points() const { return points_; }

    // points()(label) carries bit word `label` (MSB first).
    CVector map_bits(const Bits& bits) const;
    Bits demap_hard(const CVector& symbols) const;
    std::vector<int> slice(const CVector& symbols) const;
    Bits label_bits(const std::vector<int>& labels) const;
    int nearest(cdouble z) const;

private:
    int order_;
    int bits_;
    int side_ = 0;  // square orders only
    double scale_ = 1.0;
    CVector points_;
    std::vector<int> level_to_gray_;  // square orders: axis level -> Gray label
};

struct EqualizerOutput {
    CVector soft;
    std::vector<int> hard;
    RVector post_snr;  // optional diagnostics, empty when not computed
};

EqualizerOutput single_tap_equalize(const CVector& y, const CMatrix& h, double noise_var,
                                    const Constellation& c, double diag_tolerance = 1e-10);
EqualizerOutput mmse_equalize(const CVector& y, const CMatrix& h, double noise_var, const Constellation& c);

// Caches H^H for repeated solves against one channel at several noise levels.
class MmseSolver {
public:
    explicit MmseSolver(const CMatrix& h);
    CVector solve(const CVector& y, double noise_var) const;

private:
    CMatrix h_;
    CMatrix gram_;
};

std::vector<int> ml_oracle(const CVector& y, const CMatrix& h, const Constellation& c);

}  // namespace mcwf
