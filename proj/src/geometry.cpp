#include "mirrorcut/geometry.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mirrorcut {

namespace {
// n * den must stay inside int64 for every mode index we can address.
constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 31;
} // namespace

CavityGeometry::CavityGeometry(double length, std::int64_t num, std::int64_t den)
    : length_(length), num_(num), den_(den) {
    if (!std::isfinite(length) || length <= 0.0) {
        throw std::invalid_argument("cavity length must be positive and finite");
    }
    if (num <= 0 || den <= 0 || num >= den) {
        throw std::invalid_argument("mirror fraction p/q must satisfy 0 < p < q, got " +
                                    std::to_string(num) + "/" + std::to_string(den));
    }
    const std::int64_t g = std::gcd(num, den);
    num_ /= g;
    den_ /= g;
    if (den_ >= kMaxDenominator) {
        throw std::invalid_argument("mirror fraction denominator too large");
    }
    left_ = length_ * static_cast<double>(num_) / static_cast<double>(den_);
    right_ = length_ - left_;
}

TruncationConfig::TruncationConfig(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1) {
        throw std::invalid_argument("cutoff must be >= 1, got " + std::to_string(cutoff));
    }
}

int output_mode_index(Side side, int n, const TruncationConfig& trunc) {
    if (n < 1 || n > trunc.cutoff()) {
        throw std::out_of_range("output mode " + std::to_string(n) + " outside 1.." +
                                std::to_string(trunc.cutoff()));
    }
    return side == Side::left ? n : trunc.cutoff() + n;
}

} // namespace mirrorcut
