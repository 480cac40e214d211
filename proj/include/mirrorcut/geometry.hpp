#pragma once

#include <cstdint>

namespace mirrorcut {

enum class Side { left, right };

/// Dirichlet cavity [0, R] split by a mirror at r = (p/q) R.
///
/// The mirror position is kept as an exact reduced fraction so that mode
/// resonances (Omega_l == omega_n) are decided in integer arithmetic.
/// Natural units, c = hbar = 1.
class CavityGeometry {
public:
    CavityGeometry(double length, std::int64_t num, std::int64_t den);

    /// Mirror in the middle, the configuration used for all figure data.
    static CavityGeometry midpoint(double length = 2.0) { return {length, 1, 2}; }

    [[nodiscard]] double length() const { return length_; }
    [[nodiscard]] std::int64_t mirror_num() const { return num_; }
    [[nodiscard]] std::int64_t mirror_den() const { return den_; }

    /// r, the extent of the left sub-cavity.
    [[nodiscard]] double left_length() const { return left_; }
    /// R - r.
    [[nodiscard]] double right_length() const { return right_; }
    [[nodiscard]] double side_length(Side side) const {
        return side == Side::left ? left_ : right_;
    }
    [[nodiscard]] bool is_midpoint() const { return num_ == 1 && den_ == 2; }

    friend bool operator==(const CavityGeometry&, const CavityGeometry&) = default;

private:
    double length_;
    std::int64_t num_;
    std::int64_t den_;
    double left_;
    double right_;
};

/// UV cutoff: 2*cutoff input modes U_l, cutoff output modes per side.
class TruncationConfig {
public:
    explicit TruncationConfig(int cutoff);

    [[nodiscard]] int cutoff() const { return cutoff_; }
    [[nodiscard]] int input_modes() const { return 2 * cutoff_; }
    [[nodiscard]] int modes_per_side() const { return cutoff_; }
    [[nodiscard]] int output_modes() const { return 2 * cutoff_; }

    friend bool operator==(const TruncationConfig&, const TruncationConfig&) = default;

private:
    int cutoff_;
};

/// 1-based index of output mode n of the given side in a transformed state
/// (left modes 1..cutoff first, then right modes).
[[nodiscard]] int output_mode_index(Side side, int n, const TruncationConfig& trunc);

} // namespace mirrorcut
