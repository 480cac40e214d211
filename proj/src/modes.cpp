#include "mirrorcut/modes.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mirrorcut/format.hpp"

namespace mirrorcut {

namespace {

using std::numbers::pi;

void require_mode(int index, const char* what) {
    if (index < 1) {
        throw std::domain_error(std::string(what) + " mode index must be >= 1, got " +
                                std::to_string(index));
    }
}

double parity(long long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// sin(l pi r / R) with the argument reduced modulo 2 pi in exact integer
// arithmetic first.
double mirror_sine(const CavityGeometry& geom, int l) {
    const std::int64_t q = geom.mirror_den();
    const std::int64_t m = (static_cast<std::int64_t>(l) * geom.mirror_num()) % (2 * q);
    return std::sin(pi * static_cast<double>(m) / static_cast<double>(q));
}

} // namespace

Matrix symplectic_form(int n_modes) {
    Matrix j = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        j(2 * i, 2 * i + 1) = 1.0;
        j(2 * i + 1, 2 * i) = -1.0;
    }
    return j;
}

double input_frequency(const CavityGeometry& geom, int l) {
    require_mode(l, "input");
    return pi * l / geom.length();
}

double side_frequency(const CavityGeometry& geom, Side side, int n) {
    require_mode(n, "output");
    return pi * n / geom.side_length(side);
}

bool is_resonant(const CavityGeometry& geom, Side side, int n, int l) {
    require_mode(n, "output");
    require_mode(l, "input");
    const std::int64_t p = geom.mirror_num();
    const std::int64_t q = geom.mirror_den();
    const std::int64_t span = side == Side::left ? p : q - p;
    return static_cast<std::int64_t>(l) * span == static_cast<std::int64_t>(n) * q;
}

double v_coeff(const CavityGeometry& geom, Side side, int n, int l) {
    const double big_omega = input_frequency(geom, l);
    const double omega = side_frequency(geom, side, n);
    const double a = geom.side_length(side);
    const double norm = std::sqrt(geom.length() * a * big_omega * omega);

    if (is_resonant(geom, side, n, l)) {
        const double sign = side == Side::left ? 1.0 : parity(static_cast<long long>(n) + l);
        return sign * a / (2.0 * norm);
    }
    const double sign = side == Side::left ? parity(n) : -1.0;
    return sign * n * pi * mirror_sine(geom, l) /
           (a * norm * (big_omega * big_omega - omega * omega));
}

Bogoliubov alpha_beta(const CavityGeometry& geom, Side side, int n, int l) {
    const double v = v_coeff(geom, side, n, l);
    const double big_omega = input_frequency(geom, l);
    const double omega = side_frequency(geom, side, n);
    return {(big_omega + omega) * v, (big_omega - omega) * v};
}

Block2 s_block(const CavityGeometry& geom, Side side, int n, int l) {
    const double twice_v = 2.0 * v_coeff(geom, side, n, l);
    Block2 b = Block2::Zero();
    b(0, 0) = twice_v * side_frequency(geom, side, n);
    b(1, 1) = twice_v * input_frequency(geom, l);
    return b;
}

SymplecticTransform::SymplecticTransform(Matrix matrix, int cutoff)
    : matrix_(std::move(matrix)), cutoff_(cutoff) {
    if (cutoff < 1 || matrix_.rows() != 4 * cutoff || matrix_.cols() != 4 * cutoff) {
        throw std::invalid_argument("transform must be 4L x 4L for cutoff L");
    }
}

Block2 SymplecticTransform::block(int out, int in) const {
    const int modes = 2 * cutoff_;
    if (out < 1 || out > modes || in < 1 || in > modes) {
        throw std::out_of_range("transform block index out of range");
    }
    return matrix_.block<2, 2>(2 * (out - 1), 2 * (in - 1));
}

void SymplecticTransform::write_csv(std::ostream& os) const {
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
            if (j > 0) os << ',';
            os << format_double(matrix_(i, j));
        }
        os << '\n';
    }
}

SymplecticTransform build_transform(const CavityGeometry& geom, const TruncationConfig& trunc) {
    const int cutoff = trunc.cutoff();
    Matrix s = Matrix::Zero(4 * cutoff, 4 * cutoff);
    for (Side side : {Side::left, Side::right}) {
        for (int n = 1; n <= cutoff; ++n) {
            const int row = 2 * (output_mode_index(side, n, trunc) - 1);
            for (int l = 1; l <= trunc.input_modes(); ++l) {
                s.block<2, 2>(row, 2 * (l - 1)) = s_block(geom, side, n, l);
            }
        }
    }
    return SymplecticTransform(std::move(s), cutoff);
}

double symplectic_defect(const SymplecticTransform& transform, std::span<const int> output_modes) {
    const Matrix& s = transform.matrix();
    const auto k = static_cast<Eigen::Index>(2 * output_modes.size());
    Matrix rows(k, s.cols());
    for (std::size_t i = 0; i < output_modes.size(); ++i) {
        const int mode = output_modes[i];
        if (mode < 1 || mode > 2 * transform.cutoff()) {
            throw std::out_of_range("defect mode out of range");
        }
        rows.middleRows(static_cast<Eigen::Index>(2 * i), 2) = s.middleRows(2 * (mode - 1), 2);
    }
    const Matrix j_in = symplectic_form(static_cast<int>(s.cols() / 2));
    const Matrix product = rows * j_in * rows.transpose();
    const Matrix j_out = symplectic_form(static_cast<int>(output_modes.size()));
    return (product - j_out).cwiseAbs().maxCoeff();
}

} // namespace mirrorcut
