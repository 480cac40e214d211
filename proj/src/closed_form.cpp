#include "mirrorcut/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mirrorcut/modes.hpp"

namespace mirrorcut {

namespace {

struct SidePair {
    Side row;
    Side col;
};

SidePair sides_of(OutputBlock which) {
    switch (which) {
    case OutputBlock::sigma:
        return {Side::left, Side::left};
    case OutputBlock::gamma:
        return {Side::left, Side::right};
    case OutputBlock::sigma_bar:
        break;
    }
    return {Side::right, Side::right};
}

void require_output(const TruncationConfig& trunc, int n) {
    if (n < 1 || n > trunc.cutoff()) {
        throw std::out_of_range("output mode " + std::to_string(n) + " outside 1.." +
                                std::to_string(trunc.cutoff()));
    }
}

void require_amplitude(double amplitude) {
    if (!(amplitude >= 0.0)) throw std::invalid_argument("coherent amplitude must be >= 0");
}

void require_input(const TruncationConfig& trunc, int k) {
    if (k < 1 || k > trunc.input_modes()) {
        throw std::out_of_range("input mode " + std::to_string(k) + " outside 1.." +
                                std::to_string(trunc.input_modes()));
    }
}

// Sum over l of S_il S_jl^T, skipping up to two excluded input modes.
Block2 vacuum_sum(const CavityGeometry& geom, const TruncationConfig& trunc, SidePair sides, int i,
                  int j, int skip_a, int skip_b) {
    Block2 acc = Block2::Zero();
    for (int l = 1; l <= trunc.input_modes(); ++l) {
        if (l == skip_a || l == skip_b) continue;
        acc += s_block(geom, sides.row, i, l) * s_block(geom, sides.col, j, l).transpose();
    }
    return acc;
}

} // namespace

double coherent_particles_closed_form(const CavityGeometry& geom, Side side, int n, int k,
                                      double amplitude, double phase) {
    require_amplitude(amplitude);
    const double v = v_coeff(geom, side, n, k);
    const double omega = side_frequency(geom, side, n);
    const double big_omega = input_frequency(geom, k);
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double quadrature_sq = 4.0 * amplitude * amplitude * v * v *
                                 (omega * omega * c * c + big_omega * big_omega * s * s);
    return 0.5 * quadrature_sq;
}

double coherent_particles_phase_averaged(const CavityGeometry& geom, Side side, int n, int k,
                                         double amplitude) {
    require_amplitude(amplitude);
    const double v = v_coeff(geom, side, n, k);
    const double omega = side_frequency(geom, side, n);
    const double big_omega = input_frequency(geom, k);
    return amplitude * amplitude * v * v * (omega * omega + big_omega * big_omega);
}

double vacuum_particles(const CavityGeometry& geom, const TruncationConfig& trunc, Side side,
                        int n) {
    require_output(trunc, n);
    const double omega = side_frequency(geom, side, n);
    double sum = 0.0;
    for (int l = 1; l <= trunc.input_modes(); ++l) {
        const double v = v_coeff(geom, side, n, l);
        const double big_omega = input_frequency(geom, l);
        sum += v * v * (omega * omega + big_omega * big_omega);
    }
    return sum - 0.5;
}

Block2 single_mode_output_blocks(const CavityGeometry& geom, const TruncationConfig& trunc,
                                 const Block2& input, int k, int i, int j, OutputBlock which) {
    require_input(trunc, k);
    require_output(trunc, i);
    require_output(trunc, j);
    const SidePair sides = sides_of(which);
    const Block2 s_ik = s_block(geom, sides.row, i, k);
    const Block2 s_jk = s_block(geom, sides.col, j, k);
    return s_ik * input * s_jk.transpose() + vacuum_sum(geom, trunc, sides, i, j, k, k);
}

Block2 two_mode_output_blocks(const CavityGeometry& geom, const TruncationConfig& trunc,
                              const Matrix4& input, int k, int k2, int i, int j,
                              OutputBlock which) {
    require_input(trunc, k);
    require_input(trunc, k2);
    if (k >= k2) {
        throw std::invalid_argument("two-mode input needs k < k2");
    }
    require_output(trunc, i);
    require_output(trunc, j);
    const SidePair sides = sides_of(which);
    const Block2 s_ik = s_block(geom, sides.row, i, k);
    const Block2 s_ik2 = s_block(geom, sides.row, i, k2);
    const Block2 s_jk = s_block(geom, sides.col, j, k);
    const Block2 s_jk2 = s_block(geom, sides.col, j, k2);
    const Block2 in_kk = input.block<2, 2>(0, 0);
    const Block2 in_k2k2 = input.block<2, 2>(2, 2);
    const Block2 in_kk2 = input.block<2, 2>(0, 2);
    const Block2 in_k2k = input.block<2, 2>(2, 0);
    return s_ik * in_kk * s_jk.transpose() + s_ik2 * in_k2k2 * s_jk2.transpose() +
           s_ik * in_kk2 * s_jk2.transpose() + s_ik2 * in_k2k * s_jk.transpose() +
           vacuum_sum(geom, trunc, sides, i, j, k, k2);
}

Matrix4 single_mode_pair_cov(const CavityGeometry& geom, const TruncationConfig& trunc,
                             const Block2& input, int k, int n, int m) {
    Matrix4 cov;
    cov.block<2, 2>(0, 0) = single_mode_output_blocks(geom, trunc, input, k, n, n, OutputBlock::sigma);
    cov.block<2, 2>(0, 2) = single_mode_output_blocks(geom, trunc, input, k, n, m, OutputBlock::gamma);
    cov.block<2, 2>(2, 0) = cov.block<2, 2>(0, 2).transpose();
    cov.block<2, 2>(2, 2) =
        single_mode_output_blocks(geom, trunc, input, k, m, m, OutputBlock::sigma_bar);
    return cov;
}

Matrix4 two_mode_pair_cov(const CavityGeometry& geom, const TruncationConfig& trunc,
                          const Matrix4& input, int k, int k2, int n, int m) {
    Matrix4 cov;
    cov.block<2, 2>(0, 0) =
        two_mode_output_blocks(geom, trunc, input, k, k2, n, n, OutputBlock::sigma);
    cov.block<2, 2>(0, 2) =
        two_mode_output_blocks(geom, trunc, input, k, k2, n, m, OutputBlock::gamma);
    cov.block<2, 2>(2, 0) = cov.block<2, 2>(0, 2).transpose();
    cov.block<2, 2>(2, 2) =
        two_mode_output_blocks(geom, trunc, input, k, k2, m, m, OutputBlock::sigma_bar);
    return cov;
}

LowestModeBlocks squeezed_thermal_sigma11(const CavityGeometry& geom,
                                          const TruncationConfig& trunc, double nbar,
                                          double squeezing, double angle) {
    if (!geom.is_midpoint()) {
        throw std::domain_error("lowest-mode closed form requires the mirror at R/2");
    }
    const double omega = side_frequency(geom, Side::left, 1);
    const double big_omega_1 = input_frequency(geom, 1);
    const double v11 = v_coeff(geom, Side::left, 1, 1);
    const double ch = std::cosh(2.0 * squeezing);
    const double sh = std::sinh(2.0 * squeezing);
    const double c = std::cos(2.0 * angle);
    const double s = std::sin(2.0 * angle);

    Block2 first;
    first << omega * omega * (ch - c * sh), omega * big_omega_1 * s * sh,
        omega * big_omega_1 * s * sh, big_omega_1 * big_omega_1 * (ch + c * sh);
    first *= 4.0 * v11 * v11 * (2.0 * nbar + 1.0);

    Block2 tail = Block2::Zero();
    Block2 l2_term = Block2::Zero();
    for (int l = 2; l <= trunc.input_modes(); ++l) {
        const double v = v_coeff(geom, Side::left, 1, l);
        const double big_omega = input_frequency(geom, l);
        Block2 term = Block2::Zero();
        term(0, 0) = omega * omega;
        term(1, 1) = big_omega * big_omega;
        term *= 4.0 * v * v;
        if (l == 2) {
            l2_term = term;
        } else {
            tail += term;
        }
    }
    LowestModeBlocks out;
    out.sigma = first + l2_term + tail;
    out.gamma = first - l2_term + tail;
    out.sigma_bar = out.sigma;
    return out;
}

double squeezed_thermal_particles(const CavityGeometry& geom, const TruncationConfig& trunc, int n,
                                  double nbar, double squeezing, double angle, Side side) {
    require_output(trunc, n);
    const double omega = side_frequency(geom, side, n);
    const double big_omega_1 = input_frequency(geom, 1);
    const double v1 = v_coeff(geom, side, n, 1);
    const double ch = std::cosh(2.0 * squeezing);
    const double sh = std::sinh(2.0 * squeezing);
    const double c = std::cos(2.0 * angle);

    double result = v1 * v1 * (2.0 * nbar + 1.0) *
                    ((ch - c * sh) * omega * omega + (ch + c * sh) * big_omega_1 * big_omega_1);
    for (int l = 2; l <= trunc.input_modes(); ++l) {
        const double v = v_coeff(geom, side, n, l);
        const double big_omega = input_frequency(geom, l);
        result += v * v * (omega * omega + big_omega * big_omega);
    }
    return result - 0.5;
}

} // namespace mirrorcut
