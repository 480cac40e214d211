#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mirrorcut/modes.hpp"
#include "oracles.hpp"

using namespace mirrorcut;
using std::numbers::pi;

TEST_CASE("geometry reduces the mirror fraction and splits R exactly") {
    const CavityGeometry g(3.0, 2, 6);
    CHECK(g.mirror_num() == 1);
    CHECK(g.mirror_den() == 3);
    CHECK(g.left_length() == doctest::Approx(1.0));
    CHECK(g.right_length() == doctest::Approx(2.0));

    for (double R : {0.7, 1.0, 2.0, 3.3, 17.0}) {
        for (auto [p, q] : {std::pair{1, 2}, {1, 3}, {2, 5}, {499, 1000}, {7, 9}}) {
            const CavityGeometry h(R, p, q);
            CHECK(h.left_length() + h.right_length() == R);
        }
    }
    CHECK(CavityGeometry::midpoint().is_midpoint());
    CHECK_FALSE(CavityGeometry(2.0, 1, 3).is_midpoint());

    CHECK_THROWS_AS((void)CavityGeometry(0.0, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)CavityGeometry(-1.0, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)CavityGeometry(2.0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)CavityGeometry(2.0, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)CavityGeometry(2.0, 3, 2), std::invalid_argument);
}

TEST_CASE("truncation config") {
    const TruncationConfig t(5);
    CHECK(t.input_modes() == 10);
    CHECK(t.modes_per_side() == 5);
    CHECK(output_mode_index(Side::left, 3, t) == 3);
    CHECK(output_mode_index(Side::right, 3, t) == 8);
    CHECK_THROWS_AS((void)TruncationConfig(0), std::invalid_argument);
    CHECK_THROWS_AS((void)output_mode_index(Side::right, 6, t), std::out_of_range);
}

TEST_CASE("input and side frequencies") {
    const auto g2 = CavityGeometry::midpoint(2.0);
    CHECK(input_frequency(g2, 1) == doctest::Approx(pi / 2));
    CHECK(input_frequency(g2, 4) == doctest::Approx(2 * pi));
    CHECK(input_frequency(CavityGeometry(1.0, 1, 2), 3) == doctest::Approx(3 * pi));

    CHECK(side_frequency(g2, Side::left, 1) == doctest::Approx(pi));
    CHECK(side_frequency(g2, Side::right, 2) == doctest::Approx(2 * pi));
    CHECK(side_frequency(CavityGeometry(3.0, 1, 3), Side::right, 1) == doctest::Approx(pi / 2));

    CHECK_THROWS_AS((void)input_frequency(g2, 0), std::domain_error);
    CHECK_THROWS_AS((void)input_frequency(g2, -2), std::domain_error);
    CHECK_THROWS_AS((void)side_frequency(g2, Side::left, 0), std::domain_error);
}

TEST_CASE("resonance is decided exactly") {
    const auto half = CavityGeometry::midpoint();
    CHECK(is_resonant(half, Side::left, 1, 2));
    CHECK_FALSE(is_resonant(half, Side::left, 1, 3));
    CHECK(is_resonant(CavityGeometry(2.0, 1, 3), Side::right, 2, 3));

    for (int n = 1; n <= 64; ++n) {
        for (int l = 1; l <= 64; ++l) {
            CHECK(is_resonant(half, Side::left, n, l) == (l == 2 * n));
        }
    }
    // Resonance follows the integer identity, not a float comparison of frequencies.
    const CavityGeometry near(2.0, 499999, 1000000);
    CHECK_FALSE(is_resonant(near, Side::left, 1, 2));
    CHECK(is_resonant(near, Side::left, 499999, 1000000));
}

TEST_CASE("v_coeff closed values at the midpoint") {
    const auto g = CavityGeometry::midpoint(2.0);
    CHECK(v_coeff(g, Side::left, 1, 1) == doctest::Approx(4.0 / (3.0 * pi * pi)).epsilon(1e-14));
    CHECK(v_coeff(g, Side::left, 1, 2) ==
          doctest::Approx(1.0 / (2.0 * pi * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(v_coeff(g, Side::right, 1, 2) ==
          doctest::Approx(-1.0 / (2.0 * pi * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(v_coeff(g, Side::left, 2, 1) ==
          doctest::Approx(-8.0 / (15.0 * std::sqrt(2.0) * pi * pi)).epsilon(1e-14));
}

TEST_CASE("v_coeff matches the mode-function overlap integral") {
    struct Case {
        double R;
        int p, q;
    };
    for (const Case c : {Case{2.0, 1, 2}, Case{3.0, 2, 5}, Case{3.0, 1, 3}, Case{1.7, 3, 7}}) {
        const CavityGeometry g(c.R, c.p, c.q);
        for (int n = 1; n <= 4; ++n) {
            for (int l = 1; l <= 10; ++l) {
                const double left = oracle::overlap_v(c.R, g.left_length(), true, n, l);
                const double right = oracle::overlap_v(c.R, g.left_length(), false, n, l);
                CAPTURE(c.p);
                CAPTURE(c.q);
                CAPTURE(n);
                CAPTURE(l);
                CHECK(v_coeff(g, Side::left, n, l) == doctest::Approx(left).epsilon(1e-10).scale(1.0));
                CHECK(v_coeff(g, Side::right, n, l) == doctest::Approx(right).epsilon(1e-10).scale(1.0));
            }
        }
    }
}

TEST_CASE("alpha and beta") {
    const auto g = CavityGeometry::midpoint(2.0);
    const double v12 = 1.0 / (2.0 * pi * std::sqrt(2.0));
    const Bogoliubov res = alpha_beta(g, Side::left, 1, 2);
    CHECK(res.alpha == doctest::Approx(2 * pi * v12));
    CHECK(res.beta == 0.0);

    const double v11 = 4.0 / (3.0 * pi * pi);
    const Bogoliubov nonres = alpha_beta(g, Side::left, 1, 1);
    CHECK(nonres.alpha == doctest::Approx((pi / 2 + pi) * v11));
    CHECK(nonres.beta == doctest::Approx((pi / 2 - pi) * v11));

    for (Side side : {Side::left, Side::right}) {
        for (int n = 1; n <= 8; ++n) {
            for (int l = 1; l <= 16; ++l) {
                const Bogoliubov ab = alpha_beta(g, side, n, l);
                CHECK(ab.alpha - ab.beta ==
                      doctest::Approx(2 * side_frequency(g, side, n) * v_coeff(g, side, n, l)));
            }
        }
    }
}

TEST_CASE("s_block is diagonal and consistent with alpha/beta") {
    const auto g = CavityGeometry::midpoint(2.0);
    const Block2 b = s_block(g, Side::left, 1, 1);
    CHECK(b(0, 0) == doctest::Approx(8.0 / (3.0 * pi)));
    CHECK(b(1, 1) == doctest::Approx(4.0 / (3.0 * pi)));

    const double eps = std::numeric_limits<double>::epsilon();
    for (const CavityGeometry& geom : {g, CavityGeometry(3.0, 2, 5)}) {
        for (Side side : {Side::left, Side::right}) {
            for (int n = 1; n <= 64; ++n) {
                for (int l = 1; l <= 64; ++l) {
                    const Block2 s = s_block(geom, side, n, l);
                    const Bogoliubov ab = alpha_beta(geom, side, n, l);
                    REQUIRE(s(0, 1) == 0.0);
                    REQUIRE(s(1, 0) == 0.0);
                    const double scale = std::abs(ab.alpha) + std::abs(ab.beta);
                    REQUIRE(std::abs(s(0, 0) - (ab.alpha - ab.beta)) <= 8 * eps * scale);
                    REQUIRE(std::abs(s(1, 1) - (ab.alpha + ab.beta)) <= 8 * eps * scale);
                }
            }
        }
    }
}

TEST_CASE("midpoint reflection: V12 = -Vbar12 and V1l = Vbar1l otherwise") {
    const auto g = CavityGeometry::midpoint(2.0);
    const int cutoff = 64;
    for (int l = 1; l <= 2 * cutoff; ++l) {
        if (l == 2) {
            CHECK(v_coeff(g, Side::left, 1, l) == -v_coeff(g, Side::right, 1, l));
        } else {
            CHECK(v_coeff(g, Side::left, 1, l) == v_coeff(g, Side::right, 1, l));
        }
    }
}

TEST_CASE("build_transform assembles the blocks") {
    const auto g = CavityGeometry::midpoint(2.0);
    const SymplecticTransform s1 = build_transform(g, TruncationConfig(1));
    REQUIRE(s1.dimension() == 4);
    CHECK(s1.block(1, 1) == s_block(g, Side::left, 1, 1));
    CHECK(s1.block(1, 2) == s_block(g, Side::left, 1, 2));
    CHECK(s1.block(2, 1) == s_block(g, Side::right, 1, 1));
    CHECK(s1.block(2, 2) == s_block(g, Side::right, 1, 2));

    for (int cutoff : {1, 3, 8, 17}) {
        const SymplecticTransform s = build_transform(CavityGeometry(3.0, 2, 5), TruncationConfig(cutoff));
        CHECK(s.matrix().rows() == 4 * cutoff);
        CHECK(s.matrix().cols() == 4 * cutoff);
        for (int out = 1; out <= 2 * cutoff; ++out) {
            for (int in = 1; in <= 2 * cutoff; ++in) {
                const Block2 b = s.block(out, in);
                REQUIRE(b(0, 1) == 0.0);
                REQUIRE(b(1, 0) == 0.0);
            }
        }
    }
    CHECK_THROWS_AS((void)s1.block(3, 1), std::out_of_range);
}

TEST_CASE("truncated transform approaches symplectic as the cutoff grows") {
    const auto g = CavityGeometry::midpoint(2.0);
    auto defect = [&](int cutoff) {
        const int modes[] = {1, cutoff + 1};
        return symplectic_defect(build_transform(g, TruncationConfig(cutoff)), modes);
    };
    const double d8 = defect(8);
    const double d32 = defect(32);
    const double d64 = defect(64);
    const double d128 = defect(128);
    CHECK(d128 < d32);
    CHECK(d32 < d8);
    CHECK(d64 < d32);
    CHECK(d8 < 1e-3);

    // Independent route: top-left 2x2 of S J S^T against J.
    for (int cutoff : {32, 64}) {
        const Matrix& s = build_transform(g, TruncationConfig(cutoff)).matrix();
        const Matrix sjst = s * symplectic_form(2 * cutoff) * s.transpose();
        const double dev = std::abs(sjst(0, 1) - 1.0) + std::abs(sjst(1, 0) + 1.0) +
                           std::abs(sjst(0, 0)) + std::abs(sjst(1, 1));
        CHECK(dev <= 2.0 * defect(cutoff));
    }
}

TEST_CASE("non-resonant branch tends to the resonant value") {
    const auto half = CavityGeometry::midpoint(2.0);
    for (Side side : {Side::left, Side::right}) {
        const double resonant = v_coeff(half, side, 1, 2);
        const double coarse = v_coeff(CavityGeometry(2.0, 499, 1000), side, 1, 2);
        const double fine = v_coeff(CavityGeometry(2.0, 499999, 1000000), side, 1, 2);
        CHECK(std::abs(fine - resonant) < 1e-3);
        CHECK(std::abs(fine - resonant) < std::abs(coarse - resonant));
    }
}

TEST_CASE("transform CSV dump round-trips") {
    const SymplecticTransform s = build_transform(CavityGeometry(3.0, 2, 5), TruncationConfig(2));
    std::ostringstream os;
    s.write_csv(os);
    std::istringstream is(os.str());
    std::string line;
    int row = 0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string cell;
        int col = 0;
        while (std::getline(ls, cell, ',')) {
            CHECK(std::stod(cell) == s.matrix()(row, col));
            ++col;
        }
        CHECK(col == 8);
        ++row;
    }
    CHECK(row == 8);
}
