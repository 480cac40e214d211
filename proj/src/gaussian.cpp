#include "mirrorcut/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "mirrorcut/format.hpp"

namespace mirrorcut {

namespace {

void require_index(const GaussianState& state, int k, const char* what) {
    if (k < 1 || k > state.n_modes()) {
        throw std::out_of_range(std::string(what) + " mode " + std::to_string(k) +
                                " outside 1.." + std::to_string(state.n_modes()));
    }
}

// Drops every correlation of mode k with the rest of the state.
void decouple_mode(Matrix& cov, int k) {
    const Eigen::Index row = 2 * (k - 1);
    cov.middleRows(row, 2).setZero();
    cov.middleCols(row, 2).setZero();
}

double log_in_base(double x, LogBase base) {
    switch (base) {
    case LogBase::two:
        return std::log2(x);
    case LogBase::ten:
        return std::log10(x);
    case LogBase::e:
        break;
    }
    return std::log(x);
}

} // namespace

GaussianState::GaussianState(Vector first_moments, Matrix cov)
    : first_moments_(std::move(first_moments)), cov_(std::move(cov)) {
    const Eigen::Index dim = first_moments_.size();
    if (dim == 0 || dim % 2 != 0) {
        throw std::invalid_argument("first moment vector must have even, nonzero length");
    }
    if (cov_.rows() != dim || cov_.cols() != dim) {
        throw std::invalid_argument("covariance must be square and match the first moments");
    }
    if (!first_moments_.allFinite() || !cov_.allFinite()) {
        throw std::invalid_argument("state contains non-finite entries");
    }
}

Block2 GaussianState::cov_block(int i, int j) const {
    require_index(*this, i, "row");
    require_index(*this, j, "column");
    return cov_.block<2, 2>(2 * (i - 1), 2 * (j - 1));
}

Eigen::Vector2d GaussianState::mode_moments(int i) const {
    require_index(*this, i, "moment");
    return first_moments_.segment<2>(2 * (i - 1));
}

GaussianState vacuum(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("vacuum needs at least one mode");
    }
    return {Vector::Zero(2 * n_modes), Matrix::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState set_coherent(const GaussianState& state, int k, double amplitude, double phase) {
    require_index(state, k, "coherent");
    if (!(amplitude >= 0.0)) {
        throw std::invalid_argument("coherent amplitude must be >= 0");
    }
    Vector x = state.first_moments();
    x(2 * (k - 1)) = amplitude * std::cos(phase);
    x(2 * (k - 1) + 1) = amplitude * std::sin(phase);
    return {std::move(x), state.cov()};
}

Block2 squeezed_thermal_cov(double nbar, double squeezing, double angle) {
    if (!(nbar >= 0.0)) {
        throw std::invalid_argument("thermal occupation must be >= 0");
    }
    const double ch = std::cosh(2.0 * squeezing);
    const double sh = std::sinh(2.0 * squeezing);
    const double c = std::cos(2.0 * angle);
    const double s = std::sin(2.0 * angle);
    Block2 b;
    b << ch - c * sh, s * sh, s * sh, ch + c * sh;
    return (2.0 * nbar + 1.0) * b;
}

Matrix4 two_mode_squeezed_cov(double squeezing, double angle) {
    const double ch = std::cosh(2.0 * squeezing);
    const double sh = std::abs(std::sinh(2.0 * squeezing));
    Block2 off;
    off << std::cos(angle), std::sin(angle), std::sin(angle), -std::cos(angle);
    off *= -sh;
    Matrix4 m = Matrix4::Zero();
    m.block<2, 2>(0, 0) = ch * Block2::Identity();
    m.block<2, 2>(2, 2) = ch * Block2::Identity();
    m.block<2, 2>(0, 2) = off;
    m.block<2, 2>(2, 0) = off.transpose();
    return m;
}

GaussianState set_squeezed_thermal(const GaussianState& state, int k, double nbar,
                                   double squeezing, double angle) {
    require_index(state, k, "squeezed thermal");
    Matrix cov = state.cov();
    decouple_mode(cov, k);
    cov.block<2, 2>(2 * (k - 1), 2 * (k - 1)) = squeezed_thermal_cov(nbar, squeezing, angle);
    Vector x = state.first_moments();
    x.segment<2>(2 * (k - 1)).setZero();
    return {std::move(x), std::move(cov)};
}

GaussianState set_two_mode_squeezed(const GaussianState& state, int k, int k2, double squeezing,
                                    double angle) {
    require_index(state, k, "two-mode squeezed");
    require_index(state, k2, "two-mode squeezed");
    if (k >= k2) {
        throw std::invalid_argument("two-mode squeezing needs k < k2");
    }
    Matrix cov = state.cov();
    decouple_mode(cov, k);
    decouple_mode(cov, k2);
    const Matrix4 tms = two_mode_squeezed_cov(squeezing, angle);
    const Eigen::Index a = 2 * (k - 1);
    const Eigen::Index b = 2 * (k2 - 1);
    cov.block<2, 2>(a, a) = tms.block<2, 2>(0, 0);
    cov.block<2, 2>(b, b) = tms.block<2, 2>(2, 2);
    cov.block<2, 2>(a, b) = tms.block<2, 2>(0, 2);
    cov.block<2, 2>(b, a) = tms.block<2, 2>(2, 0);
    Vector x = state.first_moments();
    x.segment<2>(a).setZero();
    x.segment<2>(b).setZero();
    return {std::move(x), std::move(cov)};
}

GaussianState strip_correlations(const GaussianState& state, int k, int k2) {
    require_index(state, k, "strip");
    require_index(state, k2, "strip");
    if (k == k2) {
        throw std::invalid_argument("strip_correlations needs two distinct modes");
    }
    Matrix cov = state.cov();
    cov.block<2, 2>(2 * (k - 1), 2 * (k2 - 1)).setZero();
    cov.block<2, 2>(2 * (k2 - 1), 2 * (k - 1)).setZero();
    return {state.first_moments(), std::move(cov)};
}

GaussianState apply_transform(const GaussianState& state, const SymplecticTransform& transform) {
    const Matrix& s = transform.matrix();
    if (s.cols() != state.first_moments().size()) {
        throw std::invalid_argument("transform expects " + std::to_string(s.cols() / 2) +
                                    " input modes, state has " +
                                    std::to_string(state.n_modes()));
    }
    Vector x = s * state.first_moments();
    Matrix cov = s * state.cov() * s.transpose();
    return {std::move(x), std::move(cov)};
}

GaussianState reduce(const GaussianState& state, ModePair pair) {
    require_index(state, pair.a, "reduce");
    require_index(state, pair.b, "reduce");
    if (pair.a == pair.b) {
        throw std::invalid_argument("reduce needs two distinct modes");
    }
    const int idx[2] = {pair.a, pair.b};
    Vector x(4);
    Matrix cov(4, 4);
    for (int i = 0; i < 2; ++i) {
        x.segment<2>(2 * i) = state.mode_moments(idx[i]);
        for (int j = 0; j < 2; ++j) {
            cov.block<2, 2>(2 * i, 2 * j) = state.cov_block(idx[i], idx[j]);
        }
    }
    return {std::move(x), std::move(cov)};
}

double mean_particle_number(const GaussianState& state, int mode) {
    const Block2 block = state.cov_block(mode, mode);
    const Eigen::Vector2d x = state.mode_moments(mode);
    return 0.25 * (block.trace() - 2.0) + 0.5 * x.squaredNorm();
}

double log_negativity(const Matrix4& cov, LogBase base, NegativityDiagnostics* diagnostics) {
    const double det_a = cov.block<2, 2>(0, 0).determinant();
    const double det_b = cov.block<2, 2>(2, 2).determinant();
    const double det_c = cov.block<2, 2>(0, 2).determinant();
    const double det_full = cov.determinant();
    const double delta = det_a + det_b - 2.0 * det_c;

    double disc = delta * delta - 4.0 * det_full;
    if (disc < 0.0) {
        if (disc < -1e-9 * std::max(1.0, delta * delta)) {
            throw std::domain_error("negative discriminant: covariance is not a physical state");
        }
        disc = 0.0;
        if (diagnostics) ++diagnostics->clamped_discriminants;
    }
    // Smaller root of x^2 - delta x + det = 0, written without cancellation.
    const double denom = delta + std::sqrt(disc);
    if (!(denom > 0.0) || !(det_full > 0.0)) {
        throw std::domain_error("partially transposed spectrum is not positive");
    }
    const double nu = std::sqrt(2.0 * det_full / denom);
    if (nu > 1.0 + 1e-12 && diagnostics) ++diagnostics->nu_above_one;
    return std::max(0.0, -log_in_base(nu, base));
}

double log_negativity(const GaussianState& state, LogBase base, NegativityDiagnostics* diagnostics) {
    if (state.n_modes() != 2) {
        throw std::invalid_argument("log_negativity needs a two-mode state, got " +
                                    std::to_string(state.n_modes()) + " modes");
    }
    return log_negativity(Matrix4(state.cov()), base, diagnostics);
}

std::vector<double> symplectic_eigenvalues(const GaussianState& state) {
    const int n = state.n_modes();
    const Eigen::MatrixXd jc = symplectic_form(n) * state.cov();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(jc, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symplectic spectrum did not converge");
    }
    std::vector<double> mags;
    mags.reserve(static_cast<std::size_t>(2 * n));
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        mags.push_back(std::abs(solver.eigenvalues()(i)));
    }
    std::sort(mags.begin(), mags.end());
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = 0.5 * (mags[2 * i] + mags[2 * i + 1]);
    }
    return out;
}

ValidationReport validate(const GaussianState& state, double slack) {
    ValidationReport report;
    const Matrix& cov = state.cov();
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    report.max_asymmetry = (cov - cov.transpose()).cwiseAbs().maxCoeff();
    report.min_symplectic_eigenvalue = symplectic_eigenvalues(state).front();
    report.deficit = std::max(0.0, 1.0 - report.min_symplectic_eigenvalue);

    std::ostringstream msg;
    if (report.max_asymmetry > slack * scale) {
        report.ok = false;
        msg << "covariance asymmetric by " << report.max_asymmetry << "; ";
    }
    if (report.min_symplectic_eigenvalue < 1.0 - slack) {
        report.ok = false;
        msg << "symplectic eigenvalue " << report.min_symplectic_eigenvalue << " < 1";
    }
    report.message = report.ok ? "ok" : msg.str();
    return report;
}

std::string to_json(const GaussianState& state) {
    std::string out = "{\"n_modes\":" + std::to_string(state.n_modes()) + ",\"first_moments\":[";
    const Vector& x = state.first_moments();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(x(i));
    }
    out += "],\"cov\":[";
    const Matrix& cov = state.cov();
    for (Eigen::Index i = 0; i < cov.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(cov.data()[i]);
    }
    out += "]}";
    return out;
}

GaussianState state_from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    const int n = doc.at("n_modes").get<int>();
    const auto moments = doc.at("first_moments").get<std::vector<double>>();
    const auto cov_flat = doc.at("cov").get<std::vector<double>>();
    if (n < 1 || moments.size() != static_cast<std::size_t>(2 * n) ||
        cov_flat.size() != static_cast<std::size_t>(4 * n * n)) {
        throw std::invalid_argument("state JSON dimensions do not match n_modes");
    }
    Vector x = Eigen::Map<const Vector>(moments.data(), 2 * n);
    Matrix cov = Eigen::Map<const Matrix>(cov_flat.data(), 2 * n, 2 * n);
    return {std::move(x), std::move(cov)};
}

} // namespace mirrorcut
