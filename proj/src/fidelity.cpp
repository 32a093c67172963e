#include "spinframe/fidelity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinframe {

const Eigen::Matrix2cd kPauliX = [] {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}();
const Eigen::Matrix2cd kPauliY = [] {
    Eigen::Matrix2cd m;
    m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
    return m;
}();
const Eigen::Matrix2cd kPauliZ = [] {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}();

POVM::POVM(std::vector<Mat> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw invalid_input("POVM needs at least one element");
    const Eigen::Index dim = elements_.front().rows();
    Mat sum = Mat::Zero(dim, dim);
    for (const Mat& e : elements_) {
        if (e.rows() != dim || e.cols() != dim) {
            throw dimension_mismatch("POVM elements must share one dimension");
        }
        Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (e + e.adjoint()),
                                                  Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-10) {
            throw invalid_input("POVM element is not positive semidefinite");
        }
        sum += e;
    }
    if ((sum - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10) {
        throw invalid_input("POVM elements do not sum to the identity");
    }
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

namespace {

void check_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw dimension_mismatch("density matrices have different dimensions");
    }
}

// Eigenvalues at the solver's noise floor are truncated to exactly zero;
// otherwise their square roots inject O(sqrt(eps)) ~ 1e-8 error into
// fidelities of rank-deficient (e.g. pure) states. The scale anchors the
// floor: unit-trace inputs use 1.0 so near-zero matrices truncate fully.
Eigen::VectorXd clamped_eigenvalues(const Eigen::VectorXd& vals, double scale) {
    Eigen::VectorXd out = vals;
    const double floor = 1e-13 * scale;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out[i] < -1e-9) {
            throw numerical_consistency_error("eigenvalue below the -1e-9 clamping floor");
        }
        out[i] = out[i] < floor ? 0.0 : out[i];
    }
    return out;
}

}  // namespace

Mat hermitian_sqrt(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()));
    Eigen::VectorXd vals = clamped_eigenvalues(
        solver.eigenvalues(),
        std::max(solver.eigenvalues().cwiseAbs().maxCoeff(), 1e-300));
    Eigen::VectorXd roots = vals.cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() *
           solver.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dim(rho, sigma);
    Mat root = hermitian_sqrt(rho.entries());
    Mat inner = root * sigma.entries() * root;
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (inner + inner.adjoint()),
                                              Eigen::EigenvaluesOnly);
    // Density matrices have unit trace, so 1.0 is the natural scale here.
    Eigen::VectorXd vals = clamped_eigenvalues(solver.eigenvalues(), 1.0);
    double f = vals.cwiseSqrt().sum();
    return std::min(f, 1.0);
}

double fidelity_squared(const DensityMatrix& rho, const DensityMatrix& sigma) {
    double f = fidelity(rho, sigma);
    return f * f;
}

double fidelity_povm_oracle(const DensityMatrix& rho, const DensityMatrix& sigma,
                            int grid_resolution) {
    check_same_dim(rho, sigma);
    if (rho.dim() != 2) {
        throw unsupported_dimension("POVM oracle supports single-spin states only");
    }
    if (grid_resolution < 1) throw invalid_input("grid resolution must be positive");

    const Eigen::Matrix2cd r = rho.entries();
    const Eigen::Matrix2cd s = sigma.entries();
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));

    auto value_for_axis = [&](double nx, double ny, double nz) {
        Eigen::Matrix2cd proj =
            0.5 * (Eigen::Matrix2cd::Identity() + nx * kPauliX + ny * kPauliY + nz * kPauliZ);
        double pr = std::max(0.0, (r * proj).trace().real());
        double ps = std::max(0.0, (s * proj).trace().real());
        double qr = std::max(0.0, 1.0 - pr);
        double qs = std::max(0.0, 1.0 - ps);
        return std::sqrt(pr * ps) + std::sqrt(qr * qs);
    };

    // Fibonacci sphere with resolution^2 points (resolution acts per angular
    // dimension, so the axis spacing scales as 1/resolution and the value gap
    // as 1/resolution^2), plus both poles so axis-aligned inputs land on an
    // exactly optimal measurement.
    const long points = static_cast<long>(grid_resolution) * grid_resolution;
    double best = std::min(value_for_axis(0, 0, 1), value_for_axis(0, 0, -1));
#ifdef _OPENMP
#pragma omp parallel for reduction(min : best) schedule(static)
#endif
    for (long i = 0; i < points; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / points;
        double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden_angle * i;
        double v = value_for_axis(radius * std::cos(phi), radius * std::sin(phi), z);
        best = std::min(best, v);
    }
    return best;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dim(rho, sigma);
    Mat diff = rho.entries() - sigma.entries();
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (diff + diff.adjoint()),
                                              Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

HelstromResult helstrom(const DensityMatrix& rho, const DensityMatrix& sigma, double p) {
    check_same_dim(rho, sigma);
    if (!(p > 0.0 && p < 1.0)) {
        throw invalid_input("prior probability must lie strictly inside (0, 1)");
    }
    Mat gamma = p * rho.entries() - (1.0 - p) * sigma.entries();
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (gamma + gamma.adjoint()));
    const Eigen::VectorXd vals = solver.eigenvalues();
    const Mat& vecs = solver.eigenvectors();

    HelstromResult result;
    result.error_probability = 0.5 * (1.0 - vals.cwiseAbs().sum());
    result.error_probability = std::max(result.error_probability, 0.0);

    const Eigen::Index dim = gamma.rows();
    Mat proj_a = Mat::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        // Zero eigenvalues tie-break to the "A" projector.
        if (vals[i] >= -1e-12) proj_a += vecs.col(i) * vecs.col(i).adjoint();
    }
    result.guess_a_projector = proj_a;
    result.guess_b_projector = Mat::Identity(dim, dim) - proj_a;
    return result;
}

double helstrom_error(const DensityMatrix& rho, const DensityMatrix& sigma, double p) {
    return helstrom(rho, sigma, p).error_probability;
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw unsupported_dimension("Bloch vector is defined for single spins");
    }
    const Eigen::Matrix2cd r = rho.entries();
    return BlochVector{(r * kPauliX).trace().real(), (r * kPauliY).trace().real(),
                       (r * kPauliZ).trace().real()};
}

DensityMatrix density_from_bloch(const BlochVector& r) {
    if (r.norm() > 1.0 + 1e-10) {
        throw invalid_input("Bloch vector norm exceeds 1");
    }
    Eigen::Matrix2cd m =
        0.5 * (Eigen::Matrix2cd::Identity() + r.x * kPauliX + r.y * kPauliY + r.z * kPauliZ);
    return DensityMatrix(1, m);
}

double relative_angle(const BlochVector& r1, const BlochVector& r2) {
    const double n1 = r1.norm();
    const double n2 = r2.norm();
    if (n1 <= 1e-12 || n2 <= 1e-12) {
        throw undefined_angle("relative angle undefined for near-zero Bloch vectors");
    }
    double c = (r1.x * r2.x + r1.y * r2.y + r1.z * r2.z) / (n1 * n2);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

}  // namespace spinframe
