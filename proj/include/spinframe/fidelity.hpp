#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinframe/spin_core.hpp"

namespace spinframe {

extern const Eigen::Matrix2cd kPauliX;
extern const Eigen::Matrix2cd kPauliY;
extern const Eigen::Matrix2cd kPauliZ;

class POVM {
  public:
    explicit POVM(std::vector<Mat> elements);

    const std::vector<Mat>& elements() const { return elements_; }

  private:
    std::vector<Mat> elements_;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)); square-root
// convention, equal to |<a|b>| on pure inputs.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity_squared(const DensityMatrix& rho, const DensityMatrix& sigma);

// Minimizes sum_k sqrt(Tr[rho F_k] Tr[sigma F_k]) over two-outcome projective
// measurements with the axis swept over a Fibonacci-sphere grid. Qubits only.
// The grid value upper-bounds the true minimum and converges to it.
double fidelity_povm_oracle(const DensityMatrix& rho, const DensityMatrix& sigma,
                            int grid_resolution);

// (1/2) |rho - sigma|_1 via eigenvalues of the difference.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct HelstromResult {
    double error_probability = 0.0;
    // Optimal projectors: guess_a spans the nonnegative eigenspace of
    // p*rho - (1-p)*sigma (zero eigenvalues tie-broken to A), guess_b the rest.
    Mat guess_a_projector;
    Mat guess_b_projector;
};

double helstrom_error(const DensityMatrix& rho, const DensityMatrix& sigma, double p);
HelstromResult helstrom(const DensityMatrix& rho, const DensityMatrix& sigma, double p);

BlochVector bloch_vector(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& r);

// arccos of the normalized dot product, clamped into [-1, 1].
double relative_angle(const BlochVector& r1, const BlochVector& r2);

// Spectral square root of a PSD Hermitian matrix, eigenvalues clamped at 0.
// Eigenvalues below -1e-9 raise numerical_consistency_error.
Mat hermitian_sqrt(const Mat& m);

}  // namespace spinframe
