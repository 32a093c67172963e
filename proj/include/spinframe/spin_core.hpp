#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spinframe/errors.hpp"

namespace spinframe {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Hard ceiling on the spin count (dimension 16384); the runtime cap defaults
// to 10 and may be lowered, never raised, via SPINFRAME_MAX_SPINS.
inline constexpr int kHardMaxSpins = 14;
inline constexpr int kDefaultMaxSpins = 10;

// Effective cap, honoring SPINFRAME_MAX_SPINS if set.
int max_spins();
void check_spin_cap(int n);

// Pure state of N spins. Spin 1 occupies the most significant bit of the
// basis index, matching ket notation |eta_1 eta_2 ... eta_N>.
class SpinState {
  public:
    SpinState(int num_spins, Vec amplitudes);

    int num_spins() const { return num_spins_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vec& amplitudes() const { return amplitudes_; }

    bool approx_equal(const SpinState& other, double tol = 1e-12) const;

  private:
    int num_spins_;
    Vec amplitudes_;
};

class DensityMatrix {
  public:
    DensityMatrix(int num_spins, Mat entries);

    int num_spins() const { return num_spins_; }
    Eigen::Index dim() const { return entries_.rows(); }
    const Mat& entries() const { return entries_; }

  private:
    int num_spins_;
    Mat entries_;
};

// Ordered tuple of distinct 1-based spin indices. Tuple position is the
// site label of the extracted subsystem: reduce(s, {i, j}) puts spin i in
// the most significant position of the result.
class SubsystemSpec {
  public:
    explicit SubsystemSpec(std::vector<int> indices);

    int size() const { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const { return indices_; }
    int operator[](int pos) const { return indices_[pos]; }
    bool contains(int spin) const;
    void validate_for(int num_spins) const;

    friend bool operator==(const SubsystemSpec&, const SubsystemSpec&) = default;
    friend auto operator<=>(const SubsystemSpec& a, const SubsystemSpec& b) {
        return a.indices_ <=> b.indices_;
    }

  private:
    std::vector<int> indices_;
};

SpinState basis_state(const std::vector<int>& bits);
SpinState tensor(const SpinState& a, const SpinState& b);
DensityMatrix density(const SpinState& s);

// Partial trace over the spins not in `spec`, retained spins reordered into
// tuple order. Works directly on the amplitude vector.
DensityMatrix reduce(const SpinState& s, const SubsystemSpec& spec);

// Partial trace of a density matrix; `spec` indexes the matrix's own spins.
DensityMatrix reduce(const DensityMatrix& rho, const SubsystemSpec& spec);

class GlobalUnitary;
SpinState apply_unitary(const SpinState& s, const GlobalUnitary& u);

}  // namespace spinframe
