#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "spinframe/signature.hpp"
#include "spinframe/spin_core.hpp"

namespace spinframe {

class SingleSpinUnitary {
  public:
    explicit SingleSpinUnitary(Eigen::Matrix2cd entries);

    const Eigen::Matrix2cd& entries() const { return entries_; }

  private:
    Eigen::Matrix2cd entries_;
};

class GlobalUnitary {
  public:
    GlobalUnitary(int num_spins, Mat entries);

    int num_spins() const { return num_spins_; }
    Eigen::Index dim() const { return entries_.rows(); }
    const Mat& entries() const { return entries_; }

  private:
    int num_spins_;
    Mat entries_;
};

class Rotation3 {
  public:
    explicit Rotation3(Eigen::Matrix3d entries);

    const Eigen::Matrix3d& entries() const { return entries_; }

  private:
    Eigen::Matrix3d entries_;
};

// Euler-ZYZ chart on U(2): e^{i phi} Rz(t1) Ry(t2) Rz(t3). Surjective.
SingleSpinUnitary u2_from_params(double phi_global, double t1, double t2, double t3);

// Haar sampling via Ginibre + QR with the R-diagonal phase correction.
SingleSpinUnitary haar_random_u2(std::uint64_t seed);
GlobalUnitary haar_random_unitary(int num_spins, std::uint64_t seed);
SpinState haar_random_state(int num_spins, std::uint64_t seed);

// N-fold Kronecker power V^(x)N.
GlobalUnitary collective(const SingleSpinUnitary& v, int num_spins);

// R_ij = Tr[sigma_i V sigma_j V^dag] / 2; blind to the global phase of V.
Rotation3 pu2_to_so3(const SingleSpinUnitary& v);

double verify_collective_invariance(const SpinState& s, const SingleSpinUnitary& v,
                                    const PairFamily& family,
                                    Convention convention = Convention::SquareRoot);

struct FalsificationTrial {
    std::uint64_t trial_index = 0;
    bool control = false;  // collective unitary injected instead of Haar
    double deviation = 0.0;
};

struct FalsificationReport {
    int num_spins = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double threshold = 1e-3;
    std::vector<FalsificationTrial> haar_trials;
    std::vector<FalsificationTrial> control_trials;
    double haar_fraction_above_threshold = 0.0;
    double control_max_deviation = 0.0;
};

FalsificationReport falsification_experiment(int num_spins, int trials,
                                             const PairFamily& family,
                                             std::uint64_t seed,
                                             int control_trials = 10);

struct CollectiveDistanceResult {
    double distance = 0.0;
    SingleSpinUnitary best_v;
    int restarts = 0;
    long total_iterations = 0;
    bool converged = false;
};

// Approximate min over V in U(2) of the Frobenius distance |U - V^(x)N|
// (upper bound; derivative-free multistart search over the 4-parameter chart).
// With phase_optimized, minimizes over an extra global phase e^{i gamma}.
CollectiveDistanceResult distance_to_collective(const GlobalUnitary& u, int restarts,
                                                std::uint64_t seed,
                                                bool phase_optimized = false);

}  // namespace spinframe
