#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spinframe/fidelity.hpp"
#include "spinframe/symmetry.hpp"

namespace spinframe {

// A laboratory frame: either collective-from-V or an explicit global unitary.
struct LabFrame {
    std::string id;
    std::variant<SingleSpinUnitary, GlobalUnitary> frame;

    bool is_collective() const {
        return std::holds_alternative<SingleSpinUnitary>(frame);
    }
};

struct GameConfig {
    SpinState global_state;
    SubsystemSpec spec_a;
    SubsystemSpec spec_b;
    double prior = 0.5;  // probability of procedure A
    std::vector<LabFrame> labs;
    long trials = 10000;
    std::uint64_t seed = 0;

    int total_spins() const { return global_state.num_spins(); }
    void validate() const;
};

struct LabReport {
    std::string lab_id;
    bool collective_frame = false;
    DensityMatrix rho_a;
    DensityMatrix rho_b;
    double pair_fidelity = 0.0;
    double analytic_p_err = 0.0;
    double mc_p_err = 0.0;
    double mc_std_err = 0.0;
    long trials = 0;
};

// Lab-frame pair: frame unitary applied to the global state, then reduced.
std::pair<DensityMatrix, DensityMatrix> lab_frame_pair(const GameConfig& cfg,
                                                       const LabFrame& lab);

std::vector<LabReport> run_game(const GameConfig& cfg);

struct Postulate1Result {
    double max_spread = 0.0;
    bool pass = false;
    bool all_collective = false;
    std::vector<LabReport> reports;
};

// Max over lab pairs of |analytic error difference|; passes iff <= 1e-10.
Postulate1Result postulate1_check(const GameConfig& cfg, double tol = 1e-10);

}  // namespace spinframe
