#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinframe/signature.hpp"
#include "spinframe/symmetry.hpp"

namespace spinframe {

// Magnet of M-1 spins with spin M superposed (micro) or the GHZ-like
// counterpart with the superposition spread over spins 1..M-1 (macro).
struct MicroMacroConfig {
    int total_spins = 2;  // M
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};

    void validate() const;
};

SpinState micro_state(const MicroMacroConfig& cfg);
SpinState macro_state(const MicroMacroConfig& cfg);

// Basis relabel: bitwise complement on every basis string except the all-zeros
// and all-ones strings, which stay fixed. A permutation matrix, involutive.
GlobalUnitary relabel_unitary(int total_spins);

enum class TableRow {
    ExcludesSpecialSpin,      // M in neither subsystem
    SpecialSpinInOne,         // M in exactly one
    SpecialSpinDifferentSites,  // M in both, at different tuple positions
    SpecialSpinSameSite       // M in both, at the same tuple position
};

std::string to_string(TableRow row);

struct TableEntry {
    PairKey pair;
    TableRow row;
    double value_phi = 0.0;
    double value_phi_prime = 0.0;
    double expected = 0.0;  // claimed common value under the chosen convention
    bool match = false;
};

std::vector<TableEntry> micromacro_table(const MicroMacroConfig& cfg,
                                         const PairFamily& family,
                                         Convention convention,
                                         double tol = 1e-9);

struct WitnessResult {
    bool found = false;
    std::optional<SpinState> witness;
    double deviation = 0.0;
    int attempts_used = 0;
};

// Searches structured and random states for one whose signature changes under
// the given unitary by more than the threshold; returns the best found.
WitnessResult non_collectivity_witness(const GlobalUnitary& u, const PairFamily& family,
                                       int attempts, std::uint64_t seed,
                                       double threshold = 1e-3,
                                       Convention convention = Convention::SquareRoot);

struct SearchConfig {
    int restarts = 16;
    int max_iters = 4000;
    std::uint64_t seed = 0;
};

struct SearchResult {
    SpinState state;
    double residual = 0.0;  // sum of squared per-key signature differences
    int best_restart = 0;
    long total_iterations = 0;
    bool converged = false;
    std::vector<double> residual_trace;  // best residual after each restart
};

SearchResult search_state_with_signature(const FidelitySignature& target, int num_spins,
                                         const SearchConfig& cfg);

}  // namespace spinframe
