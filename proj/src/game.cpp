#include "spinframe/game.hpp"

#include <cmath>

#include "spinframe/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinframe {

void GameConfig::validate() const {
    if (spec_a.size() != spec_b.size()) {
        throw invalid_input("subsystems A and B must have equal size");
    }
    spec_a.validate_for(total_spins());
    spec_b.validate_for(total_spins());
    if (spec_a.size() >= total_spins()) {
        throw invalid_input("subsystem size must be smaller than the total spin count");
    }
    if (!(prior > 0.0 && prior < 1.0)) {
        throw invalid_input("prior must lie strictly inside (0, 1)");
    }
    if (trials < 1) throw invalid_input("trial count must be positive");
    if (labs.empty()) throw invalid_input("at least one lab is required");
    for (const auto& lab : labs) {
        if (const auto* g = std::get_if<GlobalUnitary>(&lab.frame)) {
            if (g->num_spins() != total_spins()) {
                throw dimension_mismatch("lab frame unitary does not match the global state");
            }
        }
    }
}

std::pair<DensityMatrix, DensityMatrix> lab_frame_pair(const GameConfig& cfg,
                                                       const LabFrame& lab) {
    SpinState framed = [&] {
        if (const auto* v = std::get_if<SingleSpinUnitary>(&lab.frame)) {
            return apply_unitary(cfg.global_state, collective(*v, cfg.total_spins()));
        }
        return apply_unitary(cfg.global_state, std::get<GlobalUnitary>(lab.frame));
    }();
    return {reduce(framed, cfg.spec_a), reduce(framed, cfg.spec_b)};
}

std::vector<LabReport> run_game(const GameConfig& cfg) {
    cfg.validate();
    std::vector<LabReport> reports;
    reports.reserve(cfg.labs.size());

    for (std::size_t lab_idx = 0; lab_idx < cfg.labs.size(); ++lab_idx) {
        const LabFrame& lab = cfg.labs[lab_idx];
        auto [rho_a, rho_b] = lab_frame_pair(cfg, lab);
        HelstromResult hel = helstrom(rho_a, rho_b, cfg.prior);

        // Born probabilities of guessing "A" given each preparation.
        const double p_guess_a_given_a =
            std::clamp((rho_a.entries() * hel.guess_a_projector).trace().real(), 0.0, 1.0);
        const double p_guess_a_given_b =
            std::clamp((rho_b.entries() * hel.guess_a_projector).trace().real(), 0.0, 1.0);

        long errors = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : errors) schedule(static)
#endif
        for (long t = 0; t < cfg.trials; ++t) {
            auto rng = substream(cfg.seed, (lab_idx << 40) ^ static_cast<std::uint64_t>(t));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const bool prepared_a = unit(rng) < cfg.prior;
            const double p_guess_a = prepared_a ? p_guess_a_given_a : p_guess_a_given_b;
            const bool guessed_a = unit(rng) < p_guess_a;
            if (guessed_a != prepared_a) ++errors;
        }

        const double freq = static_cast<double>(errors) / cfg.trials;
        LabReport report{lab.id,
                         lab.is_collective(),
                         rho_a,
                         rho_b,
                         fidelity(rho_a, rho_b),
                         hel.error_probability,
                         freq,
                         std::sqrt(freq * (1.0 - freq) / cfg.trials),
                         cfg.trials};
        reports.push_back(std::move(report));
    }
    return reports;
}

Postulate1Result postulate1_check(const GameConfig& cfg, double tol) {
    Postulate1Result result;
    result.reports = run_game(cfg);
    result.all_collective = true;
    for (const auto& report : result.reports) {
        if (!report.collective_frame) result.all_collective = false;
    }
    double lo = result.reports.front().analytic_p_err;
    double hi = lo;
    for (const auto& report : result.reports) {
        lo = std::min(lo, report.analytic_p_err);
        hi = std::max(hi, report.analytic_p_err);
    }
    result.max_spread = hi - lo;
    result.pass = result.max_spread <= tol;
    return result;
}

}  // namespace spinframe
