#include "spinframe/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "spinframe/fidelity.hpp"
#include "spinframe/nelder_mead.hpp"
#include "spinframe/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinframe {

void MicroMacroConfig::validate() const {
    if (total_spins < 2) throw invalid_input("micro/macro example needs at least 2 spins");
    check_spin_cap(total_spins);
    double norm_sq = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm_sq - 1.0) > 1e-12) {
        throw invalid_input("|alpha|^2 + |beta|^2 must equal 1 within 1e-12");
    }
}

SpinState micro_state(const MicroMacroConfig& cfg) {
    cfg.validate();
    Vec amps = Vec::Zero(Eigen::Index(1) << cfg.total_spins);
    amps[0] = cfg.alpha;  // |00...0>
    amps[1] = cfg.beta;   // |00...1>, superposition carried by spin M
    return SpinState(cfg.total_spins, std::move(amps));
}

SpinState macro_state(const MicroMacroConfig& cfg) {
    cfg.validate();
    const Eigen::Index dim = Eigen::Index(1) << cfg.total_spins;
    Vec amps = Vec::Zero(dim);
    amps[0] = cfg.alpha;        // |00...0>
    amps[dim - 2] = cfg.beta;   // |11...10>, spin M stays |0>
    return SpinState(cfg.total_spins, std::move(amps));
}

GlobalUnitary relabel_unitary(int total_spins) {
    check_spin_cap(total_spins);
    const std::size_t dim = std::size_t(1) << total_spins;
    const std::size_t all_ones = dim - 1;
    Mat pi = Mat::Zero(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t image = (s == 0 || s == all_ones) ? s : (~s & all_ones);
        pi(image, s) = 1.0;
    }
    return GlobalUnitary(total_spins, std::move(pi));
}

std::string to_string(TableRow row) {
    switch (row) {
        case TableRow::ExcludesSpecialSpin: return "excludes-spin-M";
        case TableRow::SpecialSpinInOne: return "M-in-exactly-one";
        case TableRow::SpecialSpinDifferentSites: return "M-in-both-different-sites";
        case TableRow::SpecialSpinSameSite: return "M-in-both-same-site";
    }
    return "?";
}

namespace {

int position_of(const SubsystemSpec& spec, int spin) {
    const auto& idx = spec.indices();
    auto it = std::find(idx.begin(), idx.end(), spin);
    return it == idx.end() ? -1 : static_cast<int>(it - idx.begin());
}

}  // namespace

std::vector<TableEntry> micromacro_table(const MicroMacroConfig& cfg,
                                         const PairFamily& family, Convention convention,
                                         double tol) {
    cfg.validate();
    const int m = cfg.total_spins;
    const SpinState phi = micro_state(cfg);
    const SpinState phi_prime = macro_state(cfg);
    const double a_sq = std::norm(cfg.alpha);

    const auto pairs = enumerate_pairs(m, family);
    std::vector<TableEntry> table(pairs.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs.size()); ++i) {
        const auto& [a, b] = pairs[i];
        const int pos_a = position_of(a, m);
        const int pos_b = position_of(b, m);

        TableRow row;
        double expected_sq;  // claimed common value in the squared convention
        if (pos_a < 0 && pos_b < 0) {
            row = TableRow::ExcludesSpecialSpin;
            expected_sq = 1.0;
        } else if (pos_a < 0 || pos_b < 0) {
            row = TableRow::SpecialSpinInOne;
            expected_sq = a_sq;
        } else if (pos_a != pos_b) {
            row = TableRow::SpecialSpinDifferentSites;
            expected_sq = a_sq * a_sq;
        } else {
            row = TableRow::SpecialSpinSameSite;
            expected_sq = 1.0;
        }
        double expected =
            convention == Convention::Squared ? expected_sq : std::sqrt(expected_sq);

        double v_phi = fidelity(reduce(phi, a), reduce(phi, b));
        double v_phi_prime = fidelity(reduce(phi_prime, a), reduce(phi_prime, b));
        if (convention == Convention::Squared) {
            v_phi *= v_phi;
            v_phi_prime *= v_phi_prime;
        }

        TableEntry entry;
        entry.pair = PairKey::canonical(a, b);
        entry.row = row;
        entry.value_phi = v_phi;
        entry.value_phi_prime = v_phi_prime;
        entry.expected = expected;
        entry.match = std::abs(v_phi - expected) <= tol &&
                      std::abs(v_phi_prime - expected) <= tol;
        table[i] = entry;
    }
    return table;
}

namespace {

std::vector<SpinState> structured_witness_library(int n) {
    std::vector<SpinState> lib;
    const Eigen::Index dim = Eigen::Index(1) << n;

    auto from_amps = [&](Vec v) {
        v /= v.norm();
        lib.emplace_back(n, std::move(v));
    };

    // All-zeros, all-ones, single-excitation basis states.
    for (Eigen::Index idx : {Eigen::Index(0), dim - 1}) {
        Vec v = Vec::Zero(dim);
        v[idx] = 1.0;
        from_amps(std::move(v));
    }
    for (int i = 0; i < n; ++i) {
        Vec v = Vec::Zero(dim);
        v[Eigen::Index(1) << i] = 1.0;
        from_amps(std::move(v));
    }
    // |0...0> superposed with each single excitation.
    for (int i = 0; i < n; ++i) {
        Vec v = Vec::Zero(dim);
        v[0] = 1.0;
        v[Eigen::Index(1) << i] = 1.0;
        from_amps(std::move(v));
    }
    // Uniform superposition, GHZ, W.
    from_amps(Vec::Ones(dim));
    {
        Vec v = Vec::Zero(dim);
        v[0] = 1.0;
        v[dim - 1] = 1.0;
        from_amps(std::move(v));
    }
    {
        Vec v = Vec::Zero(dim);
        for (int i = 0; i < n; ++i) v[Eigen::Index(1) << i] = 1.0;
        from_amps(std::move(v));
    }
    return lib;
}

}  // namespace

WitnessResult non_collectivity_witness(const GlobalUnitary& u, const PairFamily& family,
                                       int attempts, std::uint64_t seed, double threshold,
                                       Convention convention) {
    if (attempts < 1) throw invalid_input("attempts must be >= 1");
    const int n = u.num_spins();

    std::vector<SpinState> candidates = structured_witness_library(n);
    if (static_cast<int>(candidates.size()) > attempts) {
        candidates.erase(candidates.begin() + attempts, candidates.end());
    }
    for (int i = static_cast<int>(candidates.size()); i < attempts; ++i) {
        candidates.push_back(haar_random_state(n, splitmix64(seed ^ (0x4000 + i))));
    }

    std::vector<double> deviations(candidates.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(candidates.size()); ++i) {
        FidelitySignature before = signature(candidates[i], family, convention);
        FidelitySignature after =
            signature(apply_unitary(candidates[i], u), family, convention);
        deviations[i] = signature_distance(before, after);
    }

    WitnessResult result;
    result.attempts_used = static_cast<int>(candidates.size());
    std::size_t best = 0;
    for (std::size_t i = 1; i < deviations.size(); ++i) {
        if (deviations[i] > deviations[best]) best = i;
    }
    result.deviation = deviations[best];
    result.witness = candidates[best];
    result.found = result.deviation > threshold;
    return result;
}

namespace {

SpinState state_from_params(int n, const Eigen::VectorXd& p) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    Vec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = cplx(p[2 * i], p[2 * i + 1]);
    }
    double norm = v.norm();
    if (norm < 1e-8) {
        v = Vec::Zero(dim);
        v[0] = 1.0;
    } else {
        v /= norm;
    }
    return SpinState(n, std::move(v));
}

// Global-phase gauge: largest-magnitude amplitude made real nonnegative.
SpinState fix_phase(const SpinState& s) {
    Vec v = s.amplitudes();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    cplx pivot = v[best];
    if (std::abs(pivot) > 0.0) v *= std::conj(pivot) / std::abs(pivot);
    return SpinState(s.num_spins(), std::move(v));
}

}  // namespace

SearchResult search_state_with_signature(const FidelitySignature& target, int num_spins,
                                         const SearchConfig& cfg) {
    if (target.num_spins() != num_spins) {
        throw invalid_input("target signature spin count does not match");
    }
    check_spin_cap(num_spins);
    if (cfg.restarts < 1) throw invalid_input("restarts must be >= 1");

    const Eigen::Index dim = Eigen::Index(1) << num_spins;
    const PairFamily& family = target.family();
    const Convention convention = target.convention();

    auto objective = [&](const Eigen::VectorXd& p) {
        SpinState s = state_from_params(num_spins, p);
        FidelitySignature sig = signature(s, family, convention);
        double sum = 0.0;
        auto it_t = target.entries().begin();
        auto it_s = sig.entries().begin();
        for (; it_t != target.entries().end(); ++it_t, ++it_s) {
            double d = it_t->second - it_s->second;
            sum += d * d;
        }
        return sum;
    };

    std::vector<NelderMeadResult> results(cfg.restarts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < cfg.restarts; ++r) {
        auto rng = substream(cfg.seed, 0x5000 + r);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::VectorXd start(2 * dim);
        for (Eigen::Index i = 0; i < start.size(); ++i) start[i] = gauss(rng);

        NelderMeadOptions opts;
        opts.max_iters = cfg.max_iters;
        opts.diameter_tol = 1e-10;
        opts.initial_step = 0.5;
        NelderMeadResult best = nelder_mead(objective, start, opts);
        // Re-seed the simplex at the found point a few times; Nelder-Mead
        // stalls in this many dimensions when the simplex collapses early.
        for (int round = 0; round < 3 && best.value > 1e-10; ++round) {
            NelderMeadOptions again = opts;
            again.initial_step = 0.1 / (round + 1);
            NelderMeadResult next = nelder_mead(objective, best.x, again);
            next.iterations += best.iterations;
            if (next.value < best.value) {
                best = next;
            } else {
                best.iterations = next.iterations;
            }
        }
        results[r] = best;
    }

    int best = 0;
    long total_iters = 0;
    std::vector<double> trace;
    double running = std::numeric_limits<double>::infinity();
    for (int r = 0; r < cfg.restarts; ++r) {
        total_iters += results[r].iterations;
        if (results[r].value < results[best].value) best = r;
        running = std::min(running, results[r].value);
        trace.push_back(running);
    }

    SearchResult out{fix_phase(state_from_params(num_spins, results[best].x)),
                     results[best].value,
                     best,
                     total_iters,
                     results[best].converged,
                     std::move(trace)};
    return out;
}

}  // namespace spinframe
