// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "spinframe/equivalence.hpp"
#include "spinframe/fidelity.hpp"
#include "spinframe/game.hpp"
#include "spinframe/signature.hpp"
#include "spinframe/symmetry.hpp"

using namespace spinframe;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("runtime ") +
                  std::to_string(elapsed) + "s over budget " +
                  std::to_string(budget_seconds) + "s";
    }
    std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

int main() {
    // 1. Micro/macro fidelity table, squared convention, M=4, alpha=0.6.
    criterion(1, "micro/macro fidelity table values", 1.0, [](std::string& detail) {
        MicroMacroConfig cfg{4, 0.6, 0.8};
        const double tol = 1e-9;
        bool ok = true;

        auto singles = micromacro_table(cfg, PairFamily::single_spin(), Convention::Squared);
        for (const auto& e : singles) {
            double expected = (e.pair.a[0] == 4 || e.pair.b[0] == 4) ? 0.36 : 1.0;
            ok &= std::abs(e.value_phi - expected) <= tol;
            ok &= std::abs(e.value_phi_prime - expected) <= tol;
        }

        auto tuples = micromacro_table(cfg, PairFamily::ordered_tuples(2, true),
                                       Convention::Squared);
        for (const auto& e : tuples) {
            if (e.row == TableRow::SpecialSpinDifferentSites) {
                ok &= std::abs(e.value_phi - 0.1296) <= tol;
                ok &= std::abs(e.value_phi_prime - 0.1296) <= tol;
            } else if (e.row == TableRow::SpecialSpinSameSite ||
                       e.row == TableRow::ExcludesSpecialSpin) {
                ok &= std::abs(e.value_phi - 1.0) <= tol;
                ok &= std::abs(e.value_phi_prime - 1.0) <= tol;
            }
        }
        if (!ok) detail = "a table row deviates from its claimed value";
        return ok;
    });

    // 2. Documented discrepancy on the pair (1,4) vs (2,3).
    criterion(2, "documented discrepancy (1,4) vs (2,3)", 1.0, [](std::string& detail) {
        MicroMacroConfig cfg{4, 0.6, 0.8};
        auto table = micromacro_table(
            cfg,
            PairFamily::explicit_pairs_of({{SubsystemSpec({1, 4}), SubsystemSpec({2, 3})}}),
            Convention::Squared);
        bool ok = table.size() == 1 && std::abs(table[0].value_phi - 0.36) <= 1e-9 &&
                  std::abs(table[0].value_phi_prime - 0.1296) <= 1e-9 && !table[0].match;
        if (!ok) {
            detail = "phi=" + std::to_string(table[0].value_phi) +
                     " phi'=" + std::to_string(table[0].value_phi_prime);
        }
        return ok;
    });

    // 3. Collective invariance across 100 Haar V, N in {2,3,4}, two families.
    criterion(3, "collective unitaries preserve signatures", 30.0, [](std::string& detail) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            int n = 2 + trial % 3;
            auto state = haar_random_state(n, 10000 + trial);
            auto v = haar_random_u2(20000 + trial);
            worst = std::max(worst,
                             verify_collective_invariance(state, v, PairFamily::single_spin()));
            worst = std::max(worst, verify_collective_invariance(
                                        state, v, PairFamily::ordered_tuples(2, true)));
        }
        detail = "max deviation " + std::to_string(worst);
        return worst < 1e-9;
    });

    // 4. Converse probe: Haar global unitaries break signatures.
    criterion(4, "generic unitaries break signatures", 60.0, [](std::string& detail) {
        auto report = falsification_experiment(3, 100, PairFamily::single_spin(), 31415, 10);
        detail = "haar fraction " + std::to_string(report.haar_fraction_above_threshold) +
                 ", control max " + std::to_string(report.control_max_deviation);
        return report.haar_fraction_above_threshold >= 0.99 &&
               report.control_max_deviation < 1e-9;
    });

    // 5. POVM-minimization form of the fidelity agrees with the closed form.
    criterion(5, "POVM grid oracle brackets the closed form", 10.0, [](std::string& detail) {
        for (int trial = 0; trial < 100; ++trial) {
            auto rho = reduce(haar_random_state(2, 40000 + trial), SubsystemSpec({1}));
            auto sigma = reduce(haar_random_state(2, 50000 + trial), SubsystemSpec({1}));
            double f = fidelity(rho, sigma);
            double oracle = fidelity_povm_oracle(rho, sigma, 200);
            if (oracle < f - 1e-12 || oracle - f > 1e-3) {
                detail = "trial " + std::to_string(trial) + ": closed " + std::to_string(f) +
                         " oracle " + std::to_string(oracle);
                return false;
            }
        }
        return true;
    });

    // 6. PU(2) -> SO(3): rotation properties, homomorphism, Bloch commutation.
    criterion(6, "PU(2) -> SO(3) map", 10.0, [](std::string& detail) {
        for (int trial = 0; trial < 100; ++trial) {
            auto v1 = haar_random_u2(60000 + trial);
            auto v2 = haar_random_u2(70000 + trial);
            auto r1 = pu2_to_so3(v1).entries();
            auto r2 = pu2_to_so3(v2).entries();
            if ((r1.transpose() * r1 - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() >
                    1e-10 ||
                std::abs(r1.determinant() - 1.0) > 1e-10) {
                detail = "orthogonality/determinant failure";
                return false;
            }
            auto prod = pu2_to_so3(SingleSpinUnitary(v1.entries() * v2.entries())).entries();
            if ((prod - r1 * r2).cwiseAbs().maxCoeff() > 1e-10) {
                detail = "homomorphism failure at trial " + std::to_string(trial);
                return false;
            }
            auto rho = reduce(haar_random_state(2, 80000 + trial), SubsystemSpec({1}));
            auto conj = DensityMatrix(
                1, (v1.entries() * rho.entries() * v1.entries().adjoint()).eval());
            auto b0 = bloch_vector(rho);
            auto b1 = bloch_vector(conj);
            Eigen::Vector3d mapped = r1 * Eigen::Vector3d(b0.x, b0.y, b0.z);
            if (std::abs(b1.x - mapped[0]) > 1e-10 || std::abs(b1.y - mapped[1]) > 1e-10 ||
                std::abs(b1.z - mapped[2]) > 1e-10) {
                detail = "Bloch action mismatch at trial " + std::to_string(trial);
                return false;
            }
        }
        return true;
    });

    // 7. Basis relabel: exact permutation action on the example states.
    criterion(7, "basis relabel maps micro to macro exactly", 10.0, [](std::string& detail) {
        auto pi3 = relabel_unitary(3);
        Vec micro = Vec::Zero(8);
        micro[0] = micro[1] = kInvSqrt2;
        Vec expected = Vec::Zero(8);
        expected[0] = expected[6] = kInvSqrt2;
        auto image = apply_unitary(SpinState(3, micro), pi3);
        if ((image.amplitudes() - expected).cwiseAbs().maxCoeff() != 0.0) {
            detail = "M=3 even superposition not mapped exactly";
            return false;
        }
        for (int m = 2; m <= 8; ++m) {
            MicroMacroConfig cfg{m, 0.6, 0.8};
            auto pi = relabel_unitary(m);
            auto mapped = apply_unitary(micro_state(cfg), pi);
            if ((mapped.amplitudes() - macro_state(cfg).amplitudes()).cwiseAbs().maxCoeff() !=
                0.0) {
                detail = "phi -> phi' not exact at M=" + std::to_string(m);
                return false;
            }
            if ((pi.entries() * pi.entries() -
                 Mat::Identity(pi.dim(), pi.dim()))
                    .cwiseAbs()
                    .maxCoeff() != 0.0) {
                detail = "involution not exact at M=" + std::to_string(m);
                return false;
            }
        }
        return true;
    });

    // 8. Non-collectivity witness for the relabel permutation.
    criterion(8, "witness state found for the relabel permutation", 30.0,
              [](std::string& detail) {
                  auto result = non_collectivity_witness(
                      relabel_unitary(3), PairFamily::ordered_tuples(2, true), 100, 2718, 0.1);
                  detail = "deviation " + std::to_string(result.deviation) + " in " +
                           std::to_string(result.attempts_used) + " attempts";
                  return result.found && result.deviation > 0.1;
              });

    // 9. Discrimination game: Helstrom value, Monte Carlo, frame dependence.
    criterion(9, "discrimination game and frame independence", 60.0, [](std::string& detail) {
        Vec plus(2);
        plus << kInvSqrt2, kInvSqrt2;
        GameConfig cfg{tensor(tensor(basis_state({0}), basis_state({0})), SpinState(1, plus)),
                       SubsystemSpec({1}),
                       SubsystemSpec({3}),
                       0.5,
                       {{"reference", SingleSpinUnitary(Eigen::Matrix2cd::Identity())}},
                       100000,
                       99};
        auto reports = run_game(cfg);
        const double expected = 0.5 * (1.0 - kInvSqrt2);
        if (std::abs(reports[0].analytic_p_err - expected) > 1e-12) {
            detail = "analytic " + std::to_string(reports[0].analytic_p_err);
            return false;
        }
        if (std::abs(reports[0].mc_p_err - expected) > 3 * reports[0].mc_std_err) {
            detail = "Monte Carlo outside 3 standard errors";
            return false;
        }

        auto collective_cfg = cfg;
        collective_cfg.trials = 10;
        collective_cfg.labs.clear();
        for (int i = 0; i < 5; ++i) {
            collective_cfg.labs.push_back(
                {"lab" + std::to_string(i), haar_random_u2(90000 + i)});
        }
        auto check = postulate1_check(collective_cfg);
        if (!check.pass || check.max_spread >= 1e-10) {
            detail = "collective spread " + std::to_string(check.max_spread);
            return false;
        }

        int broken = 0;
        for (int rep = 0; rep < 100; ++rep) {
            auto haar_cfg = cfg;
            haar_cfg.trials = 1;
            haar_cfg.labs = {{"identity", SingleSpinUnitary(Eigen::Matrix2cd::Identity())},
                             {"haar", haar_random_unitary(3, 95000 + rep)}};
            if (postulate1_check(haar_cfg).max_spread > 1e-3) ++broken;
        }
        detail = "haar frame broke agreement in " + std::to_string(broken) + "/100 runs";
        return broken >= 95;
    });

    // 10. Signature-constrained search recovers the magnet-state signature.
    criterion(10, "signature search reaches residual < 1e-6", 60.0, [](std::string& detail) {
        MicroMacroConfig cfg{3, 0.6, 0.8};
        auto target = signature(micro_state(cfg), PairFamily::single_spin());
        SearchConfig sc{16, 4000, 12345};
        auto result = search_state_with_signature(target, 3, sc);
        detail = "residual " + std::to_string(result.residual);
        return result.residual < 1e-6;
    });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
