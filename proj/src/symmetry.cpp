#include "spinframe/symmetry.hpp"

#include <Eigen/QR>
#include <cmath>
#include <limits>

#include "spinframe/fidelity.hpp"
#include "spinframe/nelder_mead.hpp"
#include "spinframe/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinframe {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_unitary(const Mat& u, double tol) {
    Mat gram = u.adjoint() * u;
    if ((gram - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > tol) {
        throw invalid_input("matrix is not unitary within tolerance");
    }
}

Mat ginibre(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            double re = gauss(rng);
            double im = gauss(rng);
            g(i, j) = cplx(re, im);
        }
    }
    return g;
}

// QR of a Ginibre matrix; multiplying Q's columns by the phases of R's
// diagonal makes the distribution Haar.
Mat haar_matrix(Eigen::Index dim, std::mt19937_64& rng) {
    Mat g = ginibre(dim, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        cplx d = r(j, j);
        double mag = std::abs(d);
        cplx phase = mag > 0.0 ? d / mag : cplx(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

}  // namespace

SingleSpinUnitary::SingleSpinUnitary(Eigen::Matrix2cd entries) : entries_(std::move(entries)) {
    check_unitary(entries_, 1e-10);
}

GlobalUnitary::GlobalUnitary(int num_spins, Mat entries)
    : num_spins_(num_spins), entries_(std::move(entries)) {
    check_spin_cap(num_spins_);
    const Eigen::Index expected = Eigen::Index(1) << num_spins_;
    if (entries_.rows() != expected || entries_.cols() != expected) {
        throw invalid_input("global unitary dimension mismatch");
    }
    check_unitary(entries_, 1e-9);
}

Rotation3::Rotation3(Eigen::Matrix3d entries) : entries_(std::move(entries)) {
    if ((entries_.transpose() * entries_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() >
        1e-10) {
        throw invalid_input("rotation matrix is not orthogonal within 1e-10");
    }
    if (std::abs(entries_.determinant() - 1.0) > 1e-10) {
        throw invalid_input("rotation matrix determinant deviates from 1");
    }
}

SingleSpinUnitary u2_from_params(double phi_global, double t1, double t2, double t3) {
    auto rz = [](double t) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 0) = std::exp(-kI * (t / 2.0));
        m(1, 1) = std::exp(kI * (t / 2.0));
        return m;
    };
    Eigen::Matrix2cd ry;
    ry << std::cos(t2 / 2.0), -std::sin(t2 / 2.0), std::sin(t2 / 2.0), std::cos(t2 / 2.0);
    Eigen::Matrix2cd u = std::exp(kI * phi_global) * (rz(t1) * ry * rz(t3)).eval();
    return SingleSpinUnitary(u);
}

SingleSpinUnitary haar_random_u2(std::uint64_t seed) {
    auto rng = substream(seed, 0);
    return SingleSpinUnitary(haar_matrix(2, rng));
}

GlobalUnitary haar_random_unitary(int num_spins, std::uint64_t seed) {
    check_spin_cap(num_spins);
    auto rng = substream(seed, 0);
    return GlobalUnitary(num_spins, haar_matrix(Eigen::Index(1) << num_spins, rng));
}

SpinState haar_random_state(int num_spins, std::uint64_t seed) {
    check_spin_cap(num_spins);
    auto rng = substream(seed, 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(Eigen::Index(1) << num_spins);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double re = gauss(rng);
        double im = gauss(rng);
        v[i] = cplx(re, im);
    }
    v /= v.norm();
    return SpinState(num_spins, std::move(v));
}

GlobalUnitary collective(const SingleSpinUnitary& v, int num_spins) {
    check_spin_cap(num_spins);
    Mat acc = v.entries();
    for (int i = 1; i < num_spins; ++i) {
        Mat next(acc.rows() * 2, acc.cols() * 2);
        next.topLeftCorner(acc.rows(), acc.cols()) = v.entries()(0, 0) * acc;
        next.topRightCorner(acc.rows(), acc.cols()) = v.entries()(0, 1) * acc;
        next.bottomLeftCorner(acc.rows(), acc.cols()) = v.entries()(1, 0) * acc;
        next.bottomRightCorner(acc.rows(), acc.cols()) = v.entries()(1, 1) * acc;
        acc.swap(next);
    }
    // Kron builds factor-by-factor with V as the more significant block each
    // time, which matches spin 1 = most significant bit.
    return GlobalUnitary(num_spins, std::move(acc));
}

Rotation3 pu2_to_so3(const SingleSpinUnitary& v) {
    const Eigen::Matrix2cd* paulis[3] = {&kPauliX, &kPauliY, &kPauliZ};
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            cplx t = 0.5 * ((*paulis[i]) * v.entries() * (*paulis[j]) *
                            v.entries().adjoint())
                               .trace();
            if (std::abs(t.imag()) > 1e-8) {
                throw numerical_consistency_error(
                    "PU(2)->SO(3) entry has imaginary residue above 1e-8");
            }
            r(i, j) = t.real();
        }
    }
    return Rotation3(r);
}

double verify_collective_invariance(const SpinState& s, const SingleSpinUnitary& v,
                                    const PairFamily& family, Convention convention) {
    GlobalUnitary lifted = collective(v, s.num_spins());
    FidelitySignature before = signature(s, family, convention);
    FidelitySignature after = signature(apply_unitary(s, lifted), family, convention);
    return signature_distance(before, after);
}

FalsificationReport falsification_experiment(int num_spins, int trials,
                                             const PairFamily& family, std::uint64_t seed,
                                             int control_trials) {
    check_spin_cap(num_spins);
    if (trials < 1) throw invalid_input("trial count must be positive");
    if (control_trials < 0) throw invalid_input("control trial count must be nonnegative");

    FalsificationReport report;
    report.num_spins = num_spins;
    report.trials = trials;
    report.seed = seed;
    report.haar_trials.resize(trials);
    report.control_trials.resize(control_trials);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < trials; ++t) {
        std::uint64_t s1 = splitmix64(seed ^ (0x1000 + t));
        SpinState state = haar_random_state(num_spins, s1);
        GlobalUnitary u = haar_random_unitary(num_spins, splitmix64(s1));
        FidelitySignature before = signature(state, family);
        FidelitySignature after = signature(apply_unitary(state, u), family);
        report.haar_trials[t] = {static_cast<std::uint64_t>(t), false,
                                 signature_distance(before, after)};
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < control_trials; ++t) {
        std::uint64_t s1 = splitmix64(seed ^ (0x2000 + t));
        SpinState state = haar_random_state(num_spins, s1);
        SingleSpinUnitary v = haar_random_u2(splitmix64(s1));
        report.control_trials[t] = {static_cast<std::uint64_t>(t), true,
                                    verify_collective_invariance(state, v, family)};
    }

    int above = 0;
    for (const auto& trial : report.haar_trials) {
        if (trial.deviation > report.threshold) ++above;
    }
    report.haar_fraction_above_threshold = trials > 0 ? double(above) / trials : 0.0;
    for (const auto& trial : report.control_trials) {
        report.control_max_deviation = std::max(report.control_max_deviation, trial.deviation);
    }
    return report;
}

CollectiveDistanceResult distance_to_collective(const GlobalUnitary& u, int restarts,
                                                std::uint64_t seed, bool phase_optimized) {
    if (restarts < 1) throw invalid_input("restarts must be >= 1");
    const int n = u.num_spins();
    const double u_sq = u.entries().squaredNorm();

    auto objective = [&](const Eigen::VectorXd& p) {
        Mat w = collective(u2_from_params(p[0], p[1], p[2], p[3]), n).entries();
        if (phase_optimized) {
            // min over gamma of |U - e^{i gamma} W|_F^2 has the closed form
            // |U|^2 + |W|^2 - 2 |Tr[W^dag U]|.
            double sq = u_sq + w.squaredNorm() - 2.0 * std::abs((w.adjoint() * u.entries()).trace());
            return std::sqrt(std::max(sq, 0.0));
        }
        return (u.entries() - w).norm();
    };

    std::vector<NelderMeadResult> results(restarts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < restarts; ++r) {
        auto rng = substream(seed, 0x3000 + r);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        Eigen::VectorXd start(4);
        if (r == 0) {
            start.setZero();
        } else {
            for (int i = 0; i < 4; ++i) start[i] = angle(rng);
        }
        NelderMeadOptions opts;
        opts.max_iters = 2000;
        opts.diameter_tol = 1e-9;
        results[r] = nelder_mead(objective, start, opts);
    }

    int best = 0;
    long total_iters = 0;
    for (int r = 0; r < restarts; ++r) {
        total_iters += results[r].iterations;
        if (results[r].value < results[best].value) best = r;
    }
    const auto& p = results[best].x;
    return CollectiveDistanceResult{results[best].value,
                                    u2_from_params(p[0], p[1], p[2], p[3]), restarts,
                                    total_iters, results[best].converged};
}

}  // namespace spinframe
