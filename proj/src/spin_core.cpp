#include "spinframe/spin_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "spinframe/symmetry.hpp"

namespace spinframe {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenFloor = -1e-9;

int read_cap_from_env() {
    int cap = kDefaultMaxSpins;
    if (const char* env = std::getenv("SPINFRAME_MAX_SPINS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) {
            // The env var may lower the cap, never raise it.
            cap = std::min<long>(v, cap);
        }
    }
    return std::min(cap, kHardMaxSpins);
}

}  // namespace

int max_spins() {
    static const int cap = read_cap_from_env();
    return cap;
}

void check_spin_cap(int n) {
    if (n < 1) throw invalid_input("spin count must be positive, got " + std::to_string(n));
    if (n > max_spins()) {
        throw cap_exceeded("spin count " + std::to_string(n) +
                           " exceeds the cap of " + std::to_string(max_spins()));
    }
}

SpinState::SpinState(int num_spins, Vec amplitudes)
    : num_spins_(num_spins), amplitudes_(std::move(amplitudes)) {
    check_spin_cap(num_spins_);
    const Eigen::Index expected = Eigen::Index(1) << num_spins_;
    if (amplitudes_.size() != expected) {
        throw invalid_input("amplitude vector has length " +
                            std::to_string(amplitudes_.size()) + ", expected " +
                            std::to_string(expected));
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTol) {
        throw invalid_input("state norm deviates from 1 by more than 1e-10");
    }
}

bool SpinState::approx_equal(const SpinState& other, double tol) const {
    if (num_spins_ != other.num_spins_) return false;
    return (amplitudes_ - other.amplitudes_).lpNorm<Eigen::Infinity>() <= tol;
}

DensityMatrix::DensityMatrix(int num_spins, Mat entries)
    : num_spins_(num_spins), entries_(std::move(entries)) {
    check_spin_cap(num_spins_);
    const Eigen::Index expected = Eigen::Index(1) << num_spins_;
    if (entries_.rows() != expected || entries_.cols() != expected) {
        throw invalid_input("density matrix dimension mismatch");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
        throw invalid_input("density matrix is not Hermitian within 1e-10");
    }
    if (std::abs(entries_.trace().real() - 1.0) > kTraceTol ||
        std::abs(entries_.trace().imag()) > kTraceTol) {
        throw invalid_input("density matrix trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < kEigenFloor) {
        throw invalid_input("density matrix has an eigenvalue below -1e-9");
    }
}

SubsystemSpec::SubsystemSpec(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw invalid_input("subsystem spec must be non-empty");
    std::set<int> seen;
    for (int idx : indices_) {
        if (idx < 1) throw invalid_input("spin indices are 1-based; got " + std::to_string(idx));
        if (!seen.insert(idx).second) {
            throw invalid_input("duplicated spin index " + std::to_string(idx));
        }
    }
}

bool SubsystemSpec::contains(int spin) const {
    return std::find(indices_.begin(), indices_.end(), spin) != indices_.end();
}

void SubsystemSpec::validate_for(int num_spins) const {
    for (int idx : indices_) {
        if (idx > num_spins) {
            throw invalid_input("spin index " + std::to_string(idx) +
                                " out of range for " + std::to_string(num_spins) + " spins");
        }
    }
}

SpinState basis_state(const std::vector<int>& bits) {
    if (bits.empty()) throw invalid_input("basis state needs at least one bit");
    const int n = static_cast<int>(bits.size());
    check_spin_cap(n);
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw invalid_input("basis bits must be 0 or 1");
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    Vec amps = Vec::Zero(Eigen::Index(1) << n);
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return SpinState(n, std::move(amps));
}

SpinState tensor(const SpinState& a, const SpinState& b) {
    const int n = a.num_spins() + b.num_spins();
    check_spin_cap(n);
    Vec out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        out.segment(i * b.dim(), b.dim()) = a.amplitudes()[i] * b.amplitudes();
    }
    return SpinState(n, std::move(out));
}

DensityMatrix density(const SpinState& s) {
    Mat rho = s.amplitudes() * s.amplitudes().adjoint();
    return DensityMatrix(s.num_spins(), std::move(rho));
}

namespace {

// Basis-index masks for a subsystem assignment. Spin i (1-based) sits at bit
// position N - i. Sub-index position j (MSB-first) maps to spin spec[j].
std::vector<std::size_t> keep_masks(int num_spins, const SubsystemSpec& spec) {
    const int k = spec.size();
    std::vector<std::size_t> masks(std::size_t(1) << k, 0);
    for (std::size_t a = 0; a < masks.size(); ++a) {
        std::size_t m = 0;
        for (int j = 0; j < k; ++j) {
            if ((a >> (k - 1 - j)) & 1u) m |= std::size_t(1) << (num_spins - spec[j]);
        }
        masks[a] = m;
    }
    return masks;
}

std::vector<std::size_t> env_masks(int num_spins, const SubsystemSpec& spec) {
    std::vector<int> complement;
    for (int i = 1; i <= num_spins; ++i) {
        if (!spec.contains(i)) complement.push_back(i);
    }
    const int r = static_cast<int>(complement.size());
    std::vector<std::size_t> masks(std::size_t(1) << r, 0);
    for (std::size_t e = 0; e < masks.size(); ++e) {
        std::size_t m = 0;
        for (int j = 0; j < r; ++j) {
            if ((e >> (r - 1 - j)) & 1u) m |= std::size_t(1) << (num_spins - complement[j]);
        }
        masks[e] = m;
    }
    return masks;
}

}  // namespace

DensityMatrix reduce(const SpinState& s, const SubsystemSpec& spec) {
    spec.validate_for(s.num_spins());
    const auto keep = keep_masks(s.num_spins(), spec);
    const auto env = env_masks(s.num_spins(), spec);
    const Eigen::Index dim = static_cast<Eigen::Index>(keep.size());
    const Vec& psi = s.amplitudes();

    Mat rho = Mat::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b <= a; ++b) {
            cplx sum = 0.0;
            for (std::size_t m : env) {
                sum += psi[static_cast<Eigen::Index>(keep[a] | m)] *
                       std::conj(psi[static_cast<Eigen::Index>(keep[b] | m)]);
            }
            rho(a, b) = sum;
            rho(b, a) = std::conj(sum);
        }
    }
    return DensityMatrix(spec.size(), std::move(rho));
}

DensityMatrix reduce(const DensityMatrix& rho, const SubsystemSpec& spec) {
    spec.validate_for(rho.num_spins());
    const auto keep = keep_masks(rho.num_spins(), spec);
    const auto env = env_masks(rho.num_spins(), spec);
    const Eigen::Index dim = static_cast<Eigen::Index>(keep.size());

    Mat out = Mat::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b < dim; ++b) {
            cplx sum = 0.0;
            for (std::size_t m : env) {
                sum += rho.entries()(static_cast<Eigen::Index>(keep[a] | m),
                                     static_cast<Eigen::Index>(keep[b] | m));
            }
            out(a, b) = sum;
        }
    }
    // Re-hermitize to absorb floating-point asymmetry before validation.
    Mat sym = 0.5 * (out + out.adjoint().eval());
    return DensityMatrix(spec.size(), std::move(sym));
}

SpinState apply_unitary(const SpinState& s, const GlobalUnitary& u) {
    if (u.dim() != s.dim()) {
        throw dimension_mismatch("unitary dimension " + std::to_string(u.dim()) +
                                 " does not match state dimension " +
                                 std::to_string(s.dim()));
    }
    Vec out = u.entries() * s.amplitudes();
    return SpinState(s.num_spins(), std::move(out));
}

}  // namespace spinframe
