#include "spinframe/ref.hpp"

#include "spinframe/fidelity.hpp"

namespace spinframe::ref {

DensityMatrix reduce_via_full_density(const SpinState& s, const SubsystemSpec& spec) {
    spec.validate_for(s.num_spins());
    const int n = s.num_spins();
    const int k = spec.size();
    const std::size_t full_dim = std::size_t(1) << n;
    const Eigen::Index sub_dim = Eigen::Index(1) << k;

    // Full |s><s| first, then literal index-by-index summation: keep the
    // matrix element whenever the traced-out bits agree on both sides.
    Mat full = s.amplitudes() * s.amplitudes().adjoint();

    auto bit_of = [n](std::size_t index, int spin) {
        return (index >> (n - spin)) & std::size_t(1);
    };
    auto sub_index_of = [&](std::size_t index) {
        Eigen::Index sub = 0;
        for (int pos = 0; pos < k; ++pos) {
            sub = (sub << 1) | static_cast<Eigen::Index>(bit_of(index, spec[pos]));
        }
        return sub;
    };

    Mat out = Mat::Zero(sub_dim, sub_dim);
    for (std::size_t i = 0; i < full_dim; ++i) {
        for (std::size_t j = 0; j < full_dim; ++j) {
            bool env_match = true;
            for (int spin = 1; spin <= n && env_match; ++spin) {
                if (!spec.contains(spin) && bit_of(i, spin) != bit_of(j, spin)) {
                    env_match = false;
                }
            }
            if (env_match) out(sub_index_of(i), sub_index_of(j)) += full(i, j);
        }
    }
    Mat sym = 0.5 * (out + out.adjoint().eval());
    return DensityMatrix(k, std::move(sym));
}

FidelitySignature signature_serial(const SpinState& s, const PairFamily& family,
                                   Convention convention) {
    std::map<PairKey, double> entries;
    for (const auto& [a, b] : enumerate_pairs(s.num_spins(), family)) {
        double f = fidelity(reduce_via_full_density(s, a), reduce_via_full_density(s, b));
        if (convention == Convention::Squared) f *= f;
        entries[PairKey::canonical(a, b)] = f;
    }
    return FidelitySignature(s.num_spins(), convention, family, std::move(entries));
}

}  // namespace spinframe::ref
