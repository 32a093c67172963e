#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "spinframe/equivalence.hpp"
#include "spinframe/ref.hpp"
#include "spinframe/signature.hpp"
#include "spinframe/symmetry.hpp"

using namespace spinframe;

namespace {

// Exhaustive enumeration oracle: brute-force all index-vector pairs and count
// the ones the family should accept.
std::size_t count_subset_pairs_oracle(int n, int k, bool overlap) {
    std::vector<std::vector<int>> subsets;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> subset;
        for (int i = 1; i <= n; ++i) {
            if (mask & (1 << (i - 1))) subset.push_back(i);
        }
        if (static_cast<int>(subset.size()) == k) subsets.push_back(subset);
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
            if (!overlap) {
                std::vector<int> inter;
                std::set_intersection(subsets[i].begin(), subsets[i].end(),
                                      subsets[j].begin(), subsets[j].end(),
                                      std::back_inserter(inter));
                if (!inter.empty()) continue;
            }
            ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("enumerate_pairs counts") {
    CHECK(enumerate_pairs(3, PairFamily::single_spin()).size() == 3);

    CHECK(enumerate_pairs(4, PairFamily::sorted_subsets(2, false)).size() ==
          count_subset_pairs_oracle(4, 2, false));
    CHECK(enumerate_pairs(4, PairFamily::sorted_subsets(2, false)).size() == 3);

    CHECK(enumerate_pairs(4, PairFamily::sorted_subsets(2, true)).size() ==
          count_subset_pairs_oracle(4, 2, true));
    CHECK(enumerate_pairs(4, PairFamily::sorted_subsets(2, true)).size() == 15);
}

TEST_CASE("enumerate_pairs is deterministic and duplicate-free") {
    auto pairs = enumerate_pairs(4, PairFamily::ordered_tuples(2, true));
    CHECK(pairs == enumerate_pairs(4, PairFamily::ordered_tuples(2, true)));
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (const auto& [a, b] : pairs) {
        CHECK(a.size() == b.size());
        CHECK(!(a == b));
        CHECK(seen.insert({a.indices(), b.indices()}).second);
    }
}

TEST_CASE("enumerate_pairs enforces the ordered-tuple cap") {
    CHECK_THROWS_AS(enumerate_pairs(4, PairFamily::ordered_tuples(2, true, 10)),
                    enumeration_too_large);
    try {
        enumerate_pairs(4, PairFamily::ordered_tuples(2, true, 10));
    } catch (const enumeration_too_large& e) {
        CHECK(e.pair_count >= 10);
        CHECK(std::string(e.what()).find(std::to_string(e.pair_count)) != std::string::npos);
    }
}

TEST_CASE("signature of simple states") {
    auto sig = signature(basis_state({0, 0, 0}), PairFamily::single_spin());
    for (const auto& [key, value] : sig.entries()) {
        CHECK(value == doctest::Approx(1.0).epsilon(1e-12));
    }

    Vec bell = Vec::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    auto sig_bell = signature(SpinState(2, bell), PairFamily::single_spin());
    CHECK(sig_bell.entries().size() == 1);
    CHECK(sig_bell.entries().begin()->second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("signature of the magnet state matches the 0.36 / 1 pattern") {
    MicroMacroConfig cfg{4, 0.6, 0.8};
    auto sig = signature(micro_state(cfg), PairFamily::single_spin(), Convention::Squared);
    for (const auto& [key, value] : sig.entries()) {
        bool touches_last = key.a[0] == 4 || key.b[0] == 4;
        CHECK(value == doctest::Approx(touches_last ? 0.36 : 1.0).epsilon(1e-10));
    }
}

TEST_CASE("signature agrees with the serial reference") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto s = haar_random_state(4, 50 + seed);
        for (const auto& family :
             {PairFamily::single_spin(), PairFamily::sorted_subsets(2, true),
              PairFamily::ordered_tuples(2, true)}) {
            auto fast = signature(s, family, Convention::Squared);
            auto slow = ref::signature_serial(s, family, Convention::Squared);
            CHECK(signature_distance(fast, slow) < 1e-12);
        }
    }
}

TEST_CASE("signature distance and equality") {
    auto s1 = signature(basis_state({0, 0, 0}), PairFamily::single_spin());
    auto s2 = signature(basis_state({1, 1, 1}), PairFamily::single_spin());
    CHECK(signature_distance(s1, s1) == 0.0);
    CHECK(signature_distance(s1, s2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(signatures_equal(s1, s2, 1e-10));

    auto report = signature_distance_report(s1, s2);
    CHECK(report.per_key.size() == s1.entries().size());

    auto zz = signature(tensor(basis_state({0}), basis_state({0})), PairFamily::single_spin());
    Vec plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    auto zp = signature(tensor(basis_state({0}), SpinState(1, plus)),
                        PairFamily::single_spin());
    CHECK(!signatures_equal(zz, zp, 1e-3));
    CHECK(signature_distance(zz, zp) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));

    auto other_family = signature(basis_state({0, 0, 0}), PairFamily::sorted_subsets(2, true));
    CHECK_THROWS_AS(signature_distance(s1, other_family), incomparable_signatures);
    auto other_conv = signature(basis_state({0, 0, 0}), PairFamily::single_spin(),
                                Convention::Squared);
    CHECK_THROWS_AS(signature_distance(s1, other_conv), incomparable_signatures);
}

TEST_CASE("micro and macro states share the single-spin signature") {
    MicroMacroConfig cfg{4, 0.6, 0.8};
    auto sig_phi = signature(micro_state(cfg), PairFamily::single_spin());
    auto sig_phi_prime = signature(macro_state(cfg), PairFamily::single_spin());
    CHECK(signature_distance(sig_phi, sig_phi_prime) < 1e-12);
}

TEST_CASE("collective invariance of signatures") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto s = haar_random_state(4, 300 + seed);
        auto v = haar_random_u2(400 + seed);
        auto moved = apply_unitary(s, collective(v, 4));
        for (const auto& family :
             {PairFamily::single_spin(), PairFamily::ordered_tuples(2, true)}) {
            CHECK(signature_distance(signature(s, family), signature(moved, family)) < 1e-10);
        }
    }
}

TEST_CASE("permutation covariance") {
    // Relabeling spins 1<->2 on the state maps entries by key relabeling.
    auto s = haar_random_state(3, 99);
    Mat swap12 = Mat::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        int b1 = (i >> 2) & 1, b2 = (i >> 1) & 1, b3 = i & 1;
        swap12((b2 << 2) | (b1 << 1) | b3, i) = 1.0;
    }
    auto permuted = apply_unitary(s, GlobalUnitary(3, swap12));
    auto sig_s = signature(s, PairFamily::single_spin());
    auto sig_p = signature(permuted, PairFamily::single_spin());
    auto relabel = [](int i) { return i == 1 ? 2 : (i == 2 ? 1 : i); };
    for (const auto& [key, value] : sig_s.entries()) {
        PairKey mapped = PairKey::canonical(SubsystemSpec({relabel(key.a[0])}),
                                            SubsystemSpec({relabel(key.b[0])}));
        CHECK(std::abs(sig_p.entries().at(mapped) - value) < 1e-12);
    }
}

TEST_CASE("signature evaluation is deterministic") {
    auto s = haar_random_state(4, 123);
    auto a = signature(s, PairFamily::ordered_tuples(2, true));
    auto b = signature(s, PairFamily::ordered_tuples(2, true));
    auto it_b = b.entries().begin();
    for (auto it_a = a.entries().begin(); it_a != a.entries().end(); ++it_a, ++it_b) {
        CHECK(it_a->second == it_b->second);  // bit-identical
    }
}
