#include "spinframe/signature.hpp"

#include <algorithm>
#include <cmath>

#include "spinframe/fidelity.hpp"

namespace spinframe {

std::string to_string(Convention c) {
    return c == Convention::SquareRoot ? "sqrt" : "squared";
}

Convention convention_from_string(const std::string& s) {
    if (s == "sqrt" || s == "square-root") return Convention::SquareRoot;
    if (s == "squared") return Convention::Squared;
    throw invalid_input("unknown fidelity convention: " + s);
}

PairKey PairKey::canonical(const SubsystemSpec& x, const SubsystemSpec& y) {
    if (x.indices() <= y.indices()) return PairKey{x.indices(), y.indices()};
    return PairKey{y.indices(), x.indices()};
}

PairFamily PairFamily::single_spin(bool overlap_allowed) {
    PairFamily f;
    f.mode = FamilyMode::SingleSpin;
    f.overlap_allowed = overlap_allowed;
    return f;
}

PairFamily PairFamily::sorted_subsets(int k, bool overlap_allowed) {
    PairFamily f;
    f.mode = FamilyMode::SortedSubsets;
    f.subsystem_size = k;
    f.overlap_allowed = overlap_allowed;
    return f;
}

PairFamily PairFamily::ordered_tuples(int k, bool overlap_allowed, std::size_t cap) {
    PairFamily f;
    f.mode = FamilyMode::OrderedTuples;
    f.subsystem_size = k;
    f.overlap_allowed = overlap_allowed;
    f.enumeration_cap = cap;
    return f;
}

PairFamily PairFamily::explicit_pairs_of(
    std::vector<std::pair<SubsystemSpec, SubsystemSpec>> pairs) {
    PairFamily f;
    f.mode = FamilyMode::Explicit;
    for (const auto& [a, b] : pairs) {
        if (a.size() != b.size()) {
            throw invalid_input("explicit pair family requires equal tuple lengths");
        }
    }
    f.explicit_pairs = std::move(pairs);
    return f;
}

bool PairFamily::operator==(const PairFamily& other) const {
    if (mode != other.mode || overlap_allowed != other.overlap_allowed) return false;
    switch (mode) {
        case FamilyMode::SingleSpin:
            return true;
        case FamilyMode::SortedSubsets:
        case FamilyMode::OrderedTuples:
            return subsystem_size == other.subsystem_size;
        case FamilyMode::Explicit:
            return explicit_pairs == other.explicit_pairs;
    }
    return false;
}

namespace {

bool disjoint(const SubsystemSpec& a, const SubsystemSpec& b) {
    for (int idx : a.indices()) {
        if (b.contains(idx)) return false;
    }
    return true;
}

std::vector<std::vector<int>> sorted_subsets_of(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto recurse = [&](auto&& self, int start) -> void {
        if (static_cast<int>(current.size()) == k) {
            out.push_back(current);
            return;
        }
        for (int i = start; i <= n; ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 1);
    return out;
}

std::vector<std::vector<int>> ordered_tuples_of(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::vector<bool> used(n + 1, false);
    auto recurse = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) == k) {
            out.push_back(current);
            return;
        }
        for (int i = 1; i <= n; ++i) {
            if (used[i]) continue;
            used[i] = true;
            current.push_back(i);
            self(self);
            current.pop_back();
            used[i] = false;
        }
    };
    recurse(recurse);
    return out;
}

std::vector<std::pair<SubsystemSpec, SubsystemSpec>> pairs_from_list(
    const std::vector<std::vector<int>>& specs, bool overlap_allowed) {
    std::vector<std::pair<SubsystemSpec, SubsystemSpec>> out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            SubsystemSpec a(specs[i]);
            SubsystemSpec b(specs[j]);
            if (!overlap_allowed && !disjoint(a, b)) continue;
            out.emplace_back(std::move(a), std::move(b));
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<SubsystemSpec, SubsystemSpec>> enumerate_pairs(
    int num_spins, const PairFamily& family) {
    check_spin_cap(num_spins);
    const int k = family.subsystem_size;

    switch (family.mode) {
        case FamilyMode::SingleSpin: {
            std::vector<std::vector<int>> singles;
            for (int i = 1; i <= num_spins; ++i) singles.push_back({i});
            return pairs_from_list(singles, family.overlap_allowed);
        }
        case FamilyMode::SortedSubsets: {
            if (k < 1 || k > num_spins) throw invalid_input("subset size out of range");
            return pairs_from_list(sorted_subsets_of(num_spins, k),
                                   family.overlap_allowed);
        }
        case FamilyMode::OrderedTuples: {
            if (k < 1 || k > num_spins) throw invalid_input("tuple size out of range");
            if (family.enumeration_cap < 1) throw invalid_input("enumeration cap must be >= 1");
            // Tuple count alone can exceed any sane pair cap; bail early.
            std::size_t tuple_count = 1;
            for (int i = 0; i < k; ++i) tuple_count *= static_cast<std::size_t>(num_spins - i);
            if (tuple_count > 2 * family.enumeration_cap + 2) {
                std::size_t worst = tuple_count * (tuple_count - 1) / 2;
                throw enumeration_too_large(
                    "ordered-tuple enumeration would produce " + std::to_string(worst) +
                        " pairs, above the cap of " + std::to_string(family.enumeration_cap),
                    worst);
            }
            auto pairs = pairs_from_list(ordered_tuples_of(num_spins, k),
                                         family.overlap_allowed);
            if (pairs.size() > family.enumeration_cap) {
                throw enumeration_too_large(
                    "ordered-tuple enumeration produced " + std::to_string(pairs.size()) +
                        " pairs, above the cap of " + std::to_string(family.enumeration_cap),
                    pairs.size());
            }
            return pairs;
        }
        case FamilyMode::Explicit: {
            std::vector<std::pair<SubsystemSpec, SubsystemSpec>> out;
            for (const auto& [a, b] : family.explicit_pairs) {
                if (a.size() != b.size()) {
                    throw invalid_input("explicit pair with unequal tuple lengths");
                }
                if (a == b) continue;
                if (!family.overlap_allowed && !disjoint(a, b)) continue;
                a.validate_for(num_spins);
                b.validate_for(num_spins);
                bool duplicate = false;
                for (const auto& [pa, pb] : out) {
                    if ((pa == a && pb == b) || (pa == b && pb == a)) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) out.emplace_back(a, b);
            }
            return out;
        }
    }
    throw invalid_input("unknown pair family mode");
}

FidelitySignature::FidelitySignature(int num_spins, Convention convention,
                                     PairFamily family, std::map<PairKey, double> entries)
    : num_spins_(num_spins),
      convention_(convention),
      family_(std::move(family)),
      entries_(std::move(entries)) {
    for (const auto& [key, value] : entries_) {
        if (value < 0.0 || value > 1.0 + 1e-12) {
            throw invalid_input("signature value outside [0, 1 + 1e-12]");
        }
    }
}

FidelitySignature signature(const SpinState& s, const PairFamily& family,
                            Convention convention) {
    const auto pairs = enumerate_pairs(s.num_spins(), family);

    // Reduce each distinct spec once; pair evaluation then only touches the
    // cached marginals.
    std::vector<SubsystemSpec> specs;
    auto spec_index = [&](const SubsystemSpec& spec) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            if (specs[i] == spec) return i;
        }
        specs.push_back(spec);
        return specs.size() - 1;
    };
    std::vector<std::pair<std::size_t, std::size_t>> pair_indices;
    pair_indices.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        pair_indices.emplace_back(spec_index(a), spec_index(b));
    }

    std::vector<DensityMatrix> reduced;
    reduced.reserve(specs.size());
    for (const auto& spec : specs) reduced.push_back(reduce(s, spec));

    std::vector<double> values(pairs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs.size()); ++i) {
        double f = fidelity(reduced[pair_indices[i].first], reduced[pair_indices[i].second]);
        values[i] = convention == Convention::Squared ? f * f : f;
    }

    std::map<PairKey, double> entries;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        entries[PairKey::canonical(pairs[i].first, pairs[i].second)] = values[i];
    }
    return FidelitySignature(s.num_spins(), convention, family, std::move(entries));
}

SignatureDistanceReport signature_distance_report(const FidelitySignature& s1,
                                                  const FidelitySignature& s2) {
    if (s1.num_spins() != s2.num_spins() || s1.convention() != s2.convention() ||
        !(s1.family() == s2.family())) {
        throw incomparable_signatures(
            "signatures differ in spin count, convention, or pair family");
    }
    if (s1.entries().size() != s2.entries().size()) {
        throw incomparable_signatures("signatures have different key sets");
    }
    SignatureDistanceReport report;
    auto it2 = s2.entries().begin();
    for (auto it1 = s1.entries().begin(); it1 != s1.entries().end(); ++it1, ++it2) {
        if (it1->first != it2->first) {
            throw incomparable_signatures("signatures have different key sets");
        }
        double diff = std::abs(it1->second - it2->second);
        report.per_key.push_back({it1->first, it1->second, it2->second, diff});
        report.max_abs_difference = std::max(report.max_abs_difference, diff);
    }
    return report;
}

double signature_distance(const FidelitySignature& s1, const FidelitySignature& s2) {
    return signature_distance_report(s1, s2).max_abs_difference;
}

bool signatures_equal(const FidelitySignature& s1, const FidelitySignature& s2,
                      double tol) {
    return signature_distance(s1, s2) <= tol;
}

}  // namespace spinframe
