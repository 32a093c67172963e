#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinframe/spin_core.hpp"

namespace spinframe {

enum class Convention { SquareRoot, Squared };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

// Canonical subsystem-pair key: tuples stored with a <= b lexicographically.
struct PairKey {
    std::vector<int> a;
    std::vector<int> b;

    static PairKey canonical(const SubsystemSpec& x, const SubsystemSpec& y);

    friend bool operator==(const PairKey&, const PairKey&) = default;
    friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

enum class FamilyMode { SingleSpin, SortedSubsets, OrderedTuples, Explicit };

struct PairFamily {
    FamilyMode mode = FamilyMode::SingleSpin;
    int subsystem_size = 1;            // k, for SortedSubsets / OrderedTuples
    bool overlap_allowed = true;
    std::size_t enumeration_cap = 20000;  // OrderedTuples pair-count cap
    std::vector<std::pair<SubsystemSpec, SubsystemSpec>> explicit_pairs;

    static PairFamily single_spin(bool overlap_allowed = true);
    static PairFamily sorted_subsets(int k, bool overlap_allowed);
    static PairFamily ordered_tuples(int k, bool overlap_allowed,
                                     std::size_t cap = 20000);
    static PairFamily explicit_pairs_of(
        std::vector<std::pair<SubsystemSpec, SubsystemSpec>> pairs);

    bool operator==(const PairFamily& other) const;
};

// Deterministic, duplicate-free enumeration of equal-size pairs; excludes
// identical ordered pairs (A, A).
std::vector<std::pair<SubsystemSpec, SubsystemSpec>> enumerate_pairs(
    int num_spins, const PairFamily& family);

class FidelitySignature {
  public:
    FidelitySignature(int num_spins, Convention convention, PairFamily family,
                      std::map<PairKey, double> entries);

    int num_spins() const { return num_spins_; }
    Convention convention() const { return convention_; }
    const PairFamily& family() const { return family_; }
    const std::map<PairKey, double>& entries() const { return entries_; }

  private:
    int num_spins_;
    Convention convention_;
    PairFamily family_;
    std::map<PairKey, double> entries_;
};

FidelitySignature signature(const SpinState& s, const PairFamily& family,
                            Convention convention = Convention::SquareRoot);

struct SignatureDifference {
    PairKey key;
    double value_1 = 0.0;
    double value_2 = 0.0;
    double abs_difference = 0.0;
};

struct SignatureDistanceReport {
    double max_abs_difference = 0.0;
    std::vector<SignatureDifference> per_key;
};

double signature_distance(const FidelitySignature& s1, const FidelitySignature& s2);
SignatureDistanceReport signature_distance_report(const FidelitySignature& s1,
                                                  const FidelitySignature& s2);
bool signatures_equal(const FidelitySignature& s1, const FidelitySignature& s2,
                      double tol);

}  // namespace spinframe
