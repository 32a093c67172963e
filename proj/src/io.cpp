#include "spinframe/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace spinframe {

using nlohmann::json;

std::string serialize_state(const SpinState& s) {
    json doc;
    doc["num_spins"] = s.num_spins();
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        amps.push_back({s.amplitudes()[i].real(), s.amplitudes()[i].imag()});
    }
    doc["amplitudes"] = std::move(amps);
    return doc.dump(2);
}

SpinState parse_state(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw malformed_document_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("num_spins") || !doc.contains("amplitudes") ||
        !doc["num_spins"].is_number_integer() || !doc["amplitudes"].is_array()) {
        throw malformed_document_error("state document needs num_spins and amplitudes");
    }
    const int n = doc["num_spins"].get<int>();
    if (n < 1 || n > kHardMaxSpins) {
        throw malformed_document_error("num_spins out of range");
    }
    const auto& amps = doc["amplitudes"];
    const std::size_t expected = std::size_t(1) << n;
    if (amps.size() != expected) {
        throw amplitude_count_error("expected " + std::to_string(expected) +
                                    " amplitudes, found " + std::to_string(amps.size()));
    }
    Vec v(static_cast<Eigen::Index>(expected));
    for (std::size_t i = 0; i < expected; ++i) {
        const auto& pair = amps[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number()) {
            throw malformed_document_error("amplitudes must be [re, im] pairs");
        }
        v[static_cast<Eigen::Index>(i)] = cplx(pair[0].get<double>(), pair[1].get<double>());
    }
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-8) {
        throw norm_violation_error("amplitude vector norm deviates from 1 by more than 1e-8");
    }
    // Renormalize only when needed so exact round-trips stay bit-identical.
    if (std::abs(norm - 1.0) > 1e-10) v /= norm;
    return SpinState(n, std::move(v));
}

json family_to_json(const PairFamily& family) {
    json j;
    switch (family.mode) {
        case FamilyMode::SingleSpin: j["mode"] = "single"; break;
        case FamilyMode::SortedSubsets: j["mode"] = "subsets"; break;
        case FamilyMode::OrderedTuples: j["mode"] = "tuples"; break;
        case FamilyMode::Explicit: j["mode"] = "explicit"; break;
    }
    j["k"] = family.subsystem_size;
    j["overlap_allowed"] = family.overlap_allowed;
    if (family.mode == FamilyMode::OrderedTuples) j["cap"] = family.enumeration_cap;
    if (family.mode == FamilyMode::Explicit) {
        json pairs = json::array();
        for (const auto& [a, b] : family.explicit_pairs) {
            pairs.push_back({{"a", a.indices()}, {"b", b.indices()}});
        }
        j["pairs"] = std::move(pairs);
    }
    return j;
}

PairFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("mode") || !j["mode"].is_string()) {
        throw malformed_document_error("pair family needs a mode string");
    }
    const std::string mode = j["mode"].get<std::string>();
    const bool overlap = j.value("overlap_allowed", true);
    const int k = j.value("k", 1);
    if (mode == "single") return PairFamily::single_spin(overlap);
    if (mode == "subsets") return PairFamily::sorted_subsets(k, overlap);
    if (mode == "tuples") {
        return PairFamily::ordered_tuples(k, overlap, j.value("cap", std::size_t{20000}));
    }
    if (mode == "explicit") {
        std::vector<std::pair<SubsystemSpec, SubsystemSpec>> pairs;
        for (const auto& p : j.value("pairs", json::array())) {
            pairs.emplace_back(SubsystemSpec(p.at("a").get<std::vector<int>>()),
                               SubsystemSpec(p.at("b").get<std::vector<int>>()));
        }
        return PairFamily::explicit_pairs_of(std::move(pairs));
    }
    throw malformed_document_error("unknown pair family mode: " + mode);
}

std::string serialize_signature(const FidelitySignature& sig) {
    json doc;
    doc["num_spins"] = sig.num_spins();
    doc["convention"] = to_string(sig.convention());
    doc["family"] = family_to_json(sig.family());
    json entries = json::array();
    for (const auto& [key, value] : sig.entries()) {
        entries.push_back({{"a", key.a}, {"b", key.b}, {"value", value}});
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2);
}

FidelitySignature parse_signature(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw malformed_document_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("num_spins") || !doc.contains("convention") ||
        !doc.contains("family") || !doc.contains("entries")) {
        throw malformed_document_error("signature document is missing required fields");
    }
    std::map<PairKey, double> entries;
    for (const auto& e : doc["entries"]) {
        PairKey key{e.at("a").get<std::vector<int>>(), e.at("b").get<std::vector<int>>()};
        entries[key] = e.at("value").get<double>();
    }
    return FidelitySignature(doc["num_spins"].get<int>(),
                             convention_from_string(doc["convention"].get<std::string>()),
                             family_from_json(doc["family"]), std::move(entries));
}

json falsification_report_to_json(const FalsificationReport& report) {
    json doc;
    doc["num_spins"] = report.num_spins;
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["threshold"] = report.threshold;
    doc["haar_fraction_above_threshold"] = report.haar_fraction_above_threshold;
    doc["control_max_deviation"] = report.control_max_deviation;
    auto trials_json = [](const std::vector<FalsificationTrial>& trials) {
        json arr = json::array();
        for (const auto& t : trials) {
            arr.push_back({{"trial", t.trial_index}, {"control", t.control},
                           {"deviation", t.deviation}});
        }
        return arr;
    };
    doc["haar_trials"] = trials_json(report.haar_trials);
    doc["control_trials"] = trials_json(report.control_trials);
    return doc;
}

json collective_distance_to_json(const CollectiveDistanceResult& result) {
    json doc;
    doc["distance"] = result.distance;
    doc["restarts"] = result.restarts;
    doc["total_iterations"] = result.total_iterations;
    doc["converged"] = result.converged;
    json v = json::array();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            v.push_back({result.best_v.entries()(i, j).real(),
                         result.best_v.entries()(i, j).imag()});
        }
    }
    doc["best_v"] = std::move(v);
    return doc;
}

json table_to_json(const std::vector<TableEntry>& table) {
    json arr = json::array();
    for (const auto& entry : table) {
        arr.push_back({{"pair", {{"a", entry.pair.a}, {"b", entry.pair.b}}},
                       {"row", to_string(entry.row)},
                       {"value_phi", entry.value_phi},
                       {"value_phi_prime", entry.value_phi_prime},
                       {"expected", entry.expected},
                       {"match", entry.match}});
    }
    return arr;
}

json lab_reports_to_json(const std::vector<LabReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        arr.push_back({{"lab", r.lab_id},
                       {"collective_frame", r.collective_frame},
                       {"pair_fidelity", r.pair_fidelity},
                       {"analytic_p_err", r.analytic_p_err},
                       {"mc_p_err", r.mc_p_err},
                       {"mc_std_err", r.mc_std_err},
                       {"trials", r.trials}});
    }
    return arr;
}

std::string dump_json(const json& j) { return j.dump(2); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace spinframe
