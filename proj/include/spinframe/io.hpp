#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "spinframe/equivalence.hpp"
#include "spinframe/game.hpp"
#include "spinframe/signature.hpp"
#include "spinframe/spin_core.hpp"
#include "spinframe/symmetry.hpp"

namespace spinframe {

// State file: {"num_spins": N, "amplitudes": [[re, im], ...]} with 2^N
// entries in basis-index order; writers emit 17 significant digits.
std::string serialize_state(const SpinState& s);
SpinState parse_state(const std::string& text);

std::string serialize_signature(const FidelitySignature& sig);
FidelitySignature parse_signature(const std::string& text);

nlohmann::json family_to_json(const PairFamily& family);
PairFamily family_from_json(const nlohmann::json& j);

nlohmann::json falsification_report_to_json(const FalsificationReport& report);
nlohmann::json collective_distance_to_json(const CollectiveDistanceResult& result);
nlohmann::json table_to_json(const std::vector<TableEntry>& table);
nlohmann::json lab_reports_to_json(const std::vector<LabReport>& reports);

std::string dump_json(const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace spinframe
