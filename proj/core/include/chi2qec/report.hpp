#pragma once

// JSON forms of every report the tool emits.  The envelope and payloads are
// described by report.schema.json at the repository root.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chi2qec/acceptance.hpp"
#include "chi2qec/bounds.hpp"
#include "chi2qec/codes.hpp"
#include "chi2qec/errors.hpp"
#include "chi2qec/gates.hpp"
#include "chi2qec/syndromes.hpp"

namespace chi2qec {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "1.0";

// {"tool", "version", "command", "pass", "result"}.
json envelope(const std::string& command, bool pass, json result);

// name, parameters, layout, codewords as [basis-string, re, im] triples.
json to_json(const CodeSpec& code);
json to_json(const SynthesisReport& report);
// alpha as row-major [re, im] pairs.
json to_json(const KLReport& report);
json to_json(const SyndromeRecord& record);
json syndrome_table_json(const CodeSpec& code, const std::vector<SyndromeRecord>& table, int order);
json to_json(const RecoveryTrials& trials);
json to_json(const GateCheck& check);
json to_json(const BoundRow& row);
json to_json(const TheoremCheck& check);
json to_json(const SaturationReport& report);
json to_json(const CriterionResult& result);

}  // namespace chi2qec
