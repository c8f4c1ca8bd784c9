#include "chi2qec/report.hpp"

namespace chi2qec {

json envelope(const std::string& command, bool pass, json result) {
  json j;
  j["tool"] = "chi2qec";
  j["version"] = kReportVersion;
  j["command"] = command;
  j["pass"] = pass;
  j["result"] = std::move(result);
  return j;
}

json to_json(const CodeSpec& code) {
  json j;
  j["name"] = code.name;
  j["family"] = to_string(code.family);
  j["parameters"] = {{"N", code.params.N}, {"n", code.params.n}, {"q", code.params.q},
                     {"b", code.params.b}, {"k", code.params.k}};
  json modes = json::array();
  for (std::size_t m = 0; m < code.layout.size(); ++m) {
    const Mode& mode = code.layout[m];
    modes.push_back({{"name", code.layout.mode_name(m)}, {"label", to_string(mode.label)}, {"group", mode.group}});
  }
  j["layout"] = modes;
  j["subspace_pump_number"] = code.subspace_pump_number;
  j["total_photons"] = {code.total_photons.numerator(), code.total_photons.denominator()};
  j["rate"] = code_rate(code);
  json words = json::array();
  for (const auto& w : code.logical_states) {
    json terms = json::array();
    for (const auto& [s, a] : w.support(1e-14)) terms.push_back({format_state(s), a.real(), a.imag()});
    words.push_back(terms);
  }
  j["codewords"] = words;
  return j;
}

json to_json(const SynthesisReport& report) {
  json j;
  j["dimension_trace"] = report.dimension_trace;
  j["projector_distance"] = report.projector_distance;
  j["max_codeword_residual"] = report.max_codeword_residual;
  j["codeword_leakage"] = report.codeword_leakage;
  j["subspace_equal"] = report.subspace_equal;
  json vecs = json::array();
  for (const auto& v : report.vectors) {
    json terms = json::array();
    for (const auto& [s, a] : v.support(1e-12)) terms.push_back({format_state(s), a.real(), a.imag()});
    vecs.push_back(terms);
  }
  j["vectors"] = vecs;
  return j;
}

json to_json(const KLReport& report) {
  json j;
  j["labels"] = report.labels;
  json alpha = json::array();
  for (Eigen::Index r = 0; r < report.alpha.rows(); ++r) {
    for (Eigen::Index c = 0; c < report.alpha.cols(); ++c) alpha.push_back({report.alpha(r, c).real(), report.alpha(r, c).imag()});
  }
  j["alpha"] = {{"rows", report.alpha.rows()}, {"cols", report.alpha.cols()}, {"data", alpha}};
  j["residuals"] = {{"offdiag", report.max_offdiag_residual},
                    {"distortion", report.max_distortion_residual},
                    {"strict", report.strict_residual}};
  j["tolerance"] = report.tolerance;
  j["worst_entry"] = report.worst_entry;
  j["verdict"] = report.verdict;
  return j;
}

json to_json(const SyndromeRecord& record) {
  return {{"error_label", record.label}, {"description", record.description}, {"p", record.p}, {"q", record.q}};
}

json syndrome_table_json(const CodeSpec& code, const std::vector<SyndromeRecord>& table, int order) {
  json rows = json::array();
  for (const auto& r : table) rows.push_back(to_json(r));
  return {{"code", code.name}, {"order", order}, {"baseline", to_json(baseline_syndrome(code))}, {"rows", rows}};
}

json to_json(const RecoveryTrials& t) {
  return {{"code", t.code},
          {"error_label", t.error_label},
          {"decoded", t.decoded},
          {"steps", t.steps},
          {"trials", t.trials},
          {"seed", t.seed},
          {"min_fidelity", t.min_fidelity},
          {"mean_fidelity", t.mean_fidelity},
          {"max_deviation", t.max_deviation},
          {"tolerance", t.tolerance},
          {"pass", t.pass}};
}

json to_json(const GateCheck& g) {
  return {{"name", g.name},
          {"group", g.group},
          {"decomposition", g.decomposition},
          {"generator_set", g.generator_set},
          {"max_deviation", g.max_deviation},
          {"global_phase", g.global_phase},
          {"pass", g.pass}};
}

json to_json(const BoundRow& r) {
  return {{"q", r.q}, {"b", r.b}, {"k", r.k}, {"t", r.t}, {"min_n", r.min_n}, {"rate", r.rate}};
}

json to_json(const TheoremCheck& c) {
  return {{"name", c.name}, {"claim", c.claim}, {"finding", c.finding}, {"pass", c.pass}};
}

json to_json(const SaturationReport& r) {
  return {{"code", r.code},
          {"bound", r.bound},
          {"n", r.at.n},
          {"q", r.at.q},
          {"b", r.at.b},
          {"k", r.at.k},
          {"holds", r.holds},
          {"fails_below", r.fails_below},
          {"saturated", r.saturated},
          {"note", r.note}};
}

json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary}, {"details", r.details}};
}

}  // namespace chi2qec
