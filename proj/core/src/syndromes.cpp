#include "chi2qec/syndromes.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "chi2qec/gates.hpp"
#include "chi2qec/parallel.hpp"

namespace chi2qec {

namespace {

int positive_mod(long long v, int m) {
  const long long r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

long long dot(const std::vector<int>& c, const FockState& n) {
  long long v = 0;
  for (std::size_t k = 0; k < c.size(); ++k) v += static_cast<long long>(c[k]) * n[k];
  return v;
}

std::vector<int> mode_coeffs(const ModeLayout& layout, int group,
                             std::initializer_list<std::pair<ModeLabel, int>> terms) {
  std::vector<int> c(layout.size(), 0);
  for (const auto& [label, w] : terms) c[layout.index(label, group)] += w;
  return c;
}

ParityComponent linear(std::vector<int> coeffs, int offset, int modulus) {
  ParityComponent pc;
  pc.coeffs = std::move(coeffs);
  pc.offset = offset;
  pc.modulus = modulus;
  return pc;
}

std::vector<ParityComponent> p3_group(const ModeLayout& layout, int group) {
  using enum ModeLabel;
  return {linear(mode_coeffs(layout, group, {{signal, 1}, {idler, 1}}), 0, 2),
          linear(mode_coeffs(layout, group, {{signal, 1}, {pump, 1}}), 0, 2),
          linear(mode_coeffs(layout, group, {{idler, 1}, {pump, 1}}), 0, 2)};
}

ParityComponent photon_change(const ModeLayout& layout, int group, int R) {
  using enum ModeLabel;
  ParityComponent pc;
  pc.type = ParityComponent::Type::photon_change;
  pc.coeffs = mode_coeffs(layout, group, {{signal, 1}, {pump, 1}});
  pc.fallback = mode_coeffs(layout, group, {{idler, 1}, {pump, 1}});
  pc.offset = -R;
  pc.modulus = 3;
  return pc;
}

int component_value(const ParityComponent& pc, const FockState& n) {
  long long v = dot(pc.coeffs, n) + pc.offset;
  if (pc.type == ParityComponent::Type::photon_change && v == 0) v = dot(pc.fallback, n) + pc.offset;
  return positive_mod(v, pc.modulus);
}

std::vector<int> ket_values(const ParityScheme& scheme, const FockState& n) {
  std::vector<int> out;
  out.reserve(scheme.components.size());
  for (const auto& pc : scheme.components) out.push_back(component_value(pc, n));
  return out;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string describe(const ModeLayout& layout, const std::vector<int>& e, ErrorKind kind) {
  std::string modes;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!modes.empty()) modes += ' ';
    modes += layout.mode_name(k);
    if (e[k] > 1) modes += "^" + std::to_string(e[k]);
  }
  return std::string(kind == ErrorKind::loss ? "loss" : "gain") + " on " + modes;
}

void require_syndrome_code(const CodeSpec& code) {
  if (code.family == CodeFamily::BC2mode) {
    throw InvalidArgument("syndromes: no parity scheme is defined for the two-mode BC");
  }
}

std::vector<int> exponents_of(const ErrorOperator& e) {
  const ModeLayout& layout = e.op.domain->layout();
  std::vector<int> out(layout.size(), 0);
  std::istringstream in(e.label);
  std::string tok;
  while (in >> tok) {
    const auto us = tok.find('_');
    std::string rest = tok.substr(us + 1);
    int power = 1;
    if (const auto c = rest.find('^'); c != std::string::npos) {
      power = std::stoi(rest.substr(c + 1));
      rest = rest.substr(0, c);
    }
    out[*layout.find_by_name(rest)] += power;
  }
  return out;
}

int label_order(const std::string& label) {
  int order = 0;
  std::istringstream in(label);
  std::string tok;
  while (in >> tok) {
    const auto c = tok.find('^');
    order += c == std::string::npos ? 1 : std::stoi(tok.substr(c + 1));
  }
  return order;
}

using CodeKey = std::tuple<CodeFamily, int, int>;

CodeKey key_of(const CodeSpec& code, int n) { return {code.family, code.params.N, n}; }

// Enclosing spaces and tables depend only on (family, N, order); recovery
// trials reuse them many times.
Basis cached_enclosing_space(const CodeSpec& code, int extra) {
  static std::mutex mu;
  static std::map<CodeKey, Basis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& b = cache[key_of(code, extra)];
  if (!b) b = enclosing_space(code, extra);
  return b;
}

ErrorOperator error_for(const CodeSpec& code, const std::string& label) {
  if (label == "I") return parse_error_label(label, code.basis);
  const int order = label_order(label);
  return parse_error_label(label, cached_enclosing_space(code, std::max(order, 1)));
}

std::vector<SyndromeRecord> build_table(const CodeSpec& code, int order) {
  const auto [ps, qs] = code_schemes(code);
  const Basis space = cached_enclosing_space(code, order);
  const ModeLayout& layout = space->layout();
  std::vector<SyndromeRecord> table;
  for (ErrorKind kind : {ErrorKind::loss, ErrorKind::gain}) {
    for (const auto& e : compositions(order, layout.size())) {
      const ErrorOperator op = monomial_error(space, e, kind);
      SyndromeRecord rec;
      rec.label = op.label;
      rec.description = describe(layout, e, kind);
      bool seen = false;
      for (const auto& word : code.logical_states) {
        const StateVector img = apply(op.op, word);
        if (img.norm() < 1e-12) continue;
        auto p = measure_parity(img, ps);
        auto q = measure_parity(img, qs);
        if (seen && (p != rec.p || q != rec.q)) {
          throw IndefiniteParity("syndrome_table: codewords disagree under " + op.label);
        }
        rec.p = std::move(p);
        rec.q = std::move(q);
        seen = true;
      }
      if (!seen) throw IndefiniteParity("syndrome_table: " + op.label + " annihilates the code");
      table.push_back(std::move(rec));
    }
  }
  return table;
}

bool is_two_qutrit_pcc(const CodeSpec& code) {
  return code.family == CodeFamily::PCC && code.subspace_pump_number == 2 && code.dimension() == 3;
}

bool is_qubit_eecc(const CodeSpec& code) {
  return code.family == CodeFamily::EECC && code.subspace_pump_number == 2 && code.dimension() == 2;
}

// Exchanges the two (s, i, p) groups of every ket; the basis must be closed
// under the exchange.
StateVector swap_groups(const StateVector& state) {
  StateVector out = StateVector::zero(state.basis);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const cplx a = state.amplitudes[static_cast<Eigen::Index>(i)];
    if (a == cplx{0.0, 0.0}) continue;
    FockState s = state.basis->state(i);
    std::rotate(s.begin(), s.begin() + 3, s.end());
    out.amplitudes[static_cast<Eigen::Index>(state.basis->index(s))] = a;
  }
  return out;
}

RestorationCase case_for_mode(ModeLabel label) {
  switch (label) {
    case ModeLabel::signal: return RestorationCase::signal_loss;
    case ModeLabel::idler: return RestorationCase::idler_loss;
    default: return RestorationCase::pump_loss;
  }
}

}  // namespace

std::string to_string(SchemeName name) {
  switch (name) {
    case SchemeName::p3: return "p3";
    case SchemeName::p12: return "p12";
    case SchemeName::q12: return "q12";
    case SchemeName::qEECC: return "qEECC";
    case SchemeName::pBC: return "pBC";
    case SchemeName::qBC: return "qBC";
  }
  return "?";
}

ParityScheme make_scheme(SchemeName name, const ModeLayout& layout, int R) {
  using enum ModeLabel;
  ParityScheme s;
  s.name = name;
  switch (name) {
    case SchemeName::p3: s.components = p3_group(layout, 1); break;
    case SchemeName::p12: {
      if (layout.groups() < 2) throw InvalidArgument("p12 needs two mode groups");
      s.components = p3_group(layout, 1);
      auto g2 = p3_group(layout, 2);
      s.components.insert(s.components.end(), g2.begin(), g2.end());
      break;
    }
    case SchemeName::q12:
      if (layout.groups() < 2) throw InvalidArgument("q12 needs two mode groups");
      s.components = {photon_change(layout, 1, R), photon_change(layout, 2, R)};
      break;
    case SchemeName::qEECC: s.components = {photon_change(layout, 1, R)}; break;
    case SchemeName::pBC:
      if (R < 2) throw InvalidArgument("pBC needs modulus 2N-1 >= 2");
      s.components = {linear(mode_coeffs(layout, 1, {{signal, 1}, {idler, -1}}), 0, R),
                      linear(mode_coeffs(layout, 1, {{signal, 1}, {pump, 1}}), 0, R),
                      linear(mode_coeffs(layout, 1, {{idler, 1}, {pump, 1}}), 0, R)};
      break;
    case SchemeName::qBC:
      if (R < 1) throw InvalidArgument("qBC needs R >= 1");
      s.components = {linear(mode_coeffs(layout, 1, {{signal, 1}, {idler, 1}, {pump, 2}}), -2 * R, 3 * R)};
      break;
  }
  for (const auto& pc : s.components) {
    if (pc.modulus < 2) throw InvalidArgument("parity modulus must be >= 2");
  }
  return s;
}

std::vector<int> measure_parity(const StateVector& state, const ParityScheme& scheme) {
  std::optional<std::vector<int>> value;
  for (const auto& [ket, amp] : state.support(1e-12)) {
    auto v = ket_values(scheme, ket);
    if (value && *value != v) {
      throw IndefiniteParity(to_string(scheme.name) + ": support kets disagree at " + format_state(ket));
    }
    value = std::move(v);
  }
  return value ? *value : std::vector<int>(scheme.components.size(), 0);
}

std::pair<ParityScheme, ParityScheme> code_schemes(const CodeSpec& code) {
  require_syndrome_code(code);
  const ModeLayout& layout = code.layout;
  const int R = code.subspace_pump_number;
  switch (code.family) {
    case CodeFamily::PCC:
      return {make_scheme(SchemeName::p12, layout, R), make_scheme(SchemeName::q12, layout, R)};
    case CodeFamily::EECC:
      return {make_scheme(SchemeName::p3, layout, R), make_scheme(SchemeName::qEECC, layout, R)};
    default:
      return {make_scheme(SchemeName::pBC, layout, R), make_scheme(SchemeName::qBC, layout, R)};
  }
}

SyndromeRecord baseline_syndrome(const CodeSpec& code) {
  const auto [ps, qs] = code_schemes(code);
  SyndromeRecord rec;
  rec.label = "I";
  rec.description = "no error";
  for (std::size_t j = 0; j < code.dimension(); ++j) {
    auto p = measure_parity(code.logical_states[j], ps);
    auto q = measure_parity(code.logical_states[j], qs);
    if (j > 0 && (p != rec.p || q != rec.q)) throw IndefiniteParity("codewords carry different syndromes");
    rec.p = std::move(p);
    rec.q = std::move(q);
  }
  return rec;
}

std::vector<SyndromeRecord> syndrome_table(const CodeSpec& code, int order) {
  require_syndrome_code(code);
  if (order < 1) throw InvalidArgument("syndrome_table: order must be >= 1");
  if (code.family != CodeFamily::BC && order != 1) {
    throw InvalidArgument("syndrome_table: PCC and EECC tables cover single-photon errors only");
  }
  static std::mutex mu;
  static std::map<CodeKey, std::vector<SyndromeRecord>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key_of(code, order)); it != cache.end()) return it->second;
  }
  auto table = build_table(code, order);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key_of(code, order), std::move(table)).first->second;
}

bool configuration_count_ok(int N, int m) {
  const long long lhs = static_cast<long long>(m + 2) * (m + 1) / 2;
  const long long r = 2LL * N - 1;
  return lhs <= r * r * r;
}

SyndromeRecord decode_syndrome(const CodeSpec& code, const std::vector<int>& p,
                               const std::vector<int>& q, std::optional<int> monitored_order) {
  const SyndromeRecord base = baseline_syndrome(code);
  if (p == base.p && q == base.q) return base;
  int order = 1;
  if (code.family == CodeFamily::BC) {
    const int N = (code.subspace_pump_number + 1) / 2;
    order = monitored_order.value_or(1);
    if (!configuration_count_ok(N, order)) {
      throw InvalidArgument("decode_syndrome: (m+2)(m+1)/2 > (2N-1)^3, loss configurations cannot be distinguished");
    }
  }
  const auto table = syndrome_table(code, order);
  std::vector<const SyndromeRecord*> hits;
  for (const auto& r : table) {
    if (r.p == p && r.q == q) hits.push_back(&r);
  }
  if (hits.size() != 1) {
    throw UnknownSyndrome("p=(" + join(p, ',') + "), q=(" + join(q, ',') + ") matches " +
                          std::to_string(hits.size()) + " table rows");
  }
  return *hits.front();
}

std::string syndrome_table_csv(const std::vector<SyndromeRecord>& table) {
  std::ostringstream os;
  os << "error_label,p,q\n";
  for (const auto& r : table) os << r.label << ',' << join(r.p, ' ') << ',' << join(r.q, ' ') << '\n';
  return os.str();
}

std::string to_string(RestorationCase c) {
  switch (c) {
    case RestorationCase::signal_loss: return "signal_loss";
    case RestorationCase::idler_loss: return "idler_loss";
    case RestorationCase::pump_loss: return "pump_loss";
  }
  return "?";
}

RestorationCase parse_restoration_case(const std::string& text) {
  std::string t;
  for (char ch : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (const std::string prefix : {"pcc_", "eecc_"}) {
    if (t.rfind(prefix, 0) == 0) t = t.substr(prefix.size());
  }
  if (t.size() > 5 && t.ends_with("_loss")) t = t.substr(0, t.size() - 5);
  if (t == "signal" || t == "s") return RestorationCase::signal_loss;
  if (t == "idler" || t == "i") return RestorationCase::idler_loss;
  if (t == "pump" || t == "p") return RestorationCase::pump_loss;
  throw UnknownName("restoration case '" + text + "'");
}

LinearOperator restoration_isometry(RestorationCase c) {
  std::vector<std::pair<FockState, FockState>> map;
  switch (c) {
    case RestorationCase::signal_loss: map = {{{1, 2, 0}, {0, 0, 2}}, {{0, 1, 1}, {2, 2, 0}}}; break;
    case RestorationCase::idler_loss: map = {{{2, 1, 0}, {0, 0, 2}}, {{1, 0, 1}, {2, 2, 0}}}; break;
    case RestorationCase::pump_loss: map = {{{0, 0, 1}, {0, 0, 2}}, {{1, 1, 0}, {2, 2, 0}}}; break;
  }
  std::vector<FockState> dom;
  for (const auto& [from, to] : map) dom.push_back(from);
  std::sort(dom.begin(), dom.end());
  const Basis domain = make_basis(ModeLayout::three_mode(1, 2), dom);
  return monomial_operator(domain, h2_basis(), [&](const FockState& s) {
    for (const auto& [from, to] : map) {
      if (from == s) return to;
    }
    return s;
  });
}

RecoveryResult full_recovery(const CodeSpec& code, const std::string& error_label, const StateVector& input) {
  RecoveryResult res;
  const StateVector psi = embed(input, code.basis);
  const ErrorOperator err = error_for(code, error_label);
  StateVector phi = apply(err.op, psi);
  if (phi.norm() < 1e-14) {
    res.corrupted = phi;
    res.syndrome = baseline_syndrome(code);
    res.steps = {"error annihilates the input"};
    res.output = psi;
    res.fidelity = 1.0;
    return res;
  }
  phi = phi.normalized();
  res.corrupted = phi;

  const auto [ps, qs] = code_schemes(code);
  const int order = std::max(1, label_order(error_label));
  res.syndrome = decode_syndrome(code, measure_parity(phi, ps), measure_parity(phi, qs),
                                 code.family == CodeFamily::BC ? std::optional<int>(order) : std::nullopt);
  res.steps.push_back("syndrome -> " + res.syndrome.description);

  StateVector out;
  if (res.syndrome.label == "I") {
    out = embed(project_onto(phi, code.basis), code.basis);
  } else {
    const ErrorOperator decoded = error_for(code, res.syndrome.label);
    const bool single_loss = decoded.kind == ErrorKind::loss && decoded.order == 1;
    if (single_loss && (is_two_qutrit_pcc(code) || is_qubit_eecc(code))) {
      const std::vector<int> e = exponents_of(decoded);
      const auto mode = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1) - e.begin());
      const Mode& m = code.layout[mode];
      const bool swapped = m.group == 2;
      StateVector s = swapped ? swap_groups(phi) : phi;
      if (swapped) res.steps.push_back("exchange qutrits");
      const RestorationCase rc = case_for_mode(m.label);
      const LinearOperator iso = restoration_isometry(rc);
      const int groups = code.layout.groups();
      const LinearOperator full_iso = groups == 1 ? iso : tensor(iso, LinearOperator::identity(h2_basis()));
      s = apply(full_iso, embed(s, full_iso.domain));
      res.steps.push_back("restore " + to_string(rc));
      std::vector<std::string> gates;
      if (groups == 1) {
        gates = {"EECC_R1", "EECC_R2"};
      } else if (rc == RestorationCase::pump_loss) {
        gates = {"Lambda21H", "LambdaBar21H", "CNOT2_21", "CNOT2pp_12"};
      } else {
        gates = {"CNOT2_21", "Lambda21H", "LambdaBar21H", "CNOT2p_12"};
      }
      s = embed(s, h2_product_basis(groups));
      for (const auto& g : gates) {
        s = apply(logical_gate(g).unitary, s);
        res.steps.push_back(g);
      }
      s = embed(s, code.basis);
      if (swapped) {
        s = swap_groups(s);
        res.steps.push_back("exchange qutrits");
      }
      out = s;
    } else {
      const RecoveryChannel ch = canonical_recovery(code, {decoded});
      out = apply(ch.kraus.front(), embed(phi, ch.kraus.front().domain));
      res.steps.push_back("canonical recovery for " + decoded.label);
    }
  }
  if (out.norm() > 0.0) out = out.normalized();
  res.output = out;
  res.fidelity = std::abs(inner_product(psi, out));
  return res;
}

StateVector random_logical_state(const CodeSpec& code, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(code.dimension()));
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = cplx{gauss(rng), gauss(rng)};
  return logical_state(code, c);
}

RecoveryTrials recovery_trials(const CodeSpec& code, const std::string& error_label, int trials,
                               unsigned long long seed, double tol) {
  if (trials < 1) throw InvalidArgument("recovery_trials: trials must be >= 1");
  RecoveryTrials out;
  out.code = code.name;
  out.error_label = error_label;
  out.trials = trials;
  out.seed = seed;
  out.tolerance = tol;
  // Warm the shared caches before fanning out.
  const RecoveryResult first = full_recovery(code, error_label, random_logical_state(code, seed));
  out.decoded = first.syndrome.description;
  out.steps = first.steps;
  std::vector<double> fid(static_cast<std::size_t>(trials));
  fid[0] = first.fidelity;
  parallel_for(fid.size() - 1, [&](std::size_t i) {
    fid[i + 1] = full_recovery(code, error_label, random_logical_state(code, seed + i + 1)).fidelity;
  });
  double sum = 0.0;
  for (double f : fid) {
    out.min_fidelity = std::min(out.min_fidelity, f);
    out.max_deviation = std::max(out.max_deviation, std::abs(1.0 - f));
    sum += f;
  }
  out.mean_fidelity = sum / static_cast<double>(fid.size());
  out.pass = out.max_deviation <= tol;
  return out;
}

}  // namespace chi2qec
