// chi2qec: command-line front end for the verification library.
//
// Exit status: 0 when every verdict passes, 1 on a verification failure,
// 2 on a usage error.

#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chi2qec/acceptance.hpp"
#include "chi2qec/bounds.hpp"
#include "chi2qec/codes.hpp"
#include "chi2qec/errors.hpp"
#include "chi2qec/gates.hpp"
#include "chi2qec/report.hpp"
#include "chi2qec/syndromes.hpp"

namespace {

using namespace chi2qec;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string format = "json";
  std::string output;
  double tol = 1e-9;
  unsigned long long seed = 20240601;
  int threads = 0;
};

struct Outcome {
  bool pass = false;
  json payload;
  std::string text;  // used for --format text
  std::string csv;   // used for --format csv when the command has a table
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

CodeSpec code_arg(const std::string& name, int N) {
  try {
    return build_code(parse_code_family(name), N);
  } catch (const UnknownName& e) {
    throw UsageError(e.what());
  }
}

// "xi2", "xi_2", "ξ2" -> 2.
std::optional<int> xi_order(const std::string& s) {
  for (const std::string prefix : {"xi_", "xi", "\xCE\xBE_", "\xCE\xBE"}) {
    if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size()) {
      try {
        std::size_t used = 0;
        const int m = std::stoi(s.substr(prefix.size()), &used);
        if (used == s.size() - prefix.size() && m >= 0) return m;
      } catch (const std::exception&) {
      }
    }
  }
  return std::nullopt;
}

std::vector<ErrorKind> parse_kinds(const std::string& text) {
  std::vector<ErrorKind> kinds;
  std::stringstream ss(text);
  std::string k;
  while (std::getline(ss, k, ',')) {
    if (k == "loss") kinds.push_back(ErrorKind::loss);
    else if (k == "gain") kinds.push_back(ErrorKind::gain);
    else if (k == "dephasing") kinds.push_back(ErrorKind::dephasing);
    else throw UsageError("unknown error kind '" + k + "' (loss, gain, dephasing)");
  }
  if (kinds.empty()) throw UsageError("--kinds is empty");
  return kinds;
}

std::string kl_text(const KLReport& r) {
  std::ostringstream os;
  os << "operators:";
  for (const auto& l : r.labels) os << ' ' << l;
  os << '\n';
  for (Eigen::Index u = 0; u < r.alpha.rows(); ++u) {
    os << "alpha_" << r.labels[static_cast<std::size_t>(u)] << ' ' << fmt(r.alpha(u, u).real()) << '\n';
  }
  os << "residuals: offdiag " << r.max_offdiag_residual << ", distortion " << r.max_distortion_residual
     << ", strict " << r.strict_residual << '\n';
  if (!r.verdict) os << "worst: " << r.worst_entry << '\n';
  os << (r.verdict ? "pass" : "fail") << '\n';
  return os.str();
}

Outcome cmd_synth(const std::string& code_name, int N) {
  const CodeSpec code = code_arg(code_name, N);
  const SynthesisReport rep = synthesize(code);
  Outcome o;
  o.pass = rep.subspace_equal;
  o.payload = {{"code", to_json(code)}, {"synthesis", to_json(rep)}};
  std::ostringstream os;
  os << code.name << " (n=" << code.params.n << ", q=" << code.params.q << ", b=" << code.params.b
     << ", k=" << code.params.k << ")\n";
  for (std::size_t j = 0; j < code.dimension(); ++j) {
    os << "|" << j << "~> =";
    bool first = true;
    for (const auto& [s, a] : code.logical_states[j].support(1e-14)) {
      os << (first ? " " : " + ") << fmt(a.real());
      if (a.imag() != 0.0) os << (a.imag() < 0 ? "-" : "+") << fmt(std::abs(a.imag())) << "i";
      os << "|" << format_state(s) << ">";
      first = false;
    }
    os << '\n';
  }
  os << "synthesis dimensions:";
  for (auto d : rep.dimension_trace) os << ' ' << d;
  os << "\nprojector distance " << rep.projector_distance << '\n' << (o.pass ? "pass" : "fail") << '\n';
  o.text = os.str();
  return o;
}

Outcome cmd_kl(const std::string& code_name, int N, const std::string& errors, double gamma,
               std::optional<int> order, const std::string& kinds_text, const std::string& no_jump,
               std::optional<int> h, double tol) {
  const CodeSpec code = code_arg(code_name, N);
  Outcome o;
  if (auto m = xi_order(errors); m || errors == "xi") {
    const int mm = m ? *m : order.value_or(1);
    const Basis b = enclosing_space(code, mm);
    const KLReport r = kl_check(code, xi_set(mm, b, parse_kinds(kinds_text)), tol);
    o.pass = r.verdict;
    o.payload = {{"code", code.name}, {"errors", "xi_" + std::to_string(mm)}, {"kl", to_json(r)}};
    o.text = kl_text(r);
    return o;
  }
  if (gamma < 0.0 || gamma >= 1.0) throw UsageError("--gamma must lie in [0, 1)");
  if (errors == "lowest-order") {
    if (no_jump != "sqrt" && no_jump != "linear") throw UsageError("--no-jump must be sqrt or linear");
    const auto form = no_jump == "sqrt" ? NoJumpForm::sqrt : NoJumpForm::linear;
    const KrausSet set = lowest_order_loss_kraus(gamma, enclosing_space(code, 0), form);
    const KLReport r = kl_check(code, set.ops, tol);
    o.pass = r.verdict;
    o.payload = {{"code", code.name},
                 {"errors", "lowest-order"},
                 {"gamma", gamma},
                 {"no_jump", no_jump},
                 {"completeness_residual", set.completeness_residual},
                 {"kl", to_json(r)}};
    o.text = kl_text(r);
    return o;
  }
  if (errors == "ad") {
    if (code.family != CodeFamily::BC2mode) throw UsageError("--errors ad applies to the two-mode code (bc2)");
    const int mmax = order.value_or(code.params.N);
    const Basis b = enclosing_space(code, 0);
    json reports = json::array();
    std::ostringstream os;
    o.pass = true;
    for (int m = 0; m <= mmax; ++m) {
      for (int hh = 0; hh <= m; ++hh) {
        if (h && *h != hh) continue;
        const KLReport r = kl_check(code, {two_mode_damping_product(gamma, hh, m, b)}, tol);
        o.pass = o.pass && r.verdict;
        reports.push_back({{"m", m}, {"h", hh}, {"kl", to_json(r)}});
        os << "A_s(" << hh << ")A_p(" << m - hh << "): alpha " << fmt(r.alpha(0, 0).real()) << ", residual "
           << r.strict_residual << ", " << (r.verdict ? "pass" : "fail") << '\n';
      }
    }
    if (reports.empty()) throw UsageError("--h selects no product");
    o.payload = {{"code", code.name}, {"errors", "ad"}, {"gamma", gamma}, {"products", reports}};
    os << (o.pass ? "pass" : "fail") << '\n';
    o.text = os.str();
    return o;
  }
  throw UsageError("--errors must be xi<m>, lowest-order or ad");
}

Outcome cmd_syndromes(const std::string& code_name, int N, int order) {
  const CodeSpec code = code_arg(code_name, N);
  if (code.family == CodeFamily::BC2mode) throw UsageError("no syndrome scheme for the two-mode code");
  const auto table = syndrome_table(code, order);
  const auto base = baseline_syndrome(code);
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen{{base.p, base.q}};
  bool distinct = true;
  for (const auto& r : table) distinct = seen.insert({r.p, r.q}).second && distinct;
  Outcome o;
  o.pass = distinct;
  o.payload = syndrome_table_json(code, table, order);
  o.payload["distinct"] = distinct;
  o.csv = syndrome_table_csv(table);
  std::ostringstream os;
  for (const auto& r : table) {
    os << r.label << " -> p=(";
    for (std::size_t i = 0; i < r.p.size(); ++i) os << (i ? "," : "") << r.p[i];
    os << "), q=(";
    for (std::size_t i = 0; i < r.q.size(); ++i) os << (i ? "," : "") << r.q[i];
    os << ")  " << r.description << '\n';
  }
  os << (distinct ? "distinct" : "collision") << '\n';
  o.text = os.str();
  return o;
}

Outcome cmd_recover(const std::string& code_name, int N, const std::string& label, int trials,
                    unsigned long long seed, double tol) {
  const CodeSpec code = code_arg(code_name, N);
  if (trials < 1) throw UsageError("--trials must be >= 1");
  RecoveryTrials t;
  try {
    t = recovery_trials(code, label, trials, seed, tol);
  } catch (const UnknownName& e) {
    throw UsageError(e.what());
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  Outcome o;
  o.pass = t.pass;
  o.payload = to_json(t);
  std::ostringstream os;
  os << code.name << ", error " << label << ": decoded " << t.decoded << '\n';
  for (const auto& s : t.steps) os << "  " << s << '\n';
  os << trials << " trials, min fidelity " << fmt(t.min_fidelity) << ", max |1-F| " << t.max_deviation << '\n'
     << (t.pass ? "pass" : "fail") << '\n';
  o.text = os.str();
  return o;
}

Outcome cmd_gates(double tol) {
  const auto checks = verify_gates(tol);
  std::map<std::string, bool> groups;
  for (const auto& g : checks) groups[g.group] = groups[g.group] || g.pass;
  Outcome o;
  o.pass = true;
  for (const auto& [name, ok] : groups) o.pass = o.pass && ok;
  json arr = json::array();
  std::ostringstream os;
  for (const auto& g : checks) {
    arr.push_back(to_json(g));
    os << (g.pass ? "ok   " : "FAIL ") << g.name << (g.generator_set.empty() ? "" : " [" + g.generator_set + "]")
       << ": deviation " << g.max_deviation << ", phase " << fmt(g.global_phase) << '\n';
  }
  json failed = json::array();
  for (const auto& [name, ok] : groups) {
    if (!ok) failed.push_back(name);
  }
  o.payload = {{"tolerance", tol}, {"checks", arr}, {"failed_groups", failed}};
  os << (o.pass ? "pass" : "fail") << '\n';
  o.text = os.str();
  return o;
}

struct BoundsArgs {
  std::string mode = "theorems";
  bool sweep = false;
  int n = 0, q = 3, b = 2, k = 1, t = 1;
  int max_q = 8, max_k = 2, max_t = 2, cap = 64;
};

Outcome rows_outcome(const std::vector<BoundRow>& rows) {
  Outcome o;
  o.pass = true;
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  o.payload = {{"rows", arr}};
  o.csv = bound_rows_csv(rows);
  o.text = o.csv;
  return o;
}

Outcome cmd_bounds(const BoundsArgs& a) {
  if (a.mode == "theorems") {
    Outcome o;
    o.pass = true;
    json arr = json::array();
    std::ostringstream os;
    for (const auto& c : theorem_checks({a.cap, 64, 64, 8})) {
      o.pass = o.pass && c.pass;
      arr.push_back(to_json(c));
      os << c.name << ": " << c.finding << (c.pass ? "; pass" : "; FAIL") << '\n';
    }
    json sat = json::array();
    for (const CodeSpec& code : {build_pcc(2), build_eecc(2), build_bc(2)}) sat.push_back(to_json(saturation_report(code)));
    o.payload = {{"theorems", arr}, {"saturation", sat}};
    os << (o.pass ? "pass" : "fail") << '\n';
    o.text = os.str();
    return o;
  }
  if (a.mode != "rotation" && a.mode != "loss") throw UsageError("bounds mode must be rotation, loss or theorems");
  if (a.sweep) {
    return rows_outcome(a.mode == "rotation" ? rotation_sweep(a.max_q, a.max_k, a.max_t, a.cap)
                                             : loss_sweep(a.max_q, a.max_k, a.cap));
  }
  if (a.q < 2 || a.b < 2 || a.k < 1 || a.t < 0) throw UsageError("need q, b >= 2, k >= 1, t >= 0");
  Outcome o;
  const bool rot = a.mode == "rotation";
  const int mn = rot ? min_n(a.q, a.b, a.k, a.t, a.cap) : min_n_loss(a.q, a.b, a.k, a.cap);
  json j = {{"bound", a.mode}, {"q", a.q}, {"b", a.b}, {"k", a.k}, {"t", rot ? a.t : 1}, {"min_n", mn},
            {"rate", code_rate(mn, a.q, a.b, a.k)}};
  o.pass = true;
  if (a.n > 0) {
    const bool holds = rot ? rotation_bound_holds({a.n, a.q, a.b, a.k, a.t}) : loss_bound_holds(a.n, a.q, a.b, a.k);
    j["n"] = a.n;
    j["holds"] = holds;
    o.pass = holds;
  }
  o.payload = j;
  o.csv = bound_rows_csv({{a.q, a.b, a.k, rot ? a.t : 1, mn, code_rate(mn, a.q, a.b, a.k)}});
  std::ostringstream os;
  os << a.mode << " bound q=" << a.q << " b=" << a.b << " k=" << a.k;
  if (rot) os << " t=" << a.t;
  os << ": min n = " << mn;
  if (a.n > 0) os << "; n=" << a.n << (o.pass ? " holds" : " fails");
  os << '\n';
  o.text = os.str();
  return o;
}

Outcome cmd_report(const std::string& what, unsigned long long seed, int trials) {
  if (what != "all") throw UsageError("report supports 'all'");
  AcceptanceOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  const auto results = run_acceptance(opt);
  Outcome o;
  o.pass = true;
  json arr = json::array();
  std::ostringstream os;
  for (const auto& r : results) {
    o.pass = o.pass && r.pass;
    arr.push_back(to_json(r));
    os << format_line(r) << '\n';
    for (const auto& d : r.details) os << "    " << d << '\n';
  }
  o.payload = {{"seed", seed}, {"trials", trials}, {"criteria", arr}};
  o.text = os.str();
  return o;
}

void emit(const Global& g, const std::string& command, const Outcome& o) {
  std::string body;
  if (g.format == "json") {
    body = envelope(command, o.pass, o.payload).dump(2) + "\n";
  } else if (g.format == "csv") {
    if (o.csv.empty()) throw UsageError("--format csv is available for syndromes and bounds");
    body = o.csv;
  } else {
    body = o.text;
  }
  if (g.output.empty() || g.output == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + g.output);
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chi2qec: constructs chi(2) bosonic codes and verifies their error-correction properties"};
  app.set_config("--config", "", "key=value config file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("-o,--output", g.output, "Write the report to this file instead of stdout");
  app.add_option("--tol", g.tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized trials");
  app.add_option("--threads", g.threads, "Cap on worker threads (also CHI2QEC_THREADS)")->check(CLI::NonNegativeNumber);

  std::string code;
  int N = 2;

  auto* synth = app.add_subcommand("synth", "Build a code and rerun its symmetry-operator synthesis");
  synth->add_option("code", code, "pcc, eecc, bc or bc2")->required();
  synth->add_option("--N", N, "Size parameter")->check(CLI::PositiveNumber);

  std::string errors = "xi1", kinds = "loss,gain,dephasing", no_jump = "sqrt";
  double gamma = 0.01;
  std::optional<int> order, h;
  auto* kl = app.add_subcommand("kl-check", "Evaluate the Knill-Laflamme conditions");
  kl->add_option("code", code, "pcc, eecc, bc or bc2")->required();
  kl->add_option("--N", N, "Size parameter")->check(CLI::PositiveNumber);
  kl->add_option("--errors", errors, "xi<m>, lowest-order or ad");
  kl->add_option("--gamma", gamma, "Loss probability for Kraus sets");
  kl->add_option("--order", order, "Order m for xi or the largest m for ad");
  kl->add_option("--kinds", kinds, "Comma list of loss, gain, dephasing for xi sets");
  kl->add_option("--no-jump", no_jump, "sqrt or linear no-jump Kraus operator");
  kl->add_option("--signal-losses", h, "Signal losses h for a single ad product");

  int syn_order = 1;
  auto* syn = app.add_subcommand("syndromes", "Syndrome table of a code");
  syn->add_option("code", code, "pcc, eecc or bc")->required();
  syn->add_option("--N", N, "Size parameter")->check(CLI::PositiveNumber);
  syn->add_option("--order", syn_order, "Error order (BC only)")->check(CLI::PositiveNumber);

  std::string label;
  int trials = 100;
  auto* rec = app.add_subcommand("recover", "Error, syndrome, decoding and correction on random logical states");
  rec->add_option("code", code, "pcc, eecc or bc")->required();
  rec->add_option("--N", N, "Size parameter")->check(CLI::PositiveNumber);
  rec->add_option("--error", label, "Error label, e.g. a_s1, adag_p, a_s^2")->required();
  rec->add_option("--trials", trials, "Number of random logical states");

  std::string gates_what;
  auto* gates = app.add_subcommand("gates", "Gate-library identities");
  gates->add_option("action", gates_what, "verify")->required()->check(CLI::IsMember({"verify"}));

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Quantum Hamming bounds");
  bounds->add_option("mode", ba.mode, "rotation, loss or theorems")->check(CLI::IsMember({"rotation", "loss", "theorems"}));
  bounds->add_flag("--sweep", ba.sweep, "Tabulate min n over a parameter grid");
  bounds->add_option("--n", ba.n, "Evaluate the bound at this n");
  bounds->add_option("--q", ba.q, "Physical qudit dimension");
  bounds->add_option("--b", ba.b, "Logical qudit dimension");
  bounds->add_option("--k", ba.k, "Logical qudits");
  bounds->add_option("--t", ba.t, "Correctable errors (rotation bound)");
  bounds->add_option("--max-q", ba.max_q, "Sweep range for q and b")->check(CLI::Range(2, 64));
  bounds->add_option("--max-k", ba.max_k, "Sweep range for k")->check(CLI::Range(1, 8));
  bounds->add_option("--max-t", ba.max_t, "Sweep range for t")->check(CLI::Range(1, 8));
  bounds->add_option("--cap", ba.cap, "Search cap on n")->check(CLI::Range(5, 64));

  std::string report_what;
  int report_trials = 100;
  auto* report = app.add_subcommand("report", "Full reproduction matrix (every acceptance criterion)");
  report->add_option("what", report_what, "all")->required()->check(CLI::IsMember({"all"}));
  report->add_option("--trials", report_trials, "Random states per recovery case")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (g.threads > 0) {
    const std::string cap = std::to_string(g.threads);
    const char* env = std::getenv("CHI2QEC_THREADS");
    if (!env || std::atoi(env) <= 0 || std::atoi(env) > g.threads) setenv("CHI2QEC_THREADS", cap.c_str(), 1);
  }

  try {
    Outcome o;
    std::string command;
    if (*synth) {
      command = "synth";
      o = cmd_synth(code, N);
    } else if (*kl) {
      command = "kl-check";
      o = cmd_kl(code, N, errors, gamma, order, kinds, no_jump, h, g.tol);
    } else if (*syn) {
      command = "syndromes";
      o = cmd_syndromes(code, N, syn_order);
    } else if (*rec) {
      command = "recover";
      o = cmd_recover(code, N, label, trials, g.seed, std::min(g.tol, 1e-10));
    } else if (*gates) {
      command = "gates verify";
      o = cmd_gates(std::min(g.tol, 1e-10));
    } else if (*bounds) {
      command = "bounds " + ba.mode;
      o = cmd_bounds(ba);
    } else {
      command = "report all";
      o = cmd_report(report_what, g.seed, report_trials);
    }
    emit(g, command, o);
    return o.pass ? EXIT_SUCCESS : kExitFail;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownName& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownSyndrome& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
