#include "chi2qec/acceptance.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "chi2qec/bounds.hpp"
#include "chi2qec/codes.hpp"
#include "chi2qec/errors.hpp"
#include "chi2qec/gates.hpp"
#include "chi2qec/syndromes.hpp"

namespace chi2qec {

namespace {

class Checks {
 public:
  explicit Checks(CriterionResult& r) : r_(r) {}

  void add(bool ok, const std::string& line) {
    r_.details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
    all_ = all_ && ok;
    ++count_;
    if (!ok) ++failed_;
  }
  void info(const std::string& line) { r_.details.push_back("info " + line); }

  void finish(const std::string& extra = {}) {
    r_.pass = all_ && count_ > 0;
    std::ostringstream os;
    os << count_ - failed_ << "/" << count_ << " sub-checks";
    if (!extra.empty()) os << "; " << extra;
    r_.summary = os.str();
  }

 private:
  CriterionResult& r_;
  bool all_ = true;
  int count_ = 0;
  int failed_ = 0;
};

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

Eigen::Index index_of(const KLReport& r, const std::string& label) {
  for (std::size_t k = 0; k < r.labels.size(); ++k) {
    if (r.labels[k] == label) return static_cast<Eigen::Index>(k);
  }
  throw UnknownName("KL label " + label);
}

// alpha_00 for E0, alpha_hh for every jump operator, zero off-diagonals.
double alpha_deviation(const KLReport& r, double a00, double ahh) {
  const Eigen::Index e0 = index_of(r, "E0");
  double dev = 0.0;
  for (Eigen::Index u = 0; u < r.alpha.rows(); ++u) {
    for (Eigen::Index v = 0; v < r.alpha.cols(); ++v) {
      const cplx want = u != v ? 0.0 : (u == e0 ? a00 : ahh);
      dev = std::max(dev, std::abs(r.alpha(u, v) - want));
    }
  }
  return dev;
}

CriterionResult criterion1() {
  CriterionResult res{1, "KL alpha matrices", false, {}, {}};
  Checks c(res);
  struct Case {
    const char* name;
    CodeSpec code;
    double c00;  // alpha_00 = 1 - c00 gamma
    double chh;  // alpha_hh = chh gamma
  };
  const std::vector<Case> cases{{"PCC qubit", build_pcc(2), 3.0, 0.5},
                                {"PCC qutrit", build_pcc(3), 6.0, 1.0},
                                {"EECC qubit", build_eecc(2), 3.0, 1.0}};
  for (const auto& k : cases) {
    const Basis b = enclosing_space(k.code, 0);
    for (double gamma : {0.01, 0.1}) {
      const KLReport r = kl_check(k.code, lowest_order_loss_kraus(gamma, b).ops, 1e-12);
      const double dev = alpha_deviation(r, 1.0 - k.c00 * gamma, k.chh * gamma);
      std::ostringstream os;
      os << k.name << " gamma=" << gamma << ": alpha_00=" << r.alpha(0, 0).real() << ", alpha_hh=" << r.alpha(1, 1).real()
         << ", max deviation " << sci(dev);
      c.add(r.verdict && dev <= 1e-12, os.str());
    }
  }
  const CodeSpec eecc = build_eecc(2);
  const Basis b1 = enclosing_space(eecc, 1);
  std::vector<ErrorOperator> gains;
  for (std::size_t m = 0; m < b1->layout().size(); ++m) {
    std::vector<int> e(b1->layout().size(), 0);
    e[m] = 1;
    gains.push_back(monomial_error(b1, e, ErrorKind::gain));
  }
  const KLReport g = kl_check(eecc, gains, 1e-12);
  const double gdev = (g.alpha - 2.0 * Eigen::MatrixXcd::Identity(g.alpha.rows(), g.alpha.cols())).cwiseAbs().maxCoeff();
  c.add(g.verdict && gdev <= 1e-12,
        "EECC qubit gain <a|a_h a_j^dag|b> = 2 delta_hj delta_ab: max deviation " + sci(gdev));
  c.finish();
  return res;
}

CriterionResult criterion2() {
  CriterionResult res{2, "symmetry synthesis", false, {}, {}};
  Checks c(res);
  const SynthesisReport q = synthesize(build_pcc(3));
  std::ostringstream trace;
  for (std::size_t i = 0; i < q.dimension_trace.size(); ++i) trace << (i ? " -> " : "") << q.dimension_trace[i];
  const auto n = q.dimension_trace.size();
  const bool tail = n >= 3 && q.dimension_trace[n - 3] == 9 && q.dimension_trace[n - 2] == 5 && q.dimension_trace[n - 1] == 3;
  c.add(tail, "qutrit PCC dimension trace " + trace.str() + " (expected ... 9 -> 5 -> 3)");
  c.add(q.projector_distance < 1e-8, "qutrit PCC projector distance " + sci(q.projector_distance) +
                                         " (codeword leakage " + sci(q.codeword_leakage) + ")");
  const SynthesisReport p = synthesize(build_pcc(2));
  c.add(p.projector_distance < 1e-8, "qubit PCC projector distance " + sci(p.projector_distance));
  const SynthesisReport e = synthesize(build_eecc(2));
  c.add(e.projector_distance < 1e-8, "qubit EECC projector distance " + sci(e.projector_distance));
  c.finish();
  return res;
}

CriterionResult criterion3() {
  CriterionResult res{3, "BC correctness", false, {}, {}};
  Checks c(res);
  for (int N = 2; N <= 3; ++N) {
    const CodeSpec code = build_bc(N);
    for (int m = 0; m <= N; ++m) {
      const Basis b = enclosing_space(code, m);
      for (ErrorKind kind : {ErrorKind::loss, ErrorKind::gain, ErrorKind::dephasing}) {
        if (m == 0 && kind != ErrorKind::loss) continue;
        const KLReport r = kl_check(code, xi_set(m, b, {kind}), 1e-9);
        const double resid = std::max(r.max_offdiag_residual, r.max_distortion_residual);
        std::ostringstream os;
        os << "BC N=" << N << " xi_" << m << (m == 0 ? "" : " " + to_string(kind)) << ": " << r.labels.size()
           << " operators, residual " << sci(resid);
        c.add(r.verdict && resid < 1e-9, os.str());
      }
    }
  }
  int identities = 0, mismatched = 0;
  double worst_brute = 0.0;
  for (int N = 2; N <= 6; ++N) {
    const CodeSpec code = build_bc(N);
    for (int m = 0; m <= N; ++m) {
      const Basis b = enclosing_space(code, m);
      const StateVector zero = embed(code.logical_states[0], b);
      const StateVector one = embed(code.logical_states[1], b);
      for (int h = 0; h <= m; ++h) {
        for (int g = 0; g + h <= m; ++g) {
          std::vector<std::pair<MomentKind, LinearOperator>> kinds;
          for (auto [ek, mk] : {std::pair{ErrorKind::loss, MomentKind::loss}, std::pair{ErrorKind::gain, MomentKind::gain}}) {
            const auto op = monomial_error(b, {h, g, m - h - g}, ek).op;
            kinds.emplace_back(mk, compose(adjoint(op), op));
          }
          if (m >= 1 && h + g <= m - 1) {
            const auto op = monomial_error(b, {h, g, m - 1 - h - g}, ErrorKind::dephasing).op;
            kinds.emplace_back(MomentKind::dephasing, compose(op, op));
          }
          for (const auto& [mk, eded] : kinds) {
            const MomentValue z = bc_moment_sum(N, h, g, m, MomentSide::zero, mk);
            const MomentValue o = bc_moment_sum(N, h, g, m, MomentSide::one, mk);
            ++identities;
            if (z.numerator != o.numerator || z.denominator != o.denominator) ++mismatched;
            const double bz = expectation(eded, zero).real();
            const double bo = expectation(eded, one).real();
            worst_brute = std::max({worst_brute, std::abs(z.value() - bz) / std::max(1.0, bz),
                                    std::abs(o.value() - bo) / std::max(1.0, bo)});
          }
        }
      }
    }
  }
  c.add(mismatched == 0, "moment identities (loss, gain, dephasing), N=2..6: " + std::to_string(identities - mismatched) +
                             "/" + std::to_string(identities) + " exact");
  c.add(worst_brute < 1e-9, "moment sums vs operator expectations: max relative deviation " + sci(worst_brute));
  c.finish();
  return res;
}

CriterionResult criterion4() {
  CriterionResult res{4, "two-mode BC amplitude damping", false, {}, {}};
  Checks c(res);
  for (int N = 2; N <= 3; ++N) {
    const CodeSpec code = build_two_mode_bc(N);
    const Basis b = enclosing_space(code, 0);
    for (double gamma : {0.01, 0.05}) {
      double worst = 0.0;
      bool ok = true;
      int products = 0;
      for (int m = 0; m <= N; ++m) {
        for (int h = 0; h <= m; ++h) {
          const KLReport r = kl_check(code, {two_mode_damping_product(gamma, h, m, b)}, 1e-9);
          worst = std::max(worst, r.strict_residual);
          ok = ok && r.verdict && r.strict_residual < 1e-9;
          ++products;
        }
      }
      std::ostringstream os;
      os << "N=" << N << " gamma=" << gamma << ": " << products << " products A_s(h)A_p(m-h), m<=" << N
         << ", max residual " << sci(worst);
      c.add(ok, os.str());
    }
  }
  const CodeSpec code = build_two_mode_bc(2);
  const Basis b = enclosing_space(code, 0);
  const KLReport mixed =
      kl_check(code, {two_mode_damping_product(0.01, 0, 1, b), two_mode_damping_product(0.01, 1, 1, b)}, 1e-9);
  c.info("N=2 gamma=0.01 m=1 joint set {h=0, h=1}: residual " + sci(mixed.strict_residual) +
         " (judged per product)");
  c.finish();
  return res;
}

using Row = std::tuple<std::string, std::vector<int>, std::vector<int>>;

bool table_equals(const std::vector<SyndromeRecord>& got, const std::vector<Row>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t r = 0; r < want.size(); ++r) {
    if (got[r].label != std::get<0>(want[r]) || got[r].p != std::get<1>(want[r]) || got[r].q != std::get<2>(want[r])) {
      return false;
    }
  }
  return true;
}

bool pairs_distinct(const std::vector<SyndromeRecord>& table, const SyndromeRecord& base) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen{{base.p, base.q}};
  for (const auto& r : table) {
    if (!seen.insert({r.p, r.q}).second) return false;
  }
  return true;
}

CriterionResult criterion5() {
  CriterionResult res{5, "syndrome tables", false, {}, {}};
  Checks c(res);
  const std::vector<Row> pcc_rows = {
      {"a_s1", {1, 1, 0, 0, 0, 0}, {2, 0}},    {"a_i1", {1, 0, 1, 0, 0, 0}, {2, 0}},
      {"a_p1", {0, 1, 1, 0, 0, 0}, {2, 0}},    {"a_s2", {0, 0, 0, 1, 1, 0}, {0, 2}},
      {"a_i2", {0, 0, 0, 1, 0, 1}, {0, 2}},    {"a_p2", {0, 0, 0, 0, 1, 1}, {0, 2}},
      {"adag_s1", {1, 1, 0, 0, 0, 0}, {1, 0}}, {"adag_i1", {1, 0, 1, 0, 0, 0}, {1, 0}},
      {"adag_p1", {0, 1, 1, 0, 0, 0}, {1, 0}}, {"adag_s2", {0, 0, 0, 1, 1, 0}, {0, 1}},
      {"adag_i2", {0, 0, 0, 1, 0, 1}, {0, 1}}, {"adag_p2", {0, 0, 0, 0, 1, 1}, {0, 1}},
  };
  const std::vector<Row> eecc_rows = {
      {"a_s", {1, 1, 0}, {2}},    {"a_i", {1, 0, 1}, {2}},    {"a_p", {0, 1, 1}, {2}},
      {"adag_s", {1, 1, 0}, {1}}, {"adag_i", {1, 0, 1}, {1}}, {"adag_p", {0, 1, 1}, {1}},
  };
  const CodeSpec pcc = build_pcc(3);
  const auto pt = syndrome_table(pcc);
  c.add(table_equals(pt, pcc_rows), "qutrit PCC table equals the 12 reference rows");
  c.add(pairs_distinct(pt, baseline_syndrome(pcc)), "qutrit PCC (p12, q12) pairs distinct");
  const CodeSpec eecc = build_eecc(2);
  const auto et = syndrome_table(eecc);
  c.add(table_equals(et, eecc_rows), "qubit EECC table equals the 6 reference rows");
  c.add(pairs_distinct(et, baseline_syndrome(eecc)), "qubit EECC (p, q_EECC) pairs distinct");
  for (int N = 2; N <= 3; ++N) {
    const CodeSpec bc = build_bc(N);
    bool ok = true;
    for (int m = 1; m <= N; ++m) ok = ok && pairs_distinct(syndrome_table(bc, m), baseline_syndrome(bc));
    c.add(ok, "BC N=" + std::to_string(N) + " (p_BC, q_BC) distinct within each order m<=" + std::to_string(N));
  }
  c.finish();
  return res;
}

CriterionResult criterion6(const AcceptanceOptions& opt) {
  CriterionResult res{6, "recovery", false, {}, {}};
  Checks c(res);
  struct Case {
    const char* name;
    CodeSpec code;
    const char* label;
  };
  const std::vector<Case> cases{{"qutrit PCC signal loss", build_pcc(3), "a_s1"},
                                {"qutrit PCC pump loss", build_pcc(3), "a_p1"},
                                {"EECC Case A (signal loss)", build_eecc(2), "a_s"},
                                {"EECC Case B (pump loss)", build_eecc(2), "a_p"}};
  for (const auto& k : cases) {
    const RecoveryTrials t = recovery_trials(k.code, k.label, opt.trials, opt.seed, 1e-10);
    std::ostringstream os;
    os << k.name << ": " << t.trials << " states, min fidelity " << t.min_fidelity << ", max |1-F| "
       << sci(t.max_deviation);
    c.add(t.pass, os.str());
  }
  const CodeSpec bc = build_bc(2);
  const Basis b = enclosing_space(bc, 2);
  const auto set = xi_set(2, b);
  const RecoveryChannel ch = canonical_recovery(bc, set);
  double worst = 0.0;
  for (int i = 0; i < opt.trials; ++i) {
    const StateVector psi = random_logical_state(bc, opt.seed + static_cast<unsigned long long>(i));
    for (const auto& e : set) worst = std::max(worst, std::abs(1.0 - recovery_fidelity(ch, e, psi)));
  }
  std::ostringstream os;
  os << "BC N=2 canonical recovery for xi_2 (" << set.size() << " operators): " << opt.trials
     << " states, max |1-F| " << sci(worst);
  c.add(worst <= 1e-10, os.str());
  c.finish();
  return res;
}

CriterionResult criterion7() {
  CriterionResult res{7, "gate identities", false, {}, {}};
  Checks c(res);
  const auto checks = verify_gates(1e-10);
  std::map<std::string, std::vector<const GateCheck*>> groups;
  std::vector<std::string> order;
  for (const auto& g : checks) {
    if (!groups.count(g.group)) order.push_back(g.group);
    groups[g.group].push_back(&g);
  }
  for (const auto& name : order) {
    bool any = false;
    double best = 0.0;
    bool first = true;
    std::string members;
    for (const auto* g : groups[name]) {
      any = any || g->pass;
      if (first || g->max_deviation < best) best = g->max_deviation;
      first = false;
      if (!members.empty()) members += ", ";
      members += g->generator_set.empty() ? g->name : g->name + "/" + g->generator_set;
    }
    c.add(any, name + ": best deviation " + sci(best) + " [" + members + "]");
  }
  c.finish();
  return res;
}

CriterionResult criterion8() {
  CriterionResult res{8, "bounds", false, {}, {}};
  Checks c(res);
  c.add(min_n(3, 2, 1, 1) == 4 && !rotation_bound_holds({3, 3, 2, 1, 1}),
        "rotation bound (q=3, b=2, k=t=1) first satisfied at n=4");
  for (const auto& t : theorem_checks()) c.add(t.pass, t.name + ": " + t.finding);
  const auto pcc = saturation_report(build_pcc(2));
  c.add(pcc.saturated, "PCC N=2 loss bound saturation at n=2: " + pcc.note);
  const auto eecc = saturation_report(build_eecc(2));
  c.add(eecc.saturated, "EECC N=2 loss bound saturation at n=1: " + eecc.note);
  c.finish();
  return res;
}

CriterionResult criterion9() {
  CriterionResult res{9, "metadata", false, {}, {}};
  Checks c(res);
  bool rates = true, photons = true;
  for (int N = 2; N <= 8; ++N) {
    const CodeSpec p = build_pcc(N);
    rates = rates && p.params.n == 2 && p.params.q == p.params.b && p.params.k == 1 && code_rate(p) == 0.5;
    photons = photons && p.total_photons == Rational(3 * (N - 1));
  }
  c.add(rates, "PCC rate 1/2 for N=2..8 ((n,q,b,k) = (2,N,N,1))");
  c.add(photons, "PCC total photons 3(N-1) for N=2..8");
  const CodeSpec e = build_eecc(2);
  c.add(std::abs(code_rate(e) - 1.0 / std::log2(3.0)) <= 1e-15, "EECC N=2 rate 1/log2(3)");
  bool eph = true;
  for (int N = 2; N <= 8; ++N) eph = eph && build_eecc(N).total_photons == Rational(3 * (N - 1));
  c.add(eph, "EECC total photons 3(N-1) for N=2..8");
  bool brate = true, bph = true;
  for (int N = 1; N <= 8; ++N) {
    const CodeSpec b = build_bc(N);
    brate = brate && std::abs(code_rate(b) - 1.0 / std::log2(2.0 * N)) <= 1e-15;
    bph = bph && b.total_photons == Rational(6 * N - 3, 2);
  }
  c.add(brate, "BC rate 1/log2(2N) for N=1..8");
  c.add(bph, "BC total photons 3(N-1/2) for N=1..8");
  c.finish();
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  switch (id) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6(options);
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    default: throw InvalidArgument("criterion id must be 1..9");
  }
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + ": " + r.summary;
}

}  // namespace chi2qec
