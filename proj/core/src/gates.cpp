#include "chi2qec/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace chi2qec {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kPi = std::numbers::pi;
const double kR = std::sqrt(0.5);
const cplx kI{0.0, 1.0};

// Canonical indices in H_2.
constexpr int c002 = 0;
constexpr int c111 = 1;
constexpr int c220 = 2;
// v order position -> canonical index.
constexpr int kVtoC[3] = {c111, c220, c002};

Vec e(int i) {
  Vec v = Vec::Zero(3);
  v[i] = 1.0;
  return v;
}

Mat outer(const Vec& ket, const Vec& bra) { return ket * bra.adjoint(); }
Mat proj(int i) { return outer(e(i), e(i)); }
Mat id3() { return Mat::Identity(3, 3); }
Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Mat commutator_i(const Mat& a, const Mat& b) { return kI * (a * b - b * a); }

Eigen::Matrix3cd ladder_built(int k) {
  // A = a_s^dag a_i^dag a_p restricted to H_2 (v order).
  auto full = enumerate_truncated_space(ModeLayout::three_mode(1, 3));
  auto A = compose(ladder(0, LadderKind::raise, full),
                   compose(ladder(1, LadderKind::raise, full), ladder(2, LadderKind::lower, full)));
  const Mat a = restrict_operator(A, v_basis()).dense();
  if (k == 1) return kI * (a - a.adjoint()) / 2.0;
  return (a + a.adjoint()) / 2.0;
}

Eigen::Matrix3cd computed_generator(int k) {
  if (k <= 2) return ladder_built(k);
  const Mat g1 = ladder_built(1);
  const Mat g2 = ladder_built(2);
  const Mat g3 = commutator_i(g1, g2);
  if (k == 3) return g3;
  const Mat g4 = commutator_i(g2, g3);
  if (k == 4) return g4;
  const Mat g5 = commutator_i(g3, g1);
  if (k == 5) return g5;
  if (k == 6) return (commutator_i(g1, g4) + commutator_i(g5, g2)) / 2.0;
  return commutator_i(g4, g2);
}

Eigen::Matrix3cd printed_generator(int k) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  switch (k) {
    case 1:
    case 2: return ladder_built(k);
    case 3: m.diagonal() << 1.0, -2.0, 1.0; return m;
    case 4: m(0, 1) = m(1, 0) = 3.0; return m;
    case 5: m(0, 1) = 3.0 * kI; m(1, 0) = -3.0 * kI; return m;
    case 6: m(1, 2) = m(2, 1) = 0.75; return m;
    default: m(1, 2) = -0.75 * kI; m(2, 1) = 0.75 * kI; return m;
  }
}

Mat xp_matrix() {
  const Vec zero = kR * (e(c220) + e(c002));
  return outer(e(c220), zero) + proj(c111) + kR * outer(e(c002), e(c002) - e(c220));
}

Mat hadamard_matrix() {
  const Vec zero = kR * (e(c220) + e(c002));
  const Vec sym = (e(c220) + e(c002)) / 2.0;
  const Vec w = e(c002) - e(c220);
  return outer(sym + kR * e(c111), zero) + outer(sym - kR * e(c111), e(c111)) + outer(w, w) / 2.0;
}

Mat hprime_matrix() {
  return kR * outer(e(c220) - e(c111), e(c111)) + kR * outer(e(c220) + e(c111), e(c220)) + proj(c002);
}

Mat swap02() { return outer(e(c220), e(c002)) + outer(e(c002), e(c220)) + proj(c111); }
// Completed with |111><111| on the target when the control is |220>.
Mat fredkin() { return kron(proj(c002) + proj(c111), id3()) + kron(proj(c220), swap02()); }

// |220><111| + |111><002| + |002><220| and its inverse.
Mat cycle_a() { return outer(e(c220), e(c111)) + outer(e(c111), e(c002)) + outer(e(c002), e(c220)); }
Mat cycle_b() { return outer(e(c002), e(c111)) + outer(e(c111), e(c220)) + outer(e(c220), e(c002)); }

Mat cnot3_12() { return kron(proj(c111), id3()) + kron(proj(c002), cycle_a()) + kron(proj(c220), cycle_b()); }
Mat cnot3_21() { return kron(id3(), proj(c111)) + kron(cycle_a(), proj(c002)) + kron(cycle_b(), proj(c220)); }

// Qutrit labels: |111> -> 0, |002> -> 1, |220> -> 2.
int qutrit_label(int canonical) { return canonical == c111 ? 0 : canonical == c002 ? 1 : 2; }

cplx omega_pow(int p) { return std::polar(1.0, 2.0 * kPi * (p % 3) / 3.0); }

Mat cz22() {
  Mat m = Mat::Zero(9, 9);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) m(3 * a + b, 3 * a + b) = omega_pow(qutrit_label(a) * qutrit_label(b));
  }
  return m;
}

// CZ_{2,2} between groups 2 and 4 of H_2^{(x)4}.
Mat cz22_groups_2_4() {
  Mat m = Mat::Zero(81, 81);
  for (int i = 0; i < 81; ++i) {
    const int g2 = (i / 9) % 3;
    const int g4 = i % 3;
    m(i, i) = omega_pow(qutrit_label(g2) * qutrit_label(g4));
  }
  return m;
}

Mat cz_logical() {
  const Mat ff = kron(fredkin(), fredkin());
  return ff.adjoint() * cz22_groups_2_4() * ff;
}

Mat lambda_s() {
  const Mat xx = kron(xp_matrix(), xp_matrix());
  Mat d = Mat::Identity(9, 9);
  d(3 * c111 + c111, 3 * c111 + c111) = kI;
  return xx.adjoint() * d * xx;
}

Mat hadamard_block() {
  const Vec plus = kR * (e(c002) + e(c220));
  const Vec minus = kR * (e(c002) - e(c220));
  return outer(plus, e(c002)) + outer(minus, e(c220)) + proj(c111);
}

Mat lambda21h() { return kron(id3(), proj(c002) + proj(c111)) + kron(hadamard_block(), proj(c220)); }
Mat lambdabar21h() { return kron(id3(), proj(c111) + proj(c220)) + kron(hadamard_block(), proj(c002)); }

Mat cnot2_21() {
  const Mat s = proj(c002) + outer(e(c111), e(c220)) + outer(e(c220), e(c111));
  return kron(id3(), proj(c002) + proj(c220)) + kron(s, proj(c111));
}
Mat cnot2p_12() { return kron(proj(c111) + proj(c220), id3()) + kron(proj(c002), swap02()); }
Mat cnot2pp_12() { return kron(proj(c002) + proj(c111), id3()) + kron(proj(c220), swap02()); }

std::string pi_angle(double angle) {
  // Angles here are rational multiples of pi with small denominators.
  for (int den = 1; den <= 24; ++den) {
    const double num = angle / kPi * den;
    if (std::abs(num - std::round(num)) < 1e-12) {
      const long n = std::lround(num);
      std::ostringstream os;
      if (n == 0) return "0";
      if (n == -1) os << "-";
      else if (n != 1) os << n;
      os << "pi";
      if (den != 1) os << "/" << den;
      return os.str();
    }
  }
  std::ostringstream os;
  os << angle;
  return os.str();
}

LinearOperator wrap(const Mat& m, int groups) {
  const Basis b = h2_product_basis(groups);
  return LinearOperator::from_dense(b, b, m);
}

Mat logical_restriction(const Mat& u, const std::vector<Vec>& words) {
  const auto n = static_cast<Eigen::Index>(words.size());
  Mat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = words[static_cast<std::size_t>(r)].dot(u * words[static_cast<std::size_t>(c)]);
  }
  return m;
}

// Qutrit PCC codewords as 9-vectors over H_2 (x) H_2.
std::vector<Vec> pcc_qutrit_words() {
  const Vec w0 = kron(e(c111), e(c111));
  const Vec w1 = kR * (kron(e(c220), e(c220)) + kron(e(c002), e(c002)));
  const Vec w2 = kR * (kron(e(c220), e(c002)) + kron(e(c002), e(c220)));
  return {w0, w1, w2};
}

std::vector<Vec> eecc_words() { return {kR * (e(c220) + e(c002)), e(c111)}; }

double leakage(const Mat& u, const std::vector<Vec>& words) {
  Mat basis(u.rows(), static_cast<Eigen::Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = words[i];
  double worst = 0.0;
  for (const auto& w : words) {
    const Vec out = u * w;
    worst = std::max(worst, (out - basis * (basis.adjoint() * out)).norm());
  }
  return worst;
}

double unitarity(const Mat& u) {
  return (u.adjoint() * u - Mat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

Basis h2_basis() {
  static const Basis b = enumerate_irreducible_subspace(2, 1);
  return b;
}

Basis v_basis() {
  static const Basis b = make_basis(h2_basis()->layout(), {{1, 1, 1}, {2, 2, 0}, {0, 0, 2}});
  return b;
}

Basis h2_product_basis(int groups) {
  if (groups < 1) throw InvalidArgument("h2_product_basis: groups must be >= 1");
  if (groups == 1) return h2_basis();
  return enumerate_irreducible_subspace(2, groups);
}

std::string to_string(GeneratorSet set) { return set == GeneratorSet::computed ? "computed" : "printed"; }

Eigen::Matrix3cd generator_matrix(int k, GeneratorSet set) {
  if (k < 1 || k > 7) throw InvalidArgument("generator index must lie in 1..7");
  return set == GeneratorSet::computed ? computed_generator(k) : printed_generator(k);
}

LinearOperator generator(int k, GeneratorSet set) {
  return LinearOperator::from_dense(v_basis(), v_basis(), generator_matrix(k, set));
}

Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& G, double angle) {
  const Mat h = (G + G.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, angle * es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix3cd evolve(const std::vector<Factor>& factors, GeneratorSet set) {
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
  for (const auto& f : factors) u = u * expi_hermitian(generator_matrix(f.k, set), f.angle);
  return u;
}

std::string describe(const std::vector<Factor>& factors) {
  if (factors.empty()) return "I";
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += " ";
    out += "exp(i " + pi_angle(f.angle) + " G" + std::to_string(f.k) + ")";
  }
  return out;
}

PhaseComparison equal_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("equal_up_to_global_phase: shapes differ");
  }
  PhaseComparison out;
  const cplx overlap = (b.adjoint() * a).trace();
  out.global_phase = std::abs(overlap) > 1e-300 ? std::arg(overlap) : 0.0;
  out.max_deviation = (a - std::polar(1.0, out.global_phase) * b).cwiseAbs().maxCoeff();
  out.equal = out.max_deviation <= tol;
  return out;
}

Eigen::Matrix3cd v_to_canonical(const Eigen::Matrix3cd& m) {
  Eigen::Matrix3cd out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(kVtoC[r], kVtoC[c]) = m(r, c);
  }
  return out;
}

Eigen::Matrix3cd canonical_to_v(const Eigen::Matrix3cd& m) {
  Eigen::Matrix3cd out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(r, c) = m(kVtoC[r], kVtoC[c]);
  }
  return out;
}

std::vector<std::string> gate_names() {
  return {"XP",       "H",         "Hprime",    "F",         "CNOT3_12",     "CNOT3_21",
          "CZ22",     "CZ",        "LambdaS",   "Lambda21H", "LambdaBar21H", "CNOT2_21",
          "CNOT2p_12", "CNOT2pp_12", "EECC_R1", "EECC_R2"};
}

GateDef logical_gate(const std::string& name) {
  GateDef g;
  g.name = name;
  if (name == "XP") {
    g.unitary = wrap(xp_matrix(), 1);
    g.decomposition = describe({{6, 2 * kPi / 3}, {7, kPi / 3}});
  } else if (name == "H") {
    g.unitary = wrap(hadamard_matrix(), 1);
    g.decomposition = "XP^-1 Hprime XP";
  } else if (name == "Hprime") {
    g.unitary = wrap(hprime_matrix(), 1);
    g.decomposition = describe({{4, kPi / 6}, {5, -kPi / 12}});
  } else if (name == "F") {
    g.unitary = wrap(fredkin(), 2);
  } else if (name == "CNOT3_12") {
    g.unitary = wrap(cnot3_12(), 2);
  } else if (name == "CNOT3_21") {
    g.unitary = wrap(cnot3_21(), 2);
  } else if (name == "CZ22") {
    g.unitary = wrap(cz22(), 2);
  } else if (name == "CZ") {
    g.unitary = wrap(cz_logical(), 4);
    g.decomposition = "(F (x) F)^dag CZ22[2,4] (F (x) F)";
  } else if (name == "LambdaS") {
    g.unitary = wrap(lambda_s(), 2);
    g.decomposition = "(XP (x) XP)^-1 D (XP (x) XP), D = i on |111>|111>";
  } else if (name == "Lambda21H") {
    g.unitary = wrap(lambda21h(), 2);
  } else if (name == "LambdaBar21H") {
    g.unitary = wrap(lambdabar21h(), 2);
  } else if (name == "CNOT2_21") {
    g.unitary = wrap(cnot2_21(), 2);
  } else if (name == "CNOT2p_12") {
    g.unitary = wrap(cnot2p_12(), 2);
  } else if (name == "CNOT2pp_12") {
    g.unitary = wrap(cnot2pp_12(), 2);
  } else if (name == "EECC_R1") {
    g.unitary = wrap(v_to_canonical(evolve({{4, kPi / 6}}, GeneratorSet::computed)), 1);
    g.decomposition = describe({{4, kPi / 6}}) + " [computed]";
  } else if (name == "EECC_R2") {
    g.unitary = wrap(v_to_canonical(evolve({{7, kPi / 3}}, GeneratorSet::printed)), 1);
    g.decomposition = describe({{7, kPi / 3}}) + " [printed]";
  } else {
    throw UnknownName("gate '" + name + "'");
  }
  return g;
}

std::vector<GateCheck> verify_gates(double tol) {
  std::vector<GateCheck> out;
  for (int k = 3; k <= 7; ++k) {
    GateCheck c;
    c.name = "G" + std::to_string(k) + " commutator equals printed matrix";
    c.group = "G" + std::to_string(k);
    c.decomposition = k == 3   ? "i[G1,G2]"
                      : k == 4 ? "i[G2,G3]"
                      : k == 5 ? "i[G3,G1]"
                      : k == 6 ? "(i[G1,G4] + i[G5,G2])/2"
                               : "i[G4,G2]";
    c.generator_set = "computed";
    c.max_deviation = (computed_generator(k) - printed_generator(k)).cwiseAbs().maxCoeff();
    c.pass = c.max_deviation <= tol;
    out.push_back(c);
  }

  const Eigen::Matrix3cd xp_v = canonical_to_v(xp_matrix());
  const Eigen::Matrix3cd h_v = canonical_to_v(hadamard_matrix());
  const Eigen::Matrix3cd hp_v = canonical_to_v(hprime_matrix());
  const std::vector<Factor> xp_dec{{6, 2 * kPi / 3}, {7, kPi / 3}};
  const std::vector<Factor> hp_dec{{4, kPi / 6}, {5, -kPi / 12}};
  const std::vector<Factor> h_dec{{7, -kPi / 3}, {6, -2 * kPi / 3}, {4, kPi / 6},
                                  {5, -kPi / 12}, {6, 2 * kPi / 3}, {7, kPi / 3}};
  auto decomposition_check = [&](const std::string& name, const std::string& group,
                                 const std::vector<Factor>& dec, const Eigen::Matrix3cd& target) {
    for (GeneratorSet set : {GeneratorSet::computed, GeneratorSet::printed}) {
      const auto cmp = equal_up_to_global_phase(evolve(dec, set), target, tol);
      out.push_back({name, group, describe(dec), to_string(set), cmp.max_deviation, cmp.global_phase, cmp.equal});
    }
  };
  decomposition_check("XP decomposition", "XP_decomposition", xp_dec, xp_v);
  decomposition_check("Hprime decomposition", "Hprime_decomposition", hp_dec, hp_v);
  decomposition_check("H six-factor chain", "H_chain", h_dec, h_v);
  decomposition_check("XP as a single G7 exponential", "XP_single_factor", {{7, kPi / 3}}, xp_v);

  {
    const auto cmp = equal_up_to_global_phase(xp_matrix().adjoint() * hprime_matrix() * xp_matrix(),
                                              hadamard_matrix(), tol);
    out.push_back({"H from Hprime by XP conjugation", "H_conjugation", "XP^-1 Hprime XP", "",
                   cmp.max_deviation, cmp.global_phase, cmp.equal});
  }
  {
    // Logical action on |a~>_c |b~>_t must be omega^{ab}.
    const Mat u = cz_logical();
    std::vector<Vec> words;
    for (const auto& a : pcc_qutrit_words()) {
      for (const auto& b : pcc_qutrit_words()) words.push_back(kron(a, b));
    }
    Mat target = Mat::Zero(9, 9);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) target(3 * a + b, 3 * a + b) = omega_pow(a * b);
    }
    const auto cmp = equal_up_to_global_phase(logical_restriction(u, words), target, tol);
    const double dev = std::max({cmp.max_deviation, unitarity(u), leakage(u, words)});
    out.push_back({"CZ from Fredkin conjugation", "CZ", "(F (x) F)^dag CZ22[2,4] (F (x) F)", "", dev,
                   cmp.global_phase, dev <= tol});
  }
  {
    const Mat u = lambda_s();
    std::vector<Vec> words;
    for (const auto& a : eecc_words()) {
      for (const auto& b : eecc_words()) words.push_back(kron(a, b));
    }
    Mat target = Mat::Identity(4, 4);
    target(3, 3) = kI;
    const auto cmp = equal_up_to_global_phase(logical_restriction(u, words), target, tol);
    const double dev = std::max({cmp.max_deviation, unitarity(u), leakage(u, words)});
    out.push_back({"Lambda(S) logical action diag(1,1,1,i)", "LambdaS",
                   "(XP (x) XP)^-1 D (XP (x) XP)", "", dev, cmp.global_phase, dev <= tol});
  }
  {
    const Mat f = fredkin();
    const double dev = (f * f - Mat::Identity(9, 9)).cwiseAbs().maxCoeff();
    out.push_back({"F is an involution", "F_involution", "F F = I", "", dev, 0.0, dev <= tol});
    const Mat c = cnot3_12();
    const double dev3 = (c * c * c - Mat::Identity(9, 9)).cwiseAbs().maxCoeff();
    out.push_back({"CNOT3 cubes to identity", "CNOT3_cube", "CNOT3^3 = I", "", dev3, 0.0, dev3 <= tol});
  }
  for (const auto& name : gate_names()) {
    const Mat u = logical_gate(name).unitary.dense();
    const double dev = unitarity(u);
    out.push_back({name + " is unitary", "unitary", "U^dag U = I", "", dev, 0.0, dev <= tol});
  }
  return out;
}

}  // namespace chi2qec
