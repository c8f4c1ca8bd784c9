#include "chi2qec/codes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "chi2qec/combinatorics.hpp"

namespace chi2qec {

namespace {

const double kInvSqrt2 = std::sqrt(0.5);

FockState concat(const FockState& a, const FockState& b) {
  FockState t = a;
  t.insert(t.end(), b.begin(), b.end());
  return t;
}

FockState chain3(int n, int R) { return {n, n, R - n}; }

// (|a>|b> + |b>|a>)/sqrt2, or |a>|a> when a == b.
StateVector symmetric_pair(const Basis& basis, const FockState& a, const FockState& b) {
  if (a == b) return StateVector::basis_state(basis, concat(a, a));
  return StateVector::from_terms(basis, {{concat(a, b), kInvSqrt2}, {concat(b, a), kInvSqrt2}});
}

StateVector same_group_pair(const Basis& basis, const FockState& a, const FockState& b) {
  return StateVector::from_terms(basis, {{concat(a, a), kInvSqrt2}, {concat(b, b), kInvSqrt2}});
}

double inverse_power_of_two(int e) { return std::ldexp(1.0, -e); }

}  // namespace

std::string to_string(CodeFamily family) {
  switch (family) {
    case CodeFamily::PCC:
      return "PCC";
    case CodeFamily::EECC:
      return "EECC";
    case CodeFamily::BC:
      return "BC";
    case CodeFamily::BC2mode:
      return "BC2mode";
  }
  return "?";
}

CodeFamily parse_code_family(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "pcc") return CodeFamily::PCC;
  if (t == "eecc") return CodeFamily::EECC;
  if (t == "bc") return CodeFamily::BC;
  if (t == "bc2" || t == "bc2mode") return CodeFamily::BC2mode;
  throw UnknownName("unknown code '" + text + "' (expected pcc, eecc, bc or bc2)");
}

int CodeSpec::max_occupation() const {
  int m = 0;
  for (const auto& c : logical_states) {
    for (const auto& [s, a] : c.support(1e-14)) m = std::max(m, *std::max_element(s.begin(), s.end()));
  }
  return m;
}

CodeSpec build_pcc(int N) {
  if (N < 2) throw InvalidArgument("PCC needs N >= 2");
  const int R = N - 1;
  CodeSpec spec;
  spec.family = CodeFamily::PCC;
  spec.name = "PCC";
  spec.params = {N, 2, N, N, 1};
  spec.basis = enumerate_irreducible_subspace(R, 2);
  spec.layout = spec.basis->layout();
  spec.subspace_pump_number = R;
  spec.total_photons = total_photons_formula(CodeFamily::PCC, N);
  auto& L = spec.logical_states;
  const Basis& b = spec.basis;
  if (N == 2) {
    L.push_back(same_group_pair(b, chain3(1, 1), chain3(0, 1)));
    L.push_back(symmetric_pair(b, chain3(1, 1), chain3(0, 1)));
  } else if (N % 2 == 0) {
    const int m = N / 2;
    for (int r = 0; r < m; ++r) {
      const FockState hi = chain3(m + r, R);
      const FockState lo = chain3(m - 1 - r, R);
      L.push_back(symmetric_pair(b, hi, lo));
      L.push_back(same_group_pair(b, hi, lo));
    }
  } else {
    const int m = (N - 1) / 2;
    L.push_back(StateVector::basis_state(b, concat(chain3(m, R), chain3(m, R))));
    for (int r = 1; r <= m; ++r) {
      const FockState hi = chain3(m + r, R);
      const FockState lo = chain3(m - r, R);
      L.push_back(same_group_pair(b, hi, lo));
      L.push_back(symmetric_pair(b, hi, lo));
    }
  }
  return spec;
}

CodeSpec build_eecc(int N) {
  if (N < 2) throw InvalidArgument("EECC needs N >= 2");
  const int R = 2 * N - 2;
  CodeSpec spec;
  spec.family = CodeFamily::EECC;
  spec.name = "EECC";
  spec.params = {N, 1, 2 * N - 1, N, 1};
  spec.basis = enumerate_irreducible_subspace(R, 1);
  spec.layout = spec.basis->layout();
  spec.subspace_pump_number = R;
  spec.total_photons = total_photons_formula(CodeFamily::EECC, N);
  for (int j = 0; j < N - 1; ++j) {
    spec.logical_states.push_back(StateVector::from_terms(
        spec.basis, {{chain3(R - j, R), kInvSqrt2}, {chain3(j, R), kInvSqrt2}}));
  }
  spec.logical_states.push_back(StateVector::basis_state(spec.basis, chain3(N - 1, R)));
  return spec;
}

StateVector bc_state(int N, int bit, const Basis& basis) {
  if (N < 1) throw InvalidArgument("BC needs N >= 1");
  if (bit != 0 && bit != 1) throw InvalidArgument("BC logical index must be 0 or 1");
  const int R = 2 * N - 1;
  const double norm = inverse_power_of_two(N - 1);
  std::vector<std::pair<FockState, cplx>> terms;
  for (int j = 0; j < N; ++j) {
    const int n = 2 * j + bit;
    terms.emplace_back(chain3(n, R), sqrt_binomial(R, n) * norm);
  }
  return StateVector::from_terms(basis, terms);
}

Basis two_mode_chain_basis(int N) {
  if (N < 1) throw InvalidArgument("two-mode BC needs N >= 1");
  const int R = 2 * N - 1;
  std::vector<FockState> states;
  for (int n = 0; n <= R; ++n) states.push_back({n, R - n});
  return make_basis(ModeLayout::signal_pump(R), std::move(states));
}

StateVector two_mode_bc_state(int N, int bit, const Basis& basis) {
  if (N < 1) throw InvalidArgument("two-mode BC needs N >= 1");
  if (bit != 0 && bit != 1) throw InvalidArgument("BC logical index must be 0 or 1");
  const int R = 2 * N - 1;
  const double norm = inverse_power_of_two(N - 1);
  std::vector<std::pair<FockState, cplx>> terms;
  if (bit == 0) {
    for (int j = 1; j <= N; ++j) {
      terms.emplace_back(FockState{2 * N - 2 * j, 2 * j - 1}, sqrt_binomial(R, 2 * j - 1) * norm);
    }
  } else {
    for (int j = 0; j < N; ++j) {
      terms.emplace_back(FockState{2 * N - 2 * j - 1, 2 * j}, sqrt_binomial(R, 2 * j) * norm);
    }
  }
  return StateVector::from_terms(basis, terms);
}

CodeSpec build_bc(int N) {
  if (N < 1) throw InvalidArgument("BC needs N >= 1");
  const int R = 2 * N - 1;
  CodeSpec spec;
  spec.family = CodeFamily::BC;
  spec.name = "BC";
  spec.params = {N, 1, 2 * N, 2, 1};
  spec.basis = enumerate_irreducible_subspace(R, 1);
  spec.layout = spec.basis->layout();
  spec.subspace_pump_number = R;
  spec.total_photons = total_photons_formula(CodeFamily::BC, N);
  spec.logical_states = {bc_state(N, 0, spec.basis), bc_state(N, 1, spec.basis)};
  return spec;
}

CodeSpec build_two_mode_bc(int N) {
  if (N < 1) throw InvalidArgument("two-mode BC needs N >= 1");
  CodeSpec spec;
  spec.family = CodeFamily::BC2mode;
  spec.name = "BC2mode";
  spec.params = {N, 1, 2 * N, 2, 1};
  spec.basis = two_mode_chain_basis(N);
  spec.layout = spec.basis->layout();
  spec.subspace_pump_number = 2 * N - 1;
  spec.total_photons = total_photons_formula(CodeFamily::BC2mode, N);
  spec.logical_states = {two_mode_bc_state(N, 0, spec.basis), two_mode_bc_state(N, 1, spec.basis)};
  return spec;
}

CodeSpec build_code(CodeFamily family, int N) {
  switch (family) {
    case CodeFamily::PCC:
      return build_pcc(N);
    case CodeFamily::EECC:
      return build_eecc(N);
    case CodeFamily::BC:
      return build_bc(N);
    case CodeFamily::BC2mode:
      return build_two_mode_bc(N);
  }
  throw InvalidArgument("unknown code family");
}

double code_rate(int n, int q, int b, int k) {
  if (n < 1 || k < 1 || q < 2 || b < 2) throw InvalidArgument("code_rate: need n, k >= 1 and q, b >= 2");
  return k * std::log2(static_cast<double>(b)) / (n * std::log2(static_cast<double>(q)));
}

double code_rate(const CodeSpec& spec) {
  const auto& p = spec.params;
  return code_rate(p.n, p.q, p.b, p.k);
}

std::vector<std::vector<double>> mean_photons_per_mode(const CodeSpec& spec) {
  std::vector<std::vector<double>> out;
  for (const auto& c : spec.logical_states) {
    std::vector<double> row(spec.layout.size(), 0.0);
    for (const auto& [s, a] : c.support(0.0)) {
      for (std::size_t k = 0; k < s.size(); ++k) row[k] += std::norm(a) * s[k];
    }
    out.push_back(std::move(row));
  }
  return out;
}

double mean_total_photons(const CodeSpec& spec) {
  double total = 0.0;
  for (const auto& row : mean_photons_per_mode(spec)) {
    for (double x : row) total += x;
  }
  return total / static_cast<double>(spec.logical_states.size());
}

Rational total_photons_formula(CodeFamily family, int N) {
  switch (family) {
    case CodeFamily::PCC:
    case CodeFamily::EECC:
      return Rational(3 * (N - 1));
    case CodeFamily::BC:
      return Rational(6 * N - 3, 2);
    case CodeFamily::BC2mode:
      return Rational(2 * N - 1);
  }
  throw InvalidArgument("unknown code family");
}

double orthonormality_defect(const CodeSpec& spec) {
  double worst = 0.0;
  const auto& L = spec.logical_states;
  for (std::size_t a = 0; a < L.size(); ++a) {
    for (std::size_t b = 0; b < L.size(); ++b) {
      const cplx ip = inner_product(L[a], L[b]);
      worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::vector<SymmetryOperator> code_symmetry_operators(const CodeSpec& spec) {
  const int R = spec.subspace_pump_number;
  switch (spec.family) {
    case CodeFamily::PCC:
      return {inversion_all_groups(R, spec.basis), swap_operator(spec.basis)};
    case CodeFamily::EECC:
      return {inversion_operator(R, 1, spec.basis)};
    case CodeFamily::BC:
      return {bc_symmetry_operator(spec.params.N, spec.basis)};
    case CodeFamily::BC2mode:
      return {two_mode_bc_symmetry_operator(spec.params.N, spec.basis)};
  }
  throw InvalidArgument("unknown code family");
}

SynthesisReport synthesize(const CodeSpec& spec, double tol) {
  const int R = spec.subspace_pump_number;
  const Basis truncated = enumerate_truncated_space(spec.layout.with_cap(R));
  std::vector<SymmetryOperator> stage1;
  if (spec.family == CodeFamily::BC2mode) {
    stage1.push_back(two_mode_z_operator(spec.params.N, truncated));
  } else {
    stage1 = z_pair_operators(R + 1, truncated);
  }
  const EigenspaceResult first = joint_unity_eigenspace(stage1, tol);

  std::vector<FockState> states;
  for (const auto& v : first.vectors) {
    const auto sup = v.support(1e-12);
    if (sup.size() != 1) throw Error("Z-pair stage produced a non-basis vector");
    states.push_back(sup.front().first);
  }
  std::sort(states.begin(), states.end());
  if (states != spec.basis->states()) {
    throw Error("Z-pair stage does not reproduce the code's symmetry subspace");
  }

  const auto stage2 = code_symmetry_operators(spec);
  const EigenspaceResult second = joint_unity_eigenspace(stage2, tol);

  SynthesisReport report;
  report.dimension_trace = first.dimension_trace;
  report.dimension_trace.insert(report.dimension_trace.end(), second.dimension_trace.begin() + 1,
                                second.dimension_trace.end());
  report.vectors = second.vectors;
  report.projector_distance = projector_distance(report.vectors, spec.logical_states);
  report.subspace_equal = report.projector_distance < 1e-8;

  for (const auto& c : spec.logical_states) {
    const StateVector ct = embed(c, truncated);
    for (const auto& s : stage1) {
      report.max_codeword_residual =
          std::max(report.max_codeword_residual, (apply(s.op, ct).amplitudes - ct.amplitudes).norm());
    }
    for (const auto& s : stage2) {
      report.max_codeword_residual =
          std::max(report.max_codeword_residual, (apply(s.op, c).amplitudes - c.amplitudes).norm());
    }
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(c.size()));
    for (const auto& v : report.vectors) proj += v.amplitudes * v.amplitudes.dot(c.amplitudes);
    report.codeword_leakage = std::max(report.codeword_leakage, (c.amplitudes - proj).norm());
  }
  return report;
}

}  // namespace chi2qec
