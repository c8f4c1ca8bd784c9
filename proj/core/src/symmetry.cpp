#include "chi2qec/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/SVD>

#include "chi2qec/codes.hpp"

namespace chi2qec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit_phase(double turns) { return std::polar(1.0, kTwoPi * turns); }

std::size_t group_mode(const Basis& basis, ModeLabel label, int group) {
  auto i = basis->layout().find(label, group);
  if (!i) {
    throw DimensionMismatch("basis layout has no " + to_string(label) + " mode in group " +
                            std::to_string(group));
  }
  return *i;
}

Eigen::MatrixXcd as_matrix(const std::vector<StateVector>& vs, const Basis& basis) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(basis->size()), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = embed(vs[j], basis).amplitudes;
  return m;
}

// Orthonormal basis for the column span (SVD, relative threshold).
Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& m) {
  if (m.cols() == 0) return Eigen::MatrixXcd(m.rows(), 0);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, s.size() ? s[0] : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

bool is_diagonal(const SparseMatrix& m) {
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      if (it.row() != it.col() && it.value() != cplx{0.0, 0.0}) return false;
    }
  }
  return true;
}

// Maps |+> -> t0, |-> -> t1 where |+-> = (|c_0> +- |c_R>)/sqrt2, and c_j -> e_j
// (j = 1..R-1) with e_j the Gram-Schmidt completion of the chain in ascending
// order against span{t0, t1}.  Identity on basis states outside the chain.
LinearOperator chain_beamsplitter(const Basis& basis, const std::vector<FockState>& chain,
                                  const StateVector& t0, const StateVector& t1) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  const std::size_t R = chain.size() - 1;
  std::vector<Eigen::Index> idx;
  for (const auto& s : chain) idx.push_back(static_cast<Eigen::Index>(basis->index(s)));

  const Eigen::VectorXcd v0 = embed(t0, basis).amplitudes;
  const Eigen::VectorXcd v1 = embed(t1, basis).amplitudes;
  std::vector<Eigen::VectorXcd> done{v0, v1};
  std::vector<Eigen::VectorXcd> completion;
  for (std::size_t j = 0; j <= R && completion.size() + 1 < R; ++j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v[idx[j]] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& d : done) v -= d * d.dot(v);
    }
    const double nv = v.norm();
    if (nv < 1e-10) continue;
    v /= nv;
    done.push_back(v);
    completion.push_back(v);
  }
  if (completion.size() + 1 != R && R > 1) {
    throw Error("pseudo-beam-splitter completion failed");
  }

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  const double r2 = std::sqrt(0.5);
  u.col(idx[0]) = r2 * (v0 + v1);
  u.col(idx[R]) = r2 * (v0 - v1);
  for (std::size_t j = 1; j < R; ++j) u.col(idx[j]) = completion[j - 1];
  return LinearOperator::from_dense(basis, basis, u);
}

std::vector<FockState> three_mode_chain(int R) {
  std::vector<FockState> chain;
  for (int j = 0; j <= R; ++j) chain.push_back({j, j, R - j});
  return chain;
}

std::vector<FockState> two_mode_chain(int R) {
  std::vector<FockState> chain;
  for (int j = 0; j <= R; ++j) chain.push_back({j, R - j});
  return chain;
}

void require_single_group_three_mode(const Basis& basis, const char* what) {
  const auto& layout = basis->layout();
  if (layout.size() != 3 || layout.groups() != 1) {
    throw DimensionMismatch(std::string(what) + ": needs a single (s, i, p) group");
  }
}

void require_two_mode(const Basis& basis, const char* what) {
  const auto& layout = basis->layout();
  if (layout.size() != 2 || !layout.find(ModeLabel::signal) || !layout.find(ModeLabel::pump)) {
    throw DimensionMismatch(std::string(what) + ": needs a (signal, pump) layout");
  }
}

}  // namespace

SymmetryOperator z_pair_operator(int M, ZPair pair, int group, const Basis& basis) {
  if (M < 1) throw InvalidArgument("Z operator dimension must be >= 1");
  const ModeLabel a = pair == ZPair::signal_pump ? ModeLabel::signal : ModeLabel::idler;
  const std::size_t ia = group_mode(basis, a, group);
  const std::size_t ip = group_mode(basis, ModeLabel::pump, group);
  auto op = diagonal_operator(basis, [=](const FockState& s) {
    return unit_phase(static_cast<double>((1 + s[ia] + s[ip]) % M) / M);
  });
  const std::string tag = pair == ZPair::signal_pump ? "s" : "i";
  const std::string suffix = basis->layout().groups() > 1 ? std::to_string(group) : "";
  return {"Z^(" + std::to_string(M) + ")_" + tag + suffix + ",p" + suffix, std::move(op)};
}

std::vector<SymmetryOperator> z_pair_operators(int M, const Basis& basis) {
  std::vector<SymmetryOperator> out;
  for (int g = 1; g <= basis->layout().groups(); ++g) {
    out.push_back(z_pair_operator(M, ZPair::signal_pump, g, basis));
    out.push_back(z_pair_operator(M, ZPair::idler_pump, g, basis));
  }
  return out;
}

SymmetryOperator inversion_operator(int M, int group, const Basis& basis) {
  if (M < 0) throw InvalidArgument("inversion order must be >= 0");
  std::vector<std::size_t> modes;
  for (ModeLabel l : {ModeLabel::signal, ModeLabel::idler, ModeLabel::pump}) {
    modes.push_back(group_mode(basis, l, group));
  }
  auto image = [&](const FockState& s) {
    if (s[modes[0]] != s[modes[1]] || s[modes[0]] + s[modes[2]] != M) {
      throw InvalidArgument("inversion operator: " + format_state(s) + " is outside H_" +
                            std::to_string(M) + " in group " + std::to_string(group));
    }
    FockState t = s;
    for (std::size_t k : modes) t[k] = M - s[k];
    return t;
  };
  const std::string suffix = basis->layout().groups() > 1 ? "_" + std::to_string(group) : "";
  return {"V^(" + std::to_string(M) + ")" + suffix, monomial_operator(basis, basis, image)};
}

SymmetryOperator inversion_all_groups(int M, const Basis& basis) {
  const int groups = basis->layout().groups();
  SymmetryOperator out = inversion_operator(M, 1, basis);
  std::string name = out.name;
  for (int g = 2; g <= groups; ++g) {
    auto next = inversion_operator(M, g, basis);
    out.op = compose(next.op, out.op);
    name += " x " + next.name;
  }
  out.name = name;
  return out;
}

SymmetryOperator swap_operator(const Basis& basis) {
  const auto& layout = basis->layout();
  if (layout.groups() != 2) throw InvalidArgument("swap operator needs exactly two groups");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i].group != 1) continue;
    auto j = layout.find(layout[i].label, 2);
    if (!j) throw InvalidArgument("swap operator: asymmetric group layouts");
    pairs.emplace_back(i, *j);
  }
  std::size_t group2 = 0;
  for (const auto& m : layout.modes()) group2 += m.group == 2 ? 1 : 0;
  if (group2 != pairs.size()) throw InvalidArgument("swap operator: asymmetric group layouts");
  auto image = [&](const FockState& s) {
    FockState t = s;
    for (auto [i, j] : pairs) std::swap(t[i], t[j]);
    return t;
  };
  return {"X_1,2", monomial_operator(basis, basis, image)};
}

SymmetryOperator signal_parity_operator(const Basis& basis) {
  std::vector<std::size_t> signals;
  for (std::size_t i = 0; i < basis->layout().size(); ++i) {
    if (basis->layout()[i].label == ModeLabel::signal) signals.push_back(i);
  }
  auto op = diagonal_operator(basis, [&](const FockState& s) {
    int total = 0;
    for (std::size_t k : signals) total += s[k];
    return cplx(total % 2 == 0 ? 1.0 : -1.0, 0.0);
  });
  return {"Pi_s", std::move(op)};
}

SymmetryOperator pseudo_beamsplitter(int N, const Basis& basis) {
  if (N < 1) throw InvalidArgument("pseudo-beam-splitter needs N >= 1");
  require_single_group_three_mode(basis, "pseudo_beamsplitter");
  const int R = 2 * N - 1;
  auto op = chain_beamsplitter(basis, three_mode_chain(R), bc_state(N, 0, basis), bc_state(N, 1, basis));
  return {"U_BS", std::move(op)};
}

SymmetryOperator bc_symmetry_operator(int N, const Basis& basis) {
  const auto u = pseudo_beamsplitter(N, basis).op;
  const auto v = inversion_operator(2 * N - 1, 1, basis).op;
  const auto p = signal_parity_operator(basis).op;
  auto s = compose(p, compose(u, compose(v, adjoint(u))));
  return {"Pi_s U_BS V^(" + std::to_string(2 * N - 1) + ") U_BS^dag", std::move(s)};
}

SymmetryOperator two_mode_z_operator(int N, const Basis& basis) {
  if (N < 1) throw InvalidArgument("two-mode Z needs N >= 1");
  require_two_mode(basis, "two_mode_z_operator");
  const int M = 2 * N;
  const std::size_t is = basis->layout().index(ModeLabel::signal);
  const std::size_t ip = basis->layout().index(ModeLabel::pump);
  auto op = diagonal_operator(basis, [=](const FockState& s) {
    return unit_phase(static_cast<double>((1 + s[is] + s[ip]) % M) / M);
  });
  return {"Z^(" + std::to_string(M) + ")_s,p", std::move(op)};
}

SymmetryOperator two_mode_bc_symmetry_operator(int N, const Basis& basis) {
  if (N < 1) throw InvalidArgument("two-mode BC symmetry needs N >= 1");
  require_two_mode(basis, "two_mode_bc_symmetry_operator");
  const int R = 2 * N - 1;
  const std::size_t is = basis->layout().index(ModeLabel::signal);
  const std::size_t ip = basis->layout().index(ModeLabel::pump);
  auto image = [&](const FockState& s) {
    if (s[is] + s[ip] != R) {
      throw InvalidArgument("two-mode inversion: " + format_state(s) + " is off the chain");
    }
    FockState t = s;
    std::swap(t[is], t[ip]);
    return t;
  };
  const auto v = monomial_operator(basis, basis, image);
  const auto u = chain_beamsplitter(basis, two_mode_chain(R), two_mode_bc_state(N, 0, basis),
                                    two_mode_bc_state(N, 1, basis));
  const auto p = signal_parity_operator(basis).op;
  auto s = compose(p, compose(u, compose(v, adjoint(u))));
  return {"Pi_s U~_BS V~ U~_BS^dag", std::move(s)};
}

double max_commutator_norm(const std::vector<SymmetryOperator>& ops) {
  double worst = 0.0;
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      const auto& x = ops[a].op;
      const auto& y = ops[b].op;
      if (!same_basis(x.domain, y.domain) || !same_basis(x.domain, x.codomain) ||
          !same_basis(y.domain, y.codomain)) {
        throw DimensionMismatch("symmetry operators must share one square basis");
      }
      SparseMatrix c = x.matrix * y.matrix - y.matrix * x.matrix;
      worst = std::max(worst, c.norm());
    }
  }
  return worst;
}

EigenspaceResult joint_unity_eigenspace(const std::vector<SymmetryOperator>& ops, double tol) {
  if (ops.empty()) throw InvalidArgument("joint_unity_eigenspace needs at least one operator");
  const Basis basis = ops.front().op.domain;
  for (const auto& s : ops) {
    if (!same_basis(s.op.domain, basis) || !same_basis(s.op.codomain, basis)) {
      throw DimensionMismatch("symmetry operators must share one square basis");
    }
  }
  EigenspaceResult result;
  result.max_commutator = max_commutator_norm(ops);
  if (result.max_commutator > tol) {
    throw NonCommutingOperators("symmetry operators do not commute", result.max_commutator);
  }

  const auto n = static_cast<Eigen::Index>(basis->size());
  result.dimension_trace.push_back(basis->size());

  // While every operator so far is diagonal the subspace is a set of basis states.
  std::optional<std::vector<Eigen::Index>> selected(std::vector<Eigen::Index>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i) (*selected)[static_cast<std::size_t>(i)] = i;
  Eigen::MatrixXcd q;

  for (const auto& s : ops) {
    if (selected && is_diagonal(s.op.matrix)) {
      std::vector<Eigen::Index> keep;
      for (Eigen::Index i : *selected) {
        if (std::abs(s.op.matrix.coeff(i, i) - s.expected) <= tol) keep.push_back(i);
      }
      selected = std::move(keep);
      result.dimension_trace.push_back(selected->size());
      continue;
    }
    if (selected) {
      q = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(selected->size()));
      for (std::size_t j = 0; j < selected->size(); ++j) q((*selected)[j], static_cast<Eigen::Index>(j)) = 1.0;
      selected.reset();
    }
    if (q.cols() == 0) {
      result.dimension_trace.push_back(0);
      continue;
    }
    Eigen::MatrixXcd a = s.op.matrix * q - s.expected * q;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      if (j >= sv.size() || sv[j] <= tol) null_cols.push_back(j);
    }
    Eigen::MatrixXcd vnull(q.cols(), static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t j = 0; j < null_cols.size(); ++j) vnull.col(static_cast<Eigen::Index>(j)) = svd.matrixV().col(null_cols[j]);
    q = q * vnull;
    result.dimension_trace.push_back(static_cast<std::size_t>(q.cols()));
  }

  std::vector<StateVector> raw;
  if (selected) {
    for (Eigen::Index i : *selected) raw.push_back(StateVector::basis_state(basis, basis->state(static_cast<std::size_t>(i))));
  } else {
    for (Eigen::Index j = 0; j < q.cols(); ++j) raw.emplace_back(basis, q.col(j));
  }
  if (raw.empty()) throw EmptyEigenspace("joint unity eigenspace is empty");
  result.vectors = canonicalize_subspace(raw);

  for (const auto& s : ops) {
    for (const auto& v : result.vectors) {
      const StateVector sv = apply(s.op, v);
      result.max_residual = std::max(result.max_residual, (sv.amplitudes - s.expected * v.amplitudes).norm());
    }
  }
  return result;
}

std::vector<StateVector> canonicalize_subspace(const std::vector<StateVector>& vectors) {
  if (vectors.empty()) return {};
  const Basis basis = vectors.front().basis;
  const Eigen::MatrixXcd q = orthonormal_span(as_matrix(vectors, basis));
  const Eigen::Index rank = q.cols();
  std::vector<Eigen::VectorXcd> out;
  for (Eigen::Index i = 0; i < q.rows() && static_cast<Eigen::Index>(out.size()) < rank; ++i) {
    Eigen::VectorXcd v = q * q.row(i).adjoint();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& d : out) v -= d * d.dot(v);
    }
    const double nv = v.norm();
    if (nv < 1e-8) continue;
    v /= nv;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v[k]) > 1e-12) {
        v *= std::conj(v[k]) / std::abs(v[k]);
        v[k] = std::abs(v[k]);
        break;
      }
    }
    out.push_back(std::move(v));
  }
  std::vector<StateVector> result;
  for (auto& v : out) result.emplace_back(basis, std::move(v));
  return result;
}

double projector_distance(const std::vector<StateVector>& a, const std::vector<StateVector>& b) {
  if (a.empty() && b.empty()) return 0.0;
  const Basis basis = a.empty() ? b.front().basis : a.front().basis;
  const Eigen::MatrixXcd qa = orthonormal_span(as_matrix(a, basis));
  const Eigen::MatrixXcd qb = orthonormal_span(as_matrix(b, basis));
  // ||Pa - Pb||^2 = ||(I - Pb) Qa||^2 + ||(I - Pa) Qb||^2, free of cancellation.
  const Eigen::MatrixXcd ra = qa - qb * (qb.adjoint() * qa);
  const Eigen::MatrixXcd rb = qb - qa * (qa.adjoint() * qb);
  return std::sqrt(ra.squaredNorm() + rb.squaredNorm());
}

}  // namespace chi2qec
