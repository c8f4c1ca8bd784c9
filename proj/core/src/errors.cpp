#include "chi2qec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chi2qec/parallel.hpp"

namespace chi2qec {

namespace {

using Triplet = Eigen::Triplet<cplx>;

std::string factor_label(const std::string& prefix, const std::string& mode, int e) {
  std::string s = prefix + mode;
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

std::string monomial_label(const ModeLayout& layout, const std::vector<int>& e, ErrorKind kind) {
  const std::string prefix = kind == ErrorKind::loss ? "a_" : kind == ErrorKind::gain ? "adag_" : "n_";
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += factor_label(prefix, layout.mode_name(k), e[k]);
  }
  return out.empty() ? "I" : out;
}

double sqrt_big(const BigInt& x) { return std::sqrt(static_cast<double>(x)); }

bool dephasing_like(ErrorKind k) { return k == ErrorKind::dephasing || k == ErrorKind::identity; }

}  // namespace

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::identity: return "identity";
    case ErrorKind::loss: return "loss";
    case ErrorKind::gain: return "gain";
    case ErrorKind::dephasing: return "dephasing";
    case ErrorKind::kraus: return "kraus";
  }
  return "unknown";
}

Basis enclosing_space(const CodeSpec& spec, int extra) {
  if (extra < 0) throw InvalidArgument("enclosing_space: extra must be non-negative");
  return enumerate_truncated_space(spec.layout.with_cap(spec.max_occupation() + extra));
}

ErrorOperator monomial_error(const Basis& basis, const std::vector<int>& exponents, ErrorKind kind) {
  const ModeLayout& layout = basis->layout();
  if (exponents.size() != layout.size()) {
    throw DimensionMismatch("monomial_error: one exponent per mode required");
  }
  if (kind != ErrorKind::loss && kind != ErrorKind::gain && kind != ErrorKind::dephasing) {
    throw InvalidArgument("monomial_error: kind must be loss, gain or dephasing");
  }
  int order = 0;
  for (int e : exponents) {
    if (e < 0) throw InvalidArgument("monomial_error: negative exponent");
    order += e;
  }
  const auto dim = static_cast<Eigen::Index>(basis->size());
  std::vector<Triplet> trips;
  std::vector<char> overflow(basis->size(), 0);
  for (std::size_t c = 0; c < basis->size(); ++c) {
    FockState s = basis->state(c);
    BigInt weight = 1;
    double diag = 1.0;
    bool zero = false;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const int e = exponents[k];
      if (e == 0) continue;
      if (kind == ErrorKind::loss) {
        if (s[k] < e) { zero = true; break; }
        weight *= falling_factorial(s[k], e);
        s[k] -= e;
      } else if (kind == ErrorKind::gain) {
        weight *= rising_from_next(s[k], e);
        s[k] += e;
      } else {
        diag *= std::pow(static_cast<double>(s[k]), e);
      }
    }
    if (zero) continue;
    const double coeff = kind == ErrorKind::dephasing ? diag : sqrt_big(weight);
    if (coeff == 0.0) continue;
    auto r = basis->find(s);
    if (!r) {
      overflow[c] = 1;
      continue;
    }
    trips.emplace_back(static_cast<Eigen::Index>(*r), static_cast<Eigen::Index>(c), cplx{coeff, 0.0});
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  ErrorOperator out;
  out.op = LinearOperator(basis, basis, std::move(m));
  out.op.overflow = std::move(overflow);
  out.order = order;
  out.kind = order == 0 ? ErrorKind::identity : kind;
  out.label = monomial_label(layout, exponents, kind);
  return out;
}

ErrorOperator parse_error_label(const std::string& label, const Basis& basis) {
  const ModeLayout& layout = basis->layout();
  std::vector<int> e(layout.size(), 0);
  if (label == "I") return monomial_error(basis, e, ErrorKind::loss);
  std::istringstream in(label);
  std::string tok;
  std::optional<ErrorKind> kind;
  while (in >> tok) {
    ErrorKind k;
    std::string rest;
    if (tok.rfind("adag_", 0) == 0) {
      k = ErrorKind::gain;
      rest = tok.substr(5);
    } else if (tok.rfind("a_", 0) == 0) {
      k = ErrorKind::loss;
      rest = tok.substr(2);
    } else if (tok.rfind("n_", 0) == 0) {
      k = ErrorKind::dephasing;
      rest = tok.substr(2);
    } else {
      throw UnknownName("error factor '" + tok + "'");
    }
    if (kind && *kind != k) throw InvalidArgument("error label mixes kinds: " + label);
    kind = k;
    int power = 1;
    if (auto caret = rest.find('^'); caret != std::string::npos) {
      try {
        power = std::stoi(rest.substr(caret + 1));
      } catch (const std::exception&) {
        throw InvalidArgument("bad exponent in '" + tok + "'");
      }
      if (power < 1) throw InvalidArgument("bad exponent in '" + tok + "'");
      rest = rest.substr(0, caret);
    }
    auto mode = layout.find_by_name(rest);
    if (!mode) throw UnknownName("mode '" + rest + "' in error label");
    e[*mode] += power;
  }
  if (!kind) throw InvalidArgument("empty error label");
  return monomial_error(basis, e, *kind);
}

std::vector<std::vector<int>> compositions(int m, std::size_t modes) {
  std::vector<std::vector<int>> out;
  if (m < 0 || modes == 0) return out;
  std::vector<int> cur(modes, 0);
  // Depth-first with the largest first-mode exponent first.
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k + 1 == modes) {
      cur[k] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[k] = e;
      rec(k + 1, left - e);
    }
  };
  rec(0, m);
  return out;
}

std::vector<ErrorOperator> xi_set(int m, const Basis& basis, const std::vector<ErrorKind>& kinds) {
  if (m < 0) throw InvalidArgument("xi_set: order must be non-negative");
  const std::size_t modes = basis->layout().size();
  std::vector<ErrorOperator> out;
  out.push_back(monomial_error(basis, std::vector<int>(modes, 0), ErrorKind::loss));
  for (ErrorKind kind : kinds) {
    const int degree = kind == ErrorKind::dephasing ? m - 1 : m;
    if (degree <= 0) continue;
    for (const auto& e : compositions(degree, modes)) out.push_back(monomial_error(basis, e, kind));
  }
  return out;
}

KrausSet lowest_order_loss_kraus(double gamma, const Basis& basis, NoJumpForm form) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in [0, 1]");
  const std::size_t modes = basis->layout().size();
  KrausSet set;
  auto total = [](const FockState& s) {
    int t = 0;
    for (int x : s) t += x;
    return t;
  };
  ErrorOperator e0;
  e0.order = 0;
  if (gamma == 0.0) {
    e0.label = "I";
    e0.kind = ErrorKind::identity;
    e0.op = LinearOperator::identity(basis);
    set.ops.push_back(std::move(e0));
    return set;
  }
  e0.label = "E0";
  e0.kind = ErrorKind::kraus;
  e0.op = diagonal_operator(basis, [&](const FockState& s) {
    const double x = gamma * total(s);
    const double v = form == NoJumpForm::sqrt ? std::sqrt(std::max(0.0, 1.0 - x)) : 1.0 - x / 2.0;
    return cplx{v, 0.0};
  });
  set.ops.push_back(std::move(e0));
  for (std::size_t k = 0; k < modes; ++k) {
    ErrorOperator e;
    e.label = "E_" + basis->layout().mode_name(k);
    e.kind = ErrorKind::loss;
    e.order = 1;
    e.op = scale(ladder(k, LadderKind::lower, basis), std::sqrt(gamma));
    set.ops.push_back(std::move(e));
  }
  // sum E^dag E is diagonal here: |E0(s)|^2 + gamma * total(s).
  const auto& d0 = set.ops.front().op.matrix;
  for (std::size_t c = 0; c < basis->size(); ++c) {
    const int t = total(basis->state(c));
    if (gamma * t > 1.0) continue;
    const double e0 = std::abs(d0.coeff(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c)));
    set.completeness_residual = std::max(set.completeness_residual, std::abs(e0 * e0 + gamma * t - 1.0));
  }
  return set;
}

ErrorOperator amplitude_damping_kraus(double gamma, int m, std::size_t mode, const Basis& basis) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in [0, 1]");
  if (m < 0) throw InvalidArgument("amplitude_damping_kraus: m must be non-negative");
  if (mode >= basis->layout().size()) throw InvalidArgument("amplitude_damping_kraus: bad mode");
  std::vector<Triplet> trips;
  for (std::size_t c = 0; c < basis->size(); ++c) {
    FockState s = basis->state(c);
    const int n = s[mode];
    if (n < m) continue;
    const double coeff = sqrt_binomial(n, m) * std::pow(gamma, 0.5 * m) * std::pow(1.0 - gamma, 0.5 * (n - m));
    if (coeff == 0.0) continue;
    s[mode] = n - m;
    trips.emplace_back(static_cast<Eigen::Index>(basis->index(s)), static_cast<Eigen::Index>(c), cplx{coeff, 0.0});
  }
  const auto dim = static_cast<Eigen::Index>(basis->size());
  SparseMatrix mat(dim, dim);
  mat.setFromTriplets(trips.begin(), trips.end());
  ErrorOperator out;
  out.op = LinearOperator(basis, basis, std::move(mat));
  out.order = m;
  out.kind = ErrorKind::kraus;
  out.label = "A_" + basis->layout().mode_name(mode) + "(" + std::to_string(m) + ")";
  return out;
}

ErrorOperator two_mode_damping_product(double gamma, int h, int m, const Basis& basis) {
  if (h < 0 || h > m) throw InvalidArgument("two_mode_damping_product: need 0 <= h <= m");
  const auto& layout = basis->layout();
  const std::size_t s = layout.index(ModeLabel::signal);
  const std::size_t p = layout.index(ModeLabel::pump);
  ErrorOperator as = amplitude_damping_kraus(gamma, h, s, basis);
  ErrorOperator ap = amplitude_damping_kraus(gamma, m - h, p, basis);
  ErrorOperator out;
  out.op = compose(as.op, ap.op);
  out.order = m;
  out.kind = ErrorKind::kraus;
  out.label = as.label + " " + ap.label;
  return out;
}

namespace {

struct Images {
  Eigen::MatrixXcd W;       // column u * nc + a holds E_u |a~>
  Eigen::MatrixXcd C;       // codewords embedded in the error basis
  Eigen::MatrixXcd G;       // Gram matrix of W
  std::size_t nc = 0;
  std::size_t ne = 0;
};

Images error_images(const CodeSpec& code, const std::vector<ErrorOperator>& errors) {
  if (errors.empty()) throw InvalidArgument("empty error set");
  const Basis& basis = errors.front().op.domain;
  for (const auto& e : errors) {
    if (!same_basis(e.op.domain, basis) || !same_basis(e.op.codomain, basis)) {
      throw DimensionMismatch("error operators must share one basis");
    }
  }
  Images im;
  im.nc = code.dimension();
  im.ne = errors.size();
  const auto dim = static_cast<Eigen::Index>(basis->size());
  im.C.resize(dim, static_cast<Eigen::Index>(im.nc));
  std::vector<StateVector> words;
  for (std::size_t a = 0; a < im.nc; ++a) {
    words.push_back(embed(code.logical_states[a], basis));
    im.C.col(static_cast<Eigen::Index>(a)) = words.back().amplitudes;
  }
  im.W.resize(dim, static_cast<Eigen::Index>(im.ne * im.nc));
  for (std::size_t u = 0; u < im.ne; ++u) {
    for (std::size_t a = 0; a < im.nc; ++a) {
      im.W.col(static_cast<Eigen::Index>(u * im.nc + a)) = apply(errors[u].op, words[a]).amplitudes;
    }
  }
  const auto total = static_cast<Eigen::Index>(im.ne * im.nc);
  im.G.resize(total, total);
  const auto nc = static_cast<Eigen::Index>(im.nc);
  parallel_for(im.ne, [&](std::size_t u) {
    const auto r0 = static_cast<Eigen::Index>(u) * nc;
    im.G.middleRows(r0, nc) = im.W.middleCols(r0, nc).adjoint() * im.W;
  });
  return im;
}

// Largest deviation of a block from c * I with c the mean diagonal.
struct BlockResidual {
  cplx mean;
  double offdiag = 0.0;
  double distortion = 0.0;
  Eigen::Index off_r = 0, off_c = 0, dis_r = 0;
};

BlockResidual block_residual(const Eigen::MatrixXcd& B) {
  BlockResidual r;
  r.mean = B.diagonal().mean();
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      if (i == j) {
        const double d = std::abs(B(i, i) - r.mean);
        if (d > r.distortion) {
          r.distortion = d;
          r.dis_r = i;
        }
      } else if (std::abs(B(i, j)) > r.offdiag) {
        r.offdiag = std::abs(B(i, j));
        r.off_r = i;
        r.off_c = j;
      }
    }
  }
  return r;
}

}  // namespace

KLReport kl_check(const CodeSpec& code, const std::vector<ErrorOperator>& errors, double tol) {
  const Images im = error_images(code, errors);
  const auto nc = static_cast<Eigen::Index>(im.nc);
  KLReport rep;
  rep.tolerance = tol;
  for (const auto& e : errors) rep.labels.push_back(e.label);
  rep.alpha.resize(static_cast<Eigen::Index>(im.ne), static_cast<Eigen::Index>(im.ne));
  double worst = -1.0;
  auto note = [&](double value, const std::string& where) {
    if (value > worst) {
      worst = value;
      rep.worst_entry = where;
    }
  };
  auto where = [](const std::string& u, const std::string& v, Eigen::Index a, Eigen::Index b, double x) {
    std::ostringstream os;
    os << "<" << a << "~|(" << u << ")^dag (" << v << ")|" << b << "~> residual " << x;
    return os.str();
  };
  for (std::size_t u = 0; u < im.ne; ++u) {
    for (std::size_t v = 0; v < im.ne; ++v) {
      const auto block = im.G.block(static_cast<Eigen::Index>(u) * nc, static_cast<Eigen::Index>(v) * nc, nc, nc);
      const BlockResidual r = block_residual(block);
      rep.alpha(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = r.mean;
      rep.strict_residual = std::max({rep.strict_residual, r.offdiag, r.distortion});
      const bool relaxed = dephasing_like(errors[u].kind) && dephasing_like(errors[v].kind) &&
                           !(errors[u].kind == ErrorKind::identity && errors[v].kind == ErrorKind::identity);
      if (relaxed) continue;
      rep.max_offdiag_residual = std::max(rep.max_offdiag_residual, r.offdiag);
      rep.max_distortion_residual = std::max(rep.max_distortion_residual, r.distortion);
      note(r.offdiag, where(errors[u].label, errors[v].label, r.off_r, r.off_c, r.offdiag));
      note(r.distortion, where(errors[u].label, errors[v].label, r.dis_r, r.dis_r, r.distortion));
    }
  }
  // Projection correctability of each dephasing operator.
  for (std::size_t u = 0; u < im.ne; ++u) {
    if (errors[u].kind != ErrorKind::dephasing) continue;
    const Eigen::MatrixXcd B = im.C.adjoint() * im.W.middleCols(static_cast<Eigen::Index>(u) * nc, nc);
    const BlockResidual r = block_residual(B);
    rep.max_offdiag_residual = std::max(rep.max_offdiag_residual, r.offdiag);
    rep.max_distortion_residual = std::max(rep.max_distortion_residual, r.distortion);
    note(r.offdiag, where("I", errors[u].label, r.off_r, r.off_c, r.offdiag));
    note(r.distortion, where("I", errors[u].label, r.dis_r, r.dis_r, r.distortion));
  }
  rep.verdict = rep.max_offdiag_residual <= tol && rep.max_distortion_residual <= tol;
  return rep;
}

double MomentValue::value() const {
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

MomentValue bc_moment_sum(int N, int h, int g, int m, MomentSide side, MomentKind kind) {
  if (N < 1) throw InvalidArgument("bc_moment_sum: N must be >= 1");
  const int l = kind == MomentKind::dephasing ? m - 1 - h - g : m - h - g;
  if (h < 0 || g < 0 || l < 0) throw InvalidArgument("bc_moment_sum: exponents out of range");
  const int R = 2 * N - 1;
  MomentValue out;
  out.denominator = int_pow(4, N - 1);
  for (int j = 0; j < N; ++j) {
    const int ns = side == MomentSide::zero ? 2 * j : 2 * j + 1;
    const int np = R - ns;
    BigInt term = binomial(R, ns);
    switch (kind) {
      case MomentKind::loss:
        term *= falling_factorial(ns, h) * falling_factorial(ns, g) * falling_factorial(np, l);
        break;
      case MomentKind::gain:
        term *= rising_from_next(ns, h) * rising_from_next(ns, g) * rising_from_next(np, l);
        break;
      case MomentKind::dephasing:
        term *= int_pow(ns, 2 * h) * int_pow(ns, 2 * g) * int_pow(np, 2 * l);
        break;
    }
    out.numerator += term;
  }
  return out;
}

RecoveryChannel canonical_recovery(const CodeSpec& code, const std::vector<ErrorOperator>& errors,
                                   double tol) {
  const KLReport rep = kl_check(code, errors, tol);
  if (rep.strict_residual > tol) {
    throw KLViolation("canonical_recovery: error set violates the Knill-Laflamme condition (" +
                      rep.worst_entry + ")");
  }
  const Images im = error_images(code, errors);
  const auto nc = static_cast<Eigen::Index>(im.nc);
  Eigen::MatrixXcd alpha = 0.5 * (rep.alpha + rep.alpha.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(alpha);
  const double scale_ref = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  RecoveryChannel ch;
  const Basis& dom = errors.front().op.domain;
  Eigen::MatrixXcd words(static_cast<Eigen::Index>(code.basis->size()), nc);
  for (Eigen::Index a = 0; a < nc; ++a) words.col(a) = code.logical_states[static_cast<std::size_t>(a)].amplitudes;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    const double d = es.eigenvalues()[k];
    if (d <= tol * scale_ref) continue;
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(im.W.rows(), nc);
    for (std::size_t u = 0; u < im.ne; ++u) {
      F += es.eigenvectors()(static_cast<Eigen::Index>(u), k) * im.W.middleCols(static_cast<Eigen::Index>(u) * nc, nc);
    }
    const Eigen::MatrixXcd R = words * F.adjoint() / std::sqrt(d);
    ch.kraus.push_back(LinearOperator::from_dense(dom, code.basis, R));
    ch.weights.push_back(d);
  }
  return ch;
}

StateVector logical_state(const CodeSpec& code, const Eigen::VectorXcd& coefficients) {
  if (static_cast<std::size_t>(coefficients.size()) != code.dimension()) {
    throw DimensionMismatch("logical_state: one coefficient per codeword required");
  }
  StateVector out = StateVector::zero(code.basis);
  for (std::size_t j = 0; j < code.dimension(); ++j) {
    out.amplitudes += coefficients[static_cast<Eigen::Index>(j)] * code.logical_states[j].amplitudes;
  }
  if (out.norm() == 0.0) throw InvalidArgument("logical_state: zero vector");
  return out.normalized();
}

double recovery_fidelity(const RecoveryChannel& channel, const ErrorOperator& error, const StateVector& psi) {
  StateVector phi = apply(error.op, psi);
  if (phi.norm() < 1e-14) return 1.0;
  phi = phi.normalized();
  double f = 0.0;
  for (const auto& r : channel.kraus) f += std::norm(inner_product(psi, apply(r, phi)));
  return f;
}

}  // namespace chi2qec
