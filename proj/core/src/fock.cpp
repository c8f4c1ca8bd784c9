#include "chi2qec/fock.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace chi2qec {

namespace {

using Triplet = Eigen::Triplet<cplx>;

constexpr std::size_t kMaxBasisSize = std::size_t{1} << 26;

void require_same(const Basis& a, const Basis& b, const char* what) {
  if (!same_basis(a, b)) {
    throw DimensionMismatch(std::string(what) + ": bases differ");
  }
}

}  // namespace

char short_name(ModeLabel label) {
  switch (label) {
    case ModeLabel::signal:
      return 's';
    case ModeLabel::idler:
      return 'i';
    case ModeLabel::pump:
      return 'p';
  }
  return '?';
}

std::string to_string(ModeLabel label) {
  switch (label) {
    case ModeLabel::signal:
      return "signal";
    case ModeLabel::idler:
      return "idler";
    case ModeLabel::pump:
      return "pump";
  }
  return "?";
}

ModeLayout::ModeLayout(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::set<std::pair<int, ModeLabel>> seen;
  int max_group = 0;
  for (const auto& m : modes_) {
    if (m.cap < 0) throw InvalidArgument("mode cap must be >= 0");
    if (m.group < 1) throw InvalidArgument("group index must be >= 1");
    if (!seen.insert({m.group, m.label}).second) {
      throw InvalidArgument("duplicate mode label within group " + std::to_string(m.group));
    }
    max_group = std::max(max_group, m.group);
  }
  for (int g = 1; g <= max_group; ++g) {
    bool present = std::any_of(modes_.begin(), modes_.end(),
                               [g](const Mode& m) { return m.group == g; });
    if (!present) throw InvalidArgument("group indices must be contiguous from 1");
  }
}

ModeLayout ModeLayout::three_mode(int groups, int cap) {
  if (groups < 1) throw InvalidArgument("groups must be >= 1");
  std::vector<Mode> modes;
  for (int g = 1; g <= groups; ++g) {
    modes.push_back({ModeLabel::signal, g, cap});
    modes.push_back({ModeLabel::idler, g, cap});
    modes.push_back({ModeLabel::pump, g, cap});
  }
  return ModeLayout(std::move(modes));
}

ModeLayout ModeLayout::signal_pump(int cap) {
  return ModeLayout({{ModeLabel::signal, 1, cap}, {ModeLabel::pump, 1, cap}});
}

int ModeLayout::groups() const {
  int g = 0;
  for (const auto& m : modes_) g = std::max(g, m.group);
  return g;
}

std::optional<std::size_t> ModeLayout::find(ModeLabel label, int group) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].label == label && modes_[i].group == group) return i;
  }
  return std::nullopt;
}

std::size_t ModeLayout::index(ModeLabel label, int group) const {
  auto i = find(label, group);
  if (!i) {
    throw InvalidArgument("layout has no " + to_string(label) + " mode in group " +
                          std::to_string(group));
  }
  return *i;
}

std::string ModeLayout::mode_name(std::size_t i) const {
  const Mode& m = modes_.at(i);
  std::string name(1, short_name(m.label));
  if (groups() > 1) name += std::to_string(m.group);
  return name;
}

std::optional<std::size_t> ModeLayout::find_by_name(std::string_view name) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (mode_name(i) == name) return i;
  }
  return std::nullopt;
}

ModeLayout ModeLayout::with_cap(int cap) const {
  return with_caps(std::vector<int>(modes_.size(), cap));
}

ModeLayout ModeLayout::with_caps(const std::vector<int>& caps) const {
  if (caps.size() != modes_.size()) throw DimensionMismatch("cap count differs from mode count");
  std::vector<Mode> modes = modes_;
  for (std::size_t i = 0; i < modes.size(); ++i) modes[i].cap = caps[i];
  return ModeLayout(std::move(modes));
}

ModeLayout ModeLayout::concat(const ModeLayout& other) const {
  std::vector<Mode> modes = modes_;
  const int shift = groups();
  for (Mode m : other.modes_) {
    m.group += shift;
    modes.push_back(m);
  }
  return ModeLayout(std::move(modes));
}

std::string format_state(const FockState& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

FockState parse_state(std::string_view text) {
  FockState out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
      throw InvalidArgument("malformed basis state '" + std::string(text) + "'");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

BasisIndex::BasisIndex(ModeLayout layout, std::vector<FockState> states)
    : layout_(std::move(layout)), states_(std::move(states)) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const FockState& s = states_[i];
    if (s.size() != layout_.size()) {
      throw DimensionMismatch("basis state " + format_state(s) + " has wrong mode count");
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] < 0 || s[k] > layout_[k].cap) {
        throw InvalidArgument("basis state " + format_state(s) + " violates a mode cap");
      }
    }
    if (!lookup_.emplace(s, i).second) {
      throw InvalidArgument("duplicate basis state " + format_state(s));
    }
  }
}

std::optional<std::size_t> BasisIndex::find(const FockState& s) const {
  auto it = lookup_.find(s);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t BasisIndex::index(const FockState& s) const {
  auto i = find(s);
  if (!i) throw MissingBasisState("basis state " + format_state(s) + " not in basis");
  return *i;
}

Basis make_basis(ModeLayout layout, std::vector<FockState> states) {
  return std::make_shared<const BasisIndex>(std::move(layout), std::move(states));
}

bool same_basis(const Basis& a, const Basis& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Basis enumerate_irreducible_subspace(int N, int groups) {
  if (N < 0) throw InvalidArgument("pump-photon number must be >= 0");
  if (groups < 1) throw InvalidArgument("groups must be >= 1");
  std::vector<FockState> per_group;
  for (int n = 0; n <= N; ++n) per_group.push_back({n, n, N - n});
  std::vector<FockState> states{{}};
  for (int g = 0; g < groups; ++g) {
    std::vector<FockState> next;
    for (const auto& prefix : states) {
      for (const auto& s : per_group) {
        FockState t = prefix;
        t.insert(t.end(), s.begin(), s.end());
        next.push_back(std::move(t));
      }
    }
    states = std::move(next);
  }
  return make_basis(ModeLayout::three_mode(groups, N), std::move(states));
}

Basis enumerate_truncated_space(const ModeLayout& layout) {
  std::size_t total = 1;
  for (const auto& m : layout.modes()) {
    const std::size_t d = static_cast<std::size_t>(m.cap) + 1;
    if (total > kMaxBasisSize / d) {
      throw InvalidArgument("truncated space too large for the index type");
    }
    total *= d;
  }
  std::vector<FockState> states;
  states.reserve(total);
  FockState cur(layout.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    states.push_back(cur);
    for (std::size_t k = layout.size(); k-- > 0;) {
      if (cur[k] < layout[k].cap) {
        ++cur[k];
        break;
      }
      cur[k] = 0;
    }
  }
  return make_basis(layout, std::move(states));
}

Basis tensor_basis(const Basis& a, const Basis& b) {
  std::vector<FockState> states;
  states.reserve(a->size() * b->size());
  for (const auto& x : a->states()) {
    for (const auto& y : b->states()) {
      FockState t = x;
      t.insert(t.end(), y.begin(), y.end());
      states.push_back(std::move(t));
    }
  }
  return make_basis(a->layout().concat(b->layout()), std::move(states));
}

StateVector::StateVector(Basis b, Eigen::VectorXcd amps)
    : basis(std::move(b)), amplitudes(std::move(amps)) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis->size()) {
    throw DimensionMismatch("amplitude count differs from basis size");
  }
}

StateVector StateVector::zero(Basis b) {
  const auto n = static_cast<Eigen::Index>(b->size());
  return StateVector(std::move(b), Eigen::VectorXcd::Zero(n));
}

StateVector StateVector::basis_state(Basis b, const FockState& s) {
  StateVector v = zero(b);
  v.amplitudes[static_cast<Eigen::Index>(b->index(s))] = 1.0;
  return v;
}

StateVector StateVector::from_terms(Basis b,
                                    const std::vector<std::pair<FockState, cplx>>& terms) {
  StateVector v = zero(b);
  for (const auto& [s, c] : terms) v.amplitudes[static_cast<Eigen::Index>(b->index(s))] += c;
  return v;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return StateVector(basis, amplitudes / n);
}

bool StateVector::is_normalized(double tol) const { return std::abs(amplitudes.squaredNorm() - 1.0) <= tol; }

cplx StateVector::amplitude(const FockState& s) const {
  auto i = basis->find(s);
  return i ? amplitudes[static_cast<Eigen::Index>(*i)] : cplx{0.0, 0.0};
}

std::vector<std::pair<FockState, cplx>> StateVector::support(double tol) const {
  std::vector<std::pair<FockState, cplx>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    const cplx a = amplitudes[static_cast<Eigen::Index>(i)];
    if (std::abs(a) > tol) out.emplace_back(basis->state(i), a);
  }
  return out;
}

LinearOperator::LinearOperator(Basis dom, Basis cod, SparseMatrix m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (static_cast<std::size_t>(matrix.cols()) != domain->size() ||
      static_cast<std::size_t>(matrix.rows()) != codomain->size()) {
    throw DimensionMismatch("operator matrix does not match its bases");
  }
  matrix.makeCompressed();
  overflow.assign(domain->size(), 0);
}

LinearOperator LinearOperator::identity(const Basis& b) {
  const auto n = static_cast<Eigen::Index>(b->size());
  SparseMatrix m(n, n);
  m.setIdentity();
  return LinearOperator(b, b, std::move(m));
}

LinearOperator LinearOperator::from_dense(const Basis& dom, const Basis& cod,
                                          const Eigen::MatrixXcd& m) {
  SparseMatrix s = m.sparseView(cplx{0.0, 0.0}, 1e-300);
  return LinearOperator(dom, cod, std::move(s));
}

bool LinearOperator::truncated() const {
  return std::any_of(overflow.begin(), overflow.end(), [](char c) { return c != 0; });
}

LinearOperator ladder(std::size_t mode, LadderKind kind, const Basis& basis) {
  return ladder(mode, kind, basis, basis);
}

LinearOperator ladder(std::size_t mode, LadderKind kind, const Basis& domain,
                      const Basis& codomain) {
  if (mode >= domain->layout().size()) throw InvalidArgument("mode index out of range");
  if (domain->layout().size() != codomain->layout().size()) {
    throw DimensionMismatch("ladder: domain and codomain mode counts differ");
  }
  std::vector<Triplet> trips;
  std::vector<char> overflow(domain->size(), 0);
  for (std::size_t c = 0; c < domain->size(); ++c) {
    FockState s = domain->state(c);
    const int n = s[mode];
    double amp = 0.0;
    if (kind == LadderKind::lower) {
      if (n == 0) continue;
      amp = std::sqrt(static_cast<double>(n));
      s[mode] = n - 1;
    } else {
      amp = std::sqrt(static_cast<double>(n + 1));
      s[mode] = n + 1;
    }
    auto r = codomain->find(s);
    if (!r) {
      overflow[c] = 1;
      continue;
    }
    trips.emplace_back(static_cast<int>(*r), static_cast<int>(c), amp);
  }
  SparseMatrix m(static_cast<Eigen::Index>(codomain->size()),
                 static_cast<Eigen::Index>(domain->size()));
  m.setFromTriplets(trips.begin(), trips.end());
  LinearOperator op(domain, codomain, std::move(m));
  op.overflow = std::move(overflow);
  return op;
}

LinearOperator number_operator(std::size_t mode, const Basis& basis) {
  if (mode >= basis->layout().size()) throw InvalidArgument("mode index out of range");
  return diagonal_operator(basis, [mode](const FockState& s) { return cplx(s[mode], 0.0); });
}

LinearOperator diagonal_operator(const Basis& basis,
                                 const std::function<cplx(const FockState&)>& f) {
  std::vector<Triplet> trips;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const cplx v = f(basis->state(i));
    if (v != cplx{0.0, 0.0}) trips.emplace_back(static_cast<int>(i), static_cast<int>(i), v);
  }
  const auto n = static_cast<Eigen::Index>(basis->size());
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(basis, basis, std::move(m));
}

LinearOperator monomial_operator(const Basis& domain, const Basis& codomain,
                                 const std::function<FockState(const FockState&)>& image,
                                 const std::function<cplx(const FockState&)>& phase) {
  std::vector<Triplet> trips;
  for (std::size_t c = 0; c < domain->size(); ++c) {
    const FockState& s = domain->state(c);
    const FockState t = image(s);
    auto r = codomain->find(t);
    if (!r) {
      throw MissingBasisState("image " + format_state(t) + " of " + format_state(s) +
                              " is outside the codomain");
    }
    trips.emplace_back(static_cast<int>(*r), static_cast<int>(c), phase ? phase(s) : cplx{1.0, 0.0});
  }
  SparseMatrix m(static_cast<Eigen::Index>(codomain->size()),
                 static_cast<Eigen::Index>(domain->size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(domain, codomain, std::move(m));
}

LinearOperator outer_sum(const Basis& domain, const Basis& codomain,
                         const std::vector<std::tuple<StateVector, StateVector, cplx>>& terms) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(codomain->size()),
                                              static_cast<Eigen::Index>(domain->size()));
  for (const auto& [ket, bra, c] : terms) {
    const StateVector k = embed(ket, codomain);
    const StateVector b = embed(bra, domain);
    m += c * k.amplitudes * b.amplitudes.adjoint();
  }
  return LinearOperator::from_dense(domain, codomain, m);
}

StateVector apply(const LinearOperator& op, const StateVector& state) {
  Eigen::VectorXcd in;
  if (same_basis(state.basis, op.domain)) {
    in = state.amplitudes;
  } else {
    in = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(op.domain->size()));
    for (std::size_t i = 0; i < state.size(); ++i) {
      const cplx a = state.amplitudes[static_cast<Eigen::Index>(i)];
      if (a == cplx{0.0, 0.0}) continue;
      auto j = op.domain->find(state.basis->state(i));
      if (!j) {
        throw MissingBasisState("state component " + format_state(state.basis->state(i)) +
                                " is outside the operator domain");
      }
      in[static_cast<Eigen::Index>(*j)] = a;
    }
  }
  for (std::size_t c = 0; c < op.overflow.size(); ++c) {
    if (op.overflow[c] && in[static_cast<Eigen::Index>(c)] != cplx{0.0, 0.0}) {
      throw TruncationOverflow("operator image of " + format_state(op.domain->state(c)) +
                               " leaves the truncated space; enlarge the caps");
    }
  }
  return StateVector(op.codomain, op.matrix * in);
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
  require_same(a.domain, b.codomain, "compose");
  SparseMatrix m = a.matrix * b.matrix;
  LinearOperator out(b.domain, a.codomain, std::move(m));
  out.overflow = b.overflow;
  for (Eigen::Index c = 0; c < b.matrix.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(b.matrix, c); it; ++it) {
      if (a.overflow[static_cast<std::size_t>(it.row())]) out.overflow[static_cast<std::size_t>(c)] = 1;
    }
  }
  return out;
}

LinearOperator tensor(const LinearOperator& a, const LinearOperator& b) {
  SparseMatrix m = Eigen::kroneckerProduct(a.matrix, b.matrix).eval();
  LinearOperator out(tensor_basis(a.domain, b.domain), tensor_basis(a.codomain, b.codomain),
                     std::move(m));
  const std::size_t nb = b.domain->size();
  for (std::size_t i = 0; i < a.domain->size(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (a.overflow[i] || b.overflow[j]) out.overflow[i * nb + j] = 1;
    }
  }
  return out;
}

LinearOperator adjoint(const LinearOperator& op) {
  SparseMatrix m = op.matrix.adjoint();
  return LinearOperator(op.codomain, op.domain, std::move(m));
}

LinearOperator add(const LinearOperator& a, const LinearOperator& b) {
  require_same(a.domain, b.domain, "add");
  require_same(a.codomain, b.codomain, "add");
  LinearOperator out(a.domain, a.codomain, SparseMatrix(a.matrix + b.matrix));
  for (std::size_t c = 0; c < out.overflow.size(); ++c) out.overflow[c] = a.overflow[c] | b.overflow[c];
  return out;
}

LinearOperator scale(const LinearOperator& op, cplx c) {
  LinearOperator out(op.domain, op.codomain, SparseMatrix(op.matrix * c));
  out.overflow = op.overflow;
  return out;
}

LinearOperator restrict_operator(const LinearOperator& op, const Basis& sub) {
  const auto n = static_cast<Eigen::Index>(sub->size());
  std::vector<Eigen::Index> dom_idx(sub->size()), cod_idx(sub->size());
  for (std::size_t i = 0; i < sub->size(); ++i) {
    dom_idx[i] = static_cast<Eigen::Index>(op.domain->index(sub->state(i)));
    cod_idx[i] = static_cast<Eigen::Index>(op.codomain->index(sub->state(i)));
  }
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) m(r, c) = op.matrix.coeff(cod_idx[static_cast<std::size_t>(r)], dom_idx[static_cast<std::size_t>(c)]);
  }
  return LinearOperator::from_dense(sub, sub, m);
}

cplx inner_product(const StateVector& x, const StateVector& y) {
  if (same_basis(x.basis, y.basis)) return x.amplitudes.dot(y.amplitudes);
  cplx acc{0.0, 0.0};
  for (const auto& [s, a] : x.support(0.0)) acc += std::conj(a) * y.amplitude(s);
  return acc;
}

cplx expectation(const LinearOperator& op, const StateVector& state) {
  return inner_product(state, apply(op, state));
}

StateVector embed(const StateVector& state, const Basis& into) {
  if (same_basis(state.basis, into)) return StateVector(into, state.amplitudes);
  StateVector out = StateVector::zero(into);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const cplx a = state.amplitudes[static_cast<Eigen::Index>(i)];
    if (a == cplx{0.0, 0.0}) continue;
    auto j = into->find(state.basis->state(i));
    if (!j) {
      throw MissingBasisState("cannot embed: " + format_state(state.basis->state(i)) +
                              " missing from target basis");
    }
    out.amplitudes[static_cast<Eigen::Index>(*j)] = a;
  }
  return out;
}

StateVector project_onto(const StateVector& state, const Basis& onto) {
  StateVector out = StateVector::zero(onto);
  for (std::size_t i = 0; i < onto->size(); ++i) out.amplitudes[static_cast<Eigen::Index>(i)] = state.amplitude(onto->state(i));
  return out;
}

double max_abs_diff(const LinearOperator& a, const LinearOperator& b) {
  require_same(a.domain, b.domain, "max_abs_diff");
  require_same(a.codomain, b.codomain, "max_abs_diff");
  SparseMatrix d = a.matrix - b.matrix;
  double m = 0.0;
  for (Eigen::Index c = 0; c < d.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(d, c); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double unitarity_defect(const LinearOperator& op) {
  if (op.rows() != op.cols()) throw DimensionMismatch("unitarity_defect: operator is not square");
  Eigen::MatrixXcd u = op.dense();
  Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace chi2qec
