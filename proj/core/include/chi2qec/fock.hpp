#pragma once

// Multi-mode Fock space: layouts, basis enumeration, sparse operators and
// dense states.  Basis order is part of the public contract: irreducible
// subspaces are listed by ascending n, product spaces lexicographically.

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "chi2qec/exceptions.hpp"

namespace chi2qec {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr double kDefaultTol = 1e-10;

enum class ModeLabel { signal, idler, pump };

char short_name(ModeLabel label);
std::string to_string(ModeLabel label);

struct Mode {
  ModeLabel label = ModeLabel::signal;
  int group = 1;
  int cap = 0;

  bool operator==(const Mode&) const = default;
};

class ModeLayout {
 public:
  ModeLayout() = default;
  explicit ModeLayout(std::vector<Mode> modes);

  // (s, i, p) for each group, every mode capped at `cap`.
  static ModeLayout three_mode(int groups, int cap);
  // Single group holding only (signal, pump).
  static ModeLayout signal_pump(int cap);

  std::size_t size() const { return modes_.size(); }
  const Mode& operator[](std::size_t i) const { return modes_.at(i); }
  const std::vector<Mode>& modes() const { return modes_; }
  int groups() const;

  std::optional<std::size_t> find(ModeLabel label, int group = 1) const;
  std::size_t index(ModeLabel label, int group = 1) const;

  // "s", "i", "p" for single-group layouts, "s1", "p2", ... otherwise.
  std::string mode_name(std::size_t i) const;
  std::optional<std::size_t> find_by_name(std::string_view name) const;

  ModeLayout with_cap(int cap) const;
  ModeLayout with_caps(const std::vector<int>& caps) const;
  // Appends `other`, shifting its group indices past this layout's groups.
  ModeLayout concat(const ModeLayout& other) const;

  bool operator==(const ModeLayout&) const = default;

 private:
  std::vector<Mode> modes_;
};

using FockState = std::vector<int>;

std::string format_state(const FockState& s);
FockState parse_state(std::string_view text);

class BasisIndex {
 public:
  BasisIndex(ModeLayout layout, std::vector<FockState> states);

  std::size_t size() const { return states_.size(); }
  const FockState& state(std::size_t i) const { return states_.at(i); }
  const std::vector<FockState>& states() const { return states_; }
  const ModeLayout& layout() const { return layout_; }

  std::optional<std::size_t> find(const FockState& s) const;
  std::size_t index(const FockState& s) const;
  bool contains(const FockState& s) const { return find(s).has_value(); }

  bool operator==(const BasisIndex& other) const {
    return layout_ == other.layout_ && states_ == other.states_;
  }

 private:
  ModeLayout layout_;
  std::vector<FockState> states_;
  std::map<FockState, std::size_t> lookup_;
};

using Basis = std::shared_ptr<const BasisIndex>;

Basis make_basis(ModeLayout layout, std::vector<FockState> states);
bool same_basis(const Basis& a, const Basis& b);

// Ordered basis of H_N^{(x)groups}; per group |n,n,N-n>, ascending n.
Basis enumerate_irreducible_subspace(int N, int groups);
// Full product basis up to the per-mode caps, lexicographic.
Basis enumerate_truncated_space(const ModeLayout& layout);
// Lexicographic product of two bases (layouts concatenated).
Basis tensor_basis(const Basis& a, const Basis& b);

struct StateVector {
  Basis basis;
  Eigen::VectorXcd amplitudes;

  StateVector() = default;
  StateVector(Basis b, Eigen::VectorXcd amps);

  static StateVector zero(Basis b);
  static StateVector basis_state(Basis b, const FockState& s);
  static StateVector from_terms(Basis b,
                                const std::vector<std::pair<FockState, cplx>>& terms);

  std::size_t size() const { return static_cast<std::size_t>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
  StateVector normalized() const;
  bool is_normalized(double tol = 1e-12) const;
  cplx amplitude(const FockState& s) const;
  // Basis states with |amplitude| > tol, in basis order.
  std::vector<std::pair<FockState, cplx>> support(double tol = 1e-14) const;
};

enum class LadderKind { lower, raise };

struct LinearOperator {
  Basis domain;
  Basis codomain;
  SparseMatrix matrix;
  // Per domain column: nonzero when some image amplitude was dropped because
  // the target state is absent from the codomain (cap reached).
  std::vector<char> overflow;

  LinearOperator() = default;
  LinearOperator(Basis dom, Basis cod, SparseMatrix m);

  static LinearOperator identity(const Basis& b);
  static LinearOperator from_dense(const Basis& dom, const Basis& cod,
                                   const Eigen::MatrixXcd& m);

  bool truncated() const;
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
  std::size_t rows() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix.cols()); }
};

LinearOperator ladder(std::size_t mode, LadderKind kind, const Basis& basis);
LinearOperator ladder(std::size_t mode, LadderKind kind, const Basis& domain,
                      const Basis& codomain);
LinearOperator number_operator(std::size_t mode, const Basis& basis);
LinearOperator diagonal_operator(const Basis& basis,
                                 const std::function<cplx(const FockState&)>& f);
// Monomial map |s> -> phase(s)|image(s)>; image must exist in the codomain.
LinearOperator monomial_operator(const Basis& domain, const Basis& codomain,
                                 const std::function<FockState(const FockState&)>& image,
                                 const std::function<cplx(const FockState&)>& phase = {});
// Sum of |ket><bra| terms given as (ket, bra, coefficient) with states as
// StateVectors over the codomain/domain.
LinearOperator outer_sum(const Basis& domain, const Basis& codomain,
                         const std::vector<std::tuple<StateVector, StateVector, cplx>>& terms);

StateVector apply(const LinearOperator& op, const StateVector& state);
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);  // a after b
LinearOperator tensor(const LinearOperator& a, const LinearOperator& b);
LinearOperator adjoint(const LinearOperator& op);
LinearOperator add(const LinearOperator& a, const LinearOperator& b);
LinearOperator scale(const LinearOperator& op, cplx c);
// Matrix elements <r|op|c> for r, c in `sub`; op must be square on a basis
// containing every state of `sub`.
LinearOperator restrict_operator(const LinearOperator& op, const Basis& sub);

cplx inner_product(const StateVector& x, const StateVector& y);
cplx expectation(const LinearOperator& op, const StateVector& state);
StateVector embed(const StateVector& state, const Basis& into);
// Keeps only the amplitudes on states present in `onto`.
StateVector project_onto(const StateVector& state, const Basis& onto);

double max_abs_diff(const LinearOperator& a, const LinearOperator& b);
double unitarity_defect(const LinearOperator& op);

}  // namespace chi2qec
