#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chi2qec/codes.hpp"
#include "chi2qec/combinatorics.hpp"
#include "chi2qec/fock.hpp"

namespace chi2qec {

enum class ErrorKind { identity, loss, gain, dephasing, kraus };

std::string to_string(ErrorKind kind);

struct ErrorOperator {
  std::string label;  // "I", "a_s a_p", "adag_i", "n_s^2", "E0", ...
  LinearOperator op;
  int order = 0;
  ErrorKind kind = ErrorKind::identity;
};

// Truncated space around a code: every mode capped at max occupation + extra.
Basis enclosing_space(const CodeSpec& spec, int extra);

// a^e (loss), adag^e (gain) or n^e (dephasing) with one exponent per mode.
ErrorOperator monomial_error(const Basis& basis, const std::vector<int>& exponents, ErrorKind kind);
// Inverse of the label grammar: space-separated factors "a_<mode>[^k]",
// "adag_<mode>[^k]", "n_<mode>[^k]" of a single kind, or "I".
ErrorOperator parse_error_label(const std::string& label, const Basis& basis);

// Exponent vectors over `modes` modes with total degree m, s-heavy first.
std::vector<std::vector<int>> compositions(int m, std::size_t modes);

// xi_m restricted to the given kinds (loss, gain, dephasing).  The identity is
// always first; degree-0 dephasing collapses into it.
std::vector<ErrorOperator> xi_set(int m, const Basis& basis,
                                  const std::vector<ErrorKind>& kinds = {ErrorKind::loss,
                                                                         ErrorKind::gain,
                                                                         ErrorKind::dephasing});

enum class NoJumpForm { sqrt, linear };

struct KrausSet {
  std::vector<ErrorOperator> ops;
  // max |sum E^dag E - I| over basis states with gamma * sum(n) <= 1.
  double completeness_residual = 0.0;
};

// E0 = sqrt(I - gamma sum n) (or the linear I - gamma sum n / 2), E_l = sqrt(gamma) a_l.
KrausSet lowest_order_loss_kraus(double gamma, const Basis& basis,
                                 NoJumpForm form = NoJumpForm::sqrt);

// A(m) on one mode: sum_n sqrt(C(n,m)) gamma^{m/2} (1-gamma)^{(n-m)/2} |n-m><n|.
ErrorOperator amplitude_damping_kraus(double gamma, int m, std::size_t mode, const Basis& basis);
// A_s(h) A_p(m-h) on a (signal, pump) layout.
ErrorOperator two_mode_damping_product(double gamma, int h, int m, const Basis& basis);

struct KLReport {
  std::vector<std::string> labels;
  Eigen::MatrixXcd alpha;  // alpha_uv averaged over the logical diagonal
  double max_offdiag_residual = 0.0;
  double max_distortion_residual = 0.0;
  // Same residuals without the dephasing relaxation.
  double strict_residual = 0.0;
  bool verdict = false;
  double tolerance = 0.0;
  std::string worst_entry;  // location of the largest residual
};

// <a|E_u^dag E_v|b> = alpha_uv delta_ab for all pairs.  Pairs made only of
// dephasing (and identity) operators are judged by projection correctability:
// each dephasing operator's code block must be proportional to the identity.
KLReport kl_check(const CodeSpec& code, const std::vector<ErrorOperator>& errors,
                  double tol = 1e-9);

enum class MomentSide { zero, one };
enum class MomentKind { loss, gain, dephasing };

struct MomentValue {
  BigInt numerator;    // sum over codeword terms, before normalization
  BigInt denominator;  // 4^{N-1}
  double value() const;
};

// <side~| E^dag E |side~> for the BC with E = a_s^h a_i^g a_p^{m-h-g} (loss),
// the adjoint monomial (gain) or n_s^h n_i^g n_p^{m-1-h-g} (dephasing).
MomentValue bc_moment_sum(int N, int h, int g, int m, MomentSide side, MomentKind kind);

struct RecoveryChannel {
  std::vector<LinearOperator> kraus;  // enclosing space -> code basis
  std::vector<double> weights;        // eigenvalues of alpha kept
};

// Knill-Laflamme canonical recovery.  Throws KLViolation if the set fails the
// strict condition.
RecoveryChannel canonical_recovery(const CodeSpec& code, const std::vector<ErrorOperator>& errors,
                                   double tol = 1e-9);

// Logical state as a vector over the code basis from logical amplitudes.
StateVector logical_state(const CodeSpec& code, const Eigen::VectorXcd& coefficients);

// <psi| R(E psi) |psi> with E psi normalized; 1 for an annihilated input.
double recovery_fidelity(const RecoveryChannel& channel, const ErrorOperator& error,
                         const StateVector& psi);

}  // namespace chi2qec
