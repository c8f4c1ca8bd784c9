#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chi2qec/fock.hpp"

namespace chi2qec {

struct SymmetryOperator {
  std::string name;
  LinearOperator op;
  cplx expected{1.0, 0.0};
};

enum class ZPair { signal_pump, idler_pump };

// e^{i2pi/M} Z_a^{(M)} (x) Z_p^{(M)} on the given group; diagonal.
SymmetryOperator z_pair_operator(int M, ZPair pair, int group, const Basis& basis);
// Both Z pairs for every group of the basis layout.
std::vector<SymmetryOperator> z_pair_operators(int M, const Basis& basis);
// V^{(M)} on one group: n -> M - n on its s, i, p modes.
SymmetryOperator inversion_operator(int M, int group, const Basis& basis);
// Product of V^{(M)} over every group.
SymmetryOperator inversion_all_groups(int M, const Basis& basis);
// Exchanges the occupations of groups 1 and 2.
SymmetryOperator swap_operator(const Basis& basis);
// (-1)^{n_s} summed over all signal modes.
SymmetryOperator signal_parity_operator(const Basis& basis);
// U_BS on H_{2N-1}: |+> -> |0~>, |-> -> |1~>, |j,j,2N-1-j> -> completion vectors;
// identity on basis states outside H_{2N-1}.
SymmetryOperator pseudo_beamsplitter(int N, const Basis& basis);
// Pi_s U_BS V^{(2N-1)} U_BS^dag on a basis equal to H_{2N-1}.
SymmetryOperator bc_symmetry_operator(int N, const Basis& basis);
// Two-mode analogues acting on the (signal, pump) chain n_s + n_p = 2N-1.
SymmetryOperator two_mode_z_operator(int N, const Basis& basis);
SymmetryOperator two_mode_bc_symmetry_operator(int N, const Basis& basis);

double max_commutator_norm(const std::vector<SymmetryOperator>& ops);

struct EigenspaceResult {
  std::vector<StateVector> vectors;         // canonicalized orthonormal basis
  std::vector<std::size_t> dimension_trace;  // starting dimension, then after each op
  double max_commutator = 0.0;
  double max_residual = 0.0;  // max ||S v - v|| over inputs and outputs
};

// Orthonormal basis of the intersection of ker(S_j - I).  Operators must share
// one square basis and commute within tol.
EigenspaceResult joint_unity_eigenspace(const std::vector<SymmetryOperator>& ops,
                                        double tol = 1e-9);

// Canonical basis of span(vectors): project canonical basis vectors in order,
// Gram-Schmidt, first nonzero amplitude real positive.
std::vector<StateVector> canonicalize_subspace(const std::vector<StateVector>& vectors);

// Frobenius norm of P_a - P_b for the orthogonal projectors onto the spans.
double projector_distance(const std::vector<StateVector>& a, const std::vector<StateVector>& b);

}  // namespace chi2qec
