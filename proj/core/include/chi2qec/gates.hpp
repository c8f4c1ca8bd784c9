#pragma once

// Generator algebra and gate library on the two-pump-photon subspace H_2.
// Reference matrices use the v order [|1,1,1>, |2,2,0>, |0,0,2>]; operators
// returned as LinearOperator use the canonical basis order of H_2.

#include <string>
#include <vector>

#include "chi2qec/fock.hpp"

namespace chi2qec {

// H_2 in canonical order [|0,0,2>, |1,1,1>, |2,2,0>].
Basis h2_basis();
// The same three states in v order.
Basis v_basis();
// H_2^{(x)groups}, lexicographic.
Basis h2_product_basis(int groups);

enum class GeneratorSet { computed, printed };

std::string to_string(GeneratorSet set);

// k in 1..7, v order.  `computed` builds G1, G2 from ladder operators and the
// rest from the commutator formulas; `printed` returns the displayed matrices
// (G1, G2 identical in both sets).
Eigen::Matrix3cd generator_matrix(int k, GeneratorSet set = GeneratorSet::computed);
// As a LinearOperator on v_basis().
LinearOperator generator(int k, GeneratorSet set = GeneratorSet::computed);

// exp(i angle G) for Hermitian G via eigendecomposition.
Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& G, double angle);

struct Factor {
  int k = 0;
  double angle = 0.0;
};

// Product of exp(i angle G_k), factors multiplied left to right as written.
Eigen::Matrix3cd evolve(const std::vector<Factor>& factors, GeneratorSet set = GeneratorSet::computed);
std::string describe(const std::vector<Factor>& factors);

struct PhaseComparison {
  bool equal = false;
  double global_phase = 0.0;  // theta with A ~ e^{i theta} B, in (-pi, pi]
  double max_deviation = 0.0;
};

PhaseComparison equal_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                         double tol = 1e-10);

// Reorders a v-order 3x3 matrix into canonical order and back.
Eigen::Matrix3cd v_to_canonical(const Eigen::Matrix3cd& m);
Eigen::Matrix3cd canonical_to_v(const Eigen::Matrix3cd& m);

struct GateDef {
  std::string name;
  LinearOperator unitary;
  std::string decomposition;  // empty when the gate is defined only by its bra-ket form
};

// XP, H, Hprime, F, CNOT3_12, CNOT3_21, CZ22, CZ, LambdaS, Lambda21H,
// LambdaBar21H, CNOT2_21, CNOT2p_12, CNOT2pp_12, EECC_R1, EECC_R2.
std::vector<std::string> gate_names();
// Throws UnknownName.
GateDef logical_gate(const std::string& name);

struct GateCheck {
  std::string name;
  std::string group;  // checks in one group pass together if any member passes
  std::string decomposition;
  std::string generator_set;  // "computed", "printed" or "" when not applicable
  double max_deviation = 0.0;
  double global_phase = 0.0;
  bool pass = false;
};

// Every identity the gate library claims, evaluated at `tol`.
std::vector<GateCheck> verify_gates(double tol = 1e-10);

}  // namespace chi2qec
