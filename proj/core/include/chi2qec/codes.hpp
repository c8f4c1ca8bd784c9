#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "chi2qec/fock.hpp"
#include "chi2qec/symmetry.hpp"

namespace chi2qec {

enum class CodeFamily { PCC, EECC, BC, BC2mode };

std::string to_string(CodeFamily family);
// Accepts "pcc", "eecc", "bc", "bc2" / "bc2mode" (case-insensitive).
CodeFamily parse_code_family(const std::string& text);

using Rational = boost::rational<long long>;

struct CodeParameters {
  int N = 0;  // size parameter as used by the constructors
  int n = 0;  // physical qudits
  int q = 0;  // physical qudit dimension
  int b = 0;  // logical qudit dimension
  int k = 0;  // logical qudits
};

struct CodeSpec {
  CodeFamily family = CodeFamily::PCC;
  std::string name;
  CodeParameters params;
  ModeLayout layout;
  Basis basis;  // enclosing symmetry subspace (H_R per group, or the two-mode chain)
  std::vector<StateVector> logical_states;
  Rational total_photons;
  int subspace_pump_number = 0;  // R: every group of every codeword lies in H_R

  std::size_t dimension() const { return logical_states.size(); }
  int max_occupation() const;
};

CodeSpec build_pcc(int N);
CodeSpec build_eecc(int N);
CodeSpec build_bc(int N);
CodeSpec build_two_mode_bc(int N);
CodeSpec build_code(CodeFamily family, int N);

// Chain basis {|n_s, 2N-1-n_s>} over a (signal, pump) layout.
Basis two_mode_chain_basis(int N);
// BC codeword |bit~> expressed in `basis` (which must contain H_{2N-1}).
StateVector bc_state(int N, int bit, const Basis& basis);
StateVector two_mode_bc_state(int N, int bit, const Basis& basis);

double code_rate(const CodeSpec& spec);
double code_rate(int n, int q, int b, int k);
// [logical state][mode] expectation of n_k.
std::vector<std::vector<double>> mean_photons_per_mode(const CodeSpec& spec);
// Total photon number averaged over the logical basis.
double mean_total_photons(const CodeSpec& spec);
Rational total_photons_formula(CodeFamily family, int N);
// max |<a|b> - delta_ab|.
double orthonormality_defect(const CodeSpec& spec);

struct SynthesisReport {
  std::vector<std::size_t> dimension_trace;  // truncated space, then per operator
  std::vector<StateVector> vectors;          // synthesized space in the code basis
  double projector_distance = 0.0;           // against span(logical states)
  double max_codeword_residual = 0.0;        // max ||S c - c|| over ops and codewords
  double codeword_leakage = 0.0;             // max ||c - P c||, P onto the synthesized span
  bool subspace_equal = false;               // projector_distance < 1e-8
};

// Operators applied after the Z-pair stage, on the code's basis.
std::vector<SymmetryOperator> code_symmetry_operators(const CodeSpec& spec);
// Two-stage synthesis: Z pairs on the truncated space, then the remaining
// symmetry operators on the resulting irreducible subspace.
SynthesisReport synthesize(const CodeSpec& spec, double tol = 1e-9);

}  // namespace chi2qec
