#pragma once

// Photon-number parity measurements, syndrome tables, decoding and the
// loss-recovery pipelines for the qutrit PCC and the qubit EECC.

#include <optional>
#include <string>
#include <vector>

#include "chi2qec/codes.hpp"
#include "chi2qec/errors.hpp"
#include "chi2qec/fock.hpp"

namespace chi2qec {

enum class SchemeName { p3, p12, q12, qEECC, pBC, qBC };

std::string to_string(SchemeName name);

// One modular component.  Linear components report (coeffs . n + offset) mod
// modulus.  Photon-change components report the change of the group's
// s+p count relative to its pump number, falling back to i+p when the s+p
// change is zero, so loss reads -1 and gain +1 on every mode.
struct ParityComponent {
  enum class Type { linear, photon_change };
  Type type = Type::linear;
  std::vector<int> coeffs;
  std::vector<int> fallback;  // photon_change only
  int offset = 0;
  int modulus = 2;
};

struct ParityScheme {
  SchemeName name = SchemeName::p3;
  std::vector<ParityComponent> components;
};

// `R` is the pump number of the subspace each group occupies.
ParityScheme make_scheme(SchemeName name, const ModeLayout& layout, int R);

// Throws IndefiniteParity when support kets disagree; all zeros for the zero vector.
std::vector<int> measure_parity(const StateVector& state, const ParityScheme& scheme);

struct SyndromeRecord {
  std::string label;        // error label, e.g. "a_s1", "adag_p", "a_s^2 a_i"
  std::string description;  // "loss on s1", "gain on p", ...
  std::vector<int> p;
  std::vector<int> q;
};

// (p, q) schemes used for a code: PCC (p12 or p3, q12 or qEECC), EECC (p3,
// qEECC), BC (pBC, qBC).
std::pair<ParityScheme, ParityScheme> code_schemes(const CodeSpec& code);

// Syndrome of the unperturbed code space.
SyndromeRecord baseline_syndrome(const CodeSpec& code);

// Loss rows then gain rows.  PCC and EECC take order 1 (single photon errors
// on each mode); BC takes the homogeneous loss and gain monomials of `order`.
std::vector<SyndromeRecord> syndrome_table(const CodeSpec& code, int order = 1);

// Throws UnknownSyndrome.  For BC, `monitored_order` selects the table and
// the configuration count (m+2)(m+1)/2 <= (2N-1)^3 is asserted.
SyndromeRecord decode_syndrome(const CodeSpec& code, const std::vector<int>& p,
                               const std::vector<int>& q,
                               std::optional<int> monitored_order = std::nullopt);

bool configuration_count_ok(int N, int m);

// Header row: error_label,p,q with vectors written space-separated.
std::string syndrome_table_csv(const std::vector<SyndromeRecord>& table);

enum class RestorationCase { signal_loss, idler_loss, pump_loss };

std::string to_string(RestorationCase c);
// "signal", "pcc_signal_loss", "eecc_pump_loss", ... (the PCC and EECC
// cases share one map per lost mode).
RestorationCase parse_restoration_case(const std::string& text);

// Single-group partial isometry from the two corrupted kets onto H_2:
// signal |1,2,0>->|0,0,2>, |0,1,1>->|2,2,0>; idler |2,1,0>->|0,0,2>,
// |1,0,1>->|2,2,0>; pump |0,0,1>->|0,0,2>, |1,1,0>->|2,2,0>.
LinearOperator restoration_isometry(RestorationCase c);

struct RecoveryResult {
  StateVector corrupted;  // normalized error image on the enclosing space
  SyndromeRecord syndrome;
  std::vector<std::string> steps;
  StateVector output;  // over the code basis
  double fidelity = 0.0;  // |<input|output>|
};

// Error, syndrome measurement, decoding and correction.  Single-photon losses
// on the qutrit PCC and the qubit EECC run the restoration circuits and gate
// sequences; every other decodable error uses the canonical KL recovery for
// that error.  Throws UnknownSyndrome for undecodable errors.
RecoveryResult full_recovery(const CodeSpec& code, const std::string& error_label,
                             const StateVector& input);

// Normalized logical state with seeded Gaussian amplitudes.
StateVector random_logical_state(const CodeSpec& code, unsigned long long seed);

struct RecoveryTrials {
  std::string code;
  std::string error_label;
  std::string decoded;  // description of the decoded syndrome
  int trials = 0;
  unsigned long long seed = 0;  // trial i uses seed + i
  double min_fidelity = 1.0;
  double mean_fidelity = 1.0;
  double max_deviation = 0.0;  // max |1 - fidelity|
  double tolerance = 0.0;
  std::vector<std::string> steps;
  bool pass = false;
};

// full_recovery on `trials` random logical states, run in parallel.
RecoveryTrials recovery_trials(const CodeSpec& code, const std::string& error_label, int trials,
                               unsigned long long seed, double tol = 1e-10);

}  // namespace chi2qec
