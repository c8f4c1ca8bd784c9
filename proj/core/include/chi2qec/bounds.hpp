#pragma once

// Generalized quantum Hamming bounds, code rates and the GKP loss-channel
// capacity.  Every bound comparison is exact integer arithmetic.

#include <string>
#include <vector>

#include "chi2qec/codes.hpp"
#include "chi2qec/combinatorics.hpp"

namespace chi2qec {

struct BoundQuery {
  int n = 1;
  int q = 2;
  int b = 2;
  int k = 1;
  int t = 1;
};

void validate(const BoundQuery& query);

// sum_{j<=t} C(n,j) (q^2-1)^j b^k <= q^n.
bool rotation_bound_holds(const BoundQuery& query);
BigInt rotation_bound_lhs(const BoundQuery& query);

struct SearchCaps {
  int max_n = 64;
  int max_q = 64;
  int max_b = 64;
  int max_k = 8;
};

// Smallest n with the rotation bound satisfied; throws SearchCapExceeded.
int min_n(int q, int b, int k, int t, int cap = 64);

// (1 + 3n) b^k <= (4q - 3)^n.
bool loss_bound_holds(int n, int q, int b, int k);
// 2(1 + 3n) <= 9^n, the qutrit-physical qubit-logical case.
bool eecc_loss_bound_holds(int n);
int min_n_loss(int q, int b, int k, int cap = 64);

// Distinct kets in H_{q-1} and its single-photon-loss images, by enumeration.
int corrupted_dimension(int q);

// (1+x) log2(1+x) - x log2 x, with g(0) = 0.
double capacity_g(double x);
// max(g((1-gamma) N) - g(gamma N), 0).
double capacity_upper(double gamma, double mean_photons);

struct TheoremCheck {
  std::string name;
  std::string claim;
  std::string finding;
  bool pass = false;
};

// Theorems 2-4 over the capped ranges plus the Theorem 1 qutrit-qubit example
// and Theorem 5 saturation sweeps.  Sweeps run in parallel.
std::vector<TheoremCheck> theorem_checks(const SearchCaps& caps = {});

struct SaturationReport {
  std::string code;
  std::string bound;  // "loss" or "none"
  BoundQuery at;
  bool holds = false;
  bool fails_below = false;
  bool saturated = false;
  std::string note;
};

SaturationReport saturation_report(const CodeSpec& code);

struct BoundRow {
  int q = 0;
  int b = 0;
  int k = 0;
  int t = 0;
  int min_n = 0;
  double rate = 0.0;
};

// Rotation rows for q, b in [2, max_q], k in [1, max_k], t in [1, max_t].
std::vector<BoundRow> rotation_sweep(int max_q, int max_k, int max_t, int cap = 64);
// Loss rows (t = 1) for q, b in [2, max_q], k in [1, max_k].
std::vector<BoundRow> loss_sweep(int max_q, int max_k, int cap = 64);
std::string bound_rows_csv(const std::vector<BoundRow>& rows);

}  // namespace chi2qec
