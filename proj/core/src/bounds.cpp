#include "chi2qec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

#include "chi2qec/parallel.hpp"

namespace chi2qec {

namespace {

BigInt big_pow(int base, int e) { return int_pow(base, e); }

// b1^k1 / q1^n1 compared with b2^k2 / q2^n2: -1, 0 or 1.
int compare_ratio(int b1, int k1, int q1, int n1, int b2, int k2, int q2, int n2) {
  const BigInt lhs = big_pow(b1, k1) * big_pow(q2, n2);
  const BigInt rhs = big_pow(b2, k2) * big_pow(q1, n1);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::optional<int> try_min_n(int q, int b, int k, int t, int cap) {
  for (int n = 1; n <= cap; ++n) {
    if (rotation_bound_holds({n, q, b, k, t})) return n;
  }
  return std::nullopt;
}

std::optional<int> try_min_n_loss(int q, int b, int k, int cap) {
  for (int n = 1; n <= cap; ++n) {
    if (loss_bound_holds(n, q, b, k)) return n;
  }
  return std::nullopt;
}

std::string fmt_q_n(int q, int n) { return "n=" + std::to_string(n) + "@q=" + std::to_string(q); }

TheoremCheck theorem1_example() {
  TheoremCheck c{"Theorem 1", "qutrit physical, qubit logical, t=1: 2(1+8n) <= 3^n first at n=4", "", false};
  const int n = min_n(3, 2, 1, 1);
  c.finding = "min_n=" + std::to_string(n) + " (n=3: lhs " + rotation_bound_lhs({3, 3, 2, 1, 1}).str() +
              " > 27; n=4: lhs " + rotation_bound_lhs({4, 3, 2, 1, 1}).str() + " <= 81)";
  c.pass = n == 4;
  return c;
}

TheoremCheck theorem2(const SearchCaps& caps) {
  TheoremCheck c{"Theorem 2", "b=q, k=t=1: smallest n is 4, first reached at q=4; q=2,3 need n>=5", "", false};
  const auto nq = static_cast<std::size_t>(caps.max_q - 1);
  std::vector<int> mins(nq, 0);
  parallel_for(nq, [&](std::size_t i) {
    const int q = static_cast<int>(i) + 2;
    mins[i] = try_min_n(q, q, 1, 1, caps.max_n).value_or(0);
  });
  int best = 0, best_q = 0;
  bool all_found = true;
  for (std::size_t i = 0; i < nq; ++i) {
    if (mins[i] == 0) {
      all_found = false;
      continue;
    }
    if (best == 0 || mins[i] < best) {
      best = mins[i];
      best_q = static_cast<int>(i) + 2;
    }
  }
  c.finding = "min over q<=" + std::to_string(caps.max_q) + ": " + fmt_q_n(best_q, best) +
              "; q=2 -> n=" + std::to_string(mins[0]) + ", q=3 -> n=" + std::to_string(mins[1]);
  c.pass = all_found && best == 4 && best_q == 4 && mins[0] >= 5 && mins[1] >= 5;
  return c;
}

TheoremCheck theorem3(const SearchCaps& caps) {
  TheoremCheck c{"Theorem 3", "b=2, k=t=1: smallest n is 3, first reached at q=6; q<=5 need n>=4", "", false};
  const auto nq = static_cast<std::size_t>(caps.max_q - 1);
  std::vector<int> mins(nq, 0);
  parallel_for(nq, [&](std::size_t i) {
    const int q = static_cast<int>(i) + 2;
    mins[i] = try_min_n(q, 2, 1, 1, caps.max_n).value_or(0);
  });
  int best = 0, best_q = 0;
  bool low_ok = true;
  for (std::size_t i = 0; i < nq; ++i) {
    const int q = static_cast<int>(i) + 2;
    if (mins[i] == 0) continue;
    if (best == 0 || mins[i] < best) {
      best = mins[i];
      best_q = q;
    }
    if (q <= 5 && mins[i] < 4) low_ok = false;
  }
  c.finding = "min over q<=" + std::to_string(caps.max_q) + ": " + fmt_q_n(best_q, best) +
              " (b=2); q=5 -> n=" + std::to_string(mins[3]);
  c.pass = best == 3 && best_q == 6 && low_ok;
  return c;
}

TheoremCheck theorem4(const SearchCaps& caps) {
  TheoremCheck c{"Theorem 4",
                 "t=1: volume ratio r = b^k/q^n <= 1/(1+n(q^2-1)) on every feasible point; max r attained at b=q=2",
                 "", false};
  struct Best {
    int q = 0, b = 0, k = 0, n = 0;
    bool ok = true;
    long long points = 0;
  };
  const auto nq = static_cast<std::size_t>(caps.max_q - 1);
  std::vector<Best> per_q(nq);
  parallel_for(nq, [&](std::size_t i) {
    const int q = static_cast<int>(i) + 2;
    Best& best = per_q[i];
    for (int b = 2; b <= caps.max_b; ++b) {
      for (int k = 1; k <= caps.max_k; ++k) {
        const auto n0 = try_min_n(q, b, k, 1, caps.max_n);
        if (!n0) continue;
        for (int n = *n0; n <= caps.max_n; ++n) {
          // r <= 1/(1+n(q^2-1))  <=>  b^k (1 + n(q^2-1)) <= q^n.
          const BigInt lhs = big_pow(b, k) * (1 + BigInt(n) * (q * q - 1));
          if (lhs > big_pow(q, n)) best.ok = false;
          ++best.points;
        }
        // r decreases with n, so the maximum for (q, b, k) sits at n0.
        if (best.q == 0 || compare_ratio(b, k, q, *n0, best.b, best.k, best.q, best.n) > 0) {
          best = Best{q, b, k, *n0, best.ok, best.points};
        }
      }
    }
  });
  Best top;
  bool ok = true;
  bool unique = true;
  long long points = 0;
  for (const auto& b : per_q) {
    ok = ok && b.ok;
    points += b.points;
    if (b.q == 0) continue;
    if (top.q == 0) {
      top = b;
      continue;
    }
    const int cmp = compare_ratio(b.b, b.k, b.q, b.n, top.b, top.k, top.q, top.n);
    if (cmp > 0) {
      top = b;
      unique = true;
    } else if (cmp == 0) {
      unique = false;
    }
  }
  std::ostringstream os;
  os << points << " feasible points (q,b<=" << caps.max_q << ", k<=" << caps.max_k << ", n<=" << caps.max_n
     << "); max r = " << big_pow(top.b, top.k) << "/" << big_pow(top.q, top.n) << " at q=" << top.q
     << ", b=" << top.b << ", k=" << top.k << ", n=" << top.n;
  c.finding = os.str();
  c.pass = ok && unique && top.q == 2 && top.b == 2;
  return c;
}

TheoremCheck theorem5(const SearchCaps& caps) {
  TheoremCheck c{"Theorem 5", "loss bound (1+3n)b^k <= (4q-3)^n: PCC saturates at n=2, EECC at n=1", "", false};
  bool pcc = true, eecc = true;
  for (int N = 2; N <= caps.max_q; ++N) {
    pcc = pcc && loss_bound_holds(2, N, N, 1) && !loss_bound_holds(1, N, N, 1);
  }
  for (int b = 2; 2 * b - 1 <= caps.max_q; ++b) {
    eecc = eecc && loss_bound_holds(1, 2 * b - 1, b, 1) && !loss_bound_holds(0, 2 * b - 1, b, 1);
  }
  const bool special = eecc_loss_bound_holds(1) && !eecc_loss_bound_holds(0);
  bool dims = true;
  for (int q = 2; q <= 10; ++q) dims = dims && corrupted_dimension(q) == 4 * q - 3;
  c.finding = std::string("PCC n=2 holds, n=1 fails for N=2..") + std::to_string(caps.max_q) + ": " +
              (pcc ? "yes" : "no") + "; EECC n=1 holds, n=0 fails: " + (eecc ? "yes" : "no") +
              "; 2(1+3n)<=9^n at n=1 (8<=9): " + (special ? "yes" : "no") +
              "; corrupted dimension 4q-3 for q<=10: " + (dims ? "yes" : "no") + " (q=3: " +
              std::to_string(corrupted_dimension(3)) + ")";
  c.pass = pcc && eecc && special && dims;
  return c;
}

}  // namespace

void validate(const BoundQuery& query) {
  if (query.q < 2 || query.b < 2 || query.n < 1 || query.k < 1 || query.t < 0) {
    throw InvalidArgument("bound query needs q, b >= 2, n, k >= 1, t >= 0");
  }
}

BigInt rotation_bound_lhs(const BoundQuery& query) {
  validate(query);
  BigInt sum = 0;
  const BigInt w = BigInt(query.q) * query.q - 1;
  BigInt wj = 1;
  for (int j = 0; j <= std::min(query.t, query.n); ++j) {
    sum += binomial(query.n, j) * wj;
    wj *= w;
  }
  return sum * big_pow(query.b, query.k);
}

bool rotation_bound_holds(const BoundQuery& query) {
  return rotation_bound_lhs(query) <= big_pow(query.q, query.n);
}

int min_n(int q, int b, int k, int t, int cap) {
  validate({1, q, b, k, t});
  if (auto n = try_min_n(q, b, k, t, cap)) return *n;
  throw SearchCapExceeded("min_n: no n <= " + std::to_string(cap) + " satisfies the bound for q=" +
                          std::to_string(q) + ", b=" + std::to_string(b) + ", k=" + std::to_string(k) +
                          ", t=" + std::to_string(t));
}

bool loss_bound_holds(int n, int q, int b, int k) {
  if (n < 0 || q < 1 || b < 2 || k < 1) throw InvalidArgument("loss bound needs n >= 0, q >= 1, b >= 2, k >= 1");
  return (1 + BigInt(3) * n) * big_pow(b, k) <= big_pow(4 * q - 3, n);
}

bool eecc_loss_bound_holds(int n) { return loss_bound_holds(n, 3, 2, 1); }

int min_n_loss(int q, int b, int k, int cap) {
  if (auto n = try_min_n_loss(q, b, k, cap)) return *n;
  throw SearchCapExceeded("min_n_loss: no n <= " + std::to_string(cap) + " satisfies the loss bound");
}

int corrupted_dimension(int q) {
  if (q < 1) throw InvalidArgument("corrupted_dimension: q >= 1");
  const int R = q - 1;
  std::set<std::vector<int>> kets;
  for (int n = 0; n <= R; ++n) {
    const std::vector<int> s{n, n, R - n};
    kets.insert(s);
    for (int m = 0; m < 3; ++m) {
      if (s[static_cast<std::size_t>(m)] == 0) continue;
      auto t = s;
      --t[static_cast<std::size_t>(m)];
      kets.insert(t);
    }
  }
  return static_cast<int>(kets.size());
}

double capacity_g(double x) {
  if (x < 0.0) throw InvalidArgument("capacity_g: x >= 0");
  if (x == 0.0) return 0.0;
  return (1.0 + x) * std::log2(1.0 + x) - x * std::log2(x);
}

double capacity_upper(double gamma, double mean_photons) {
  if (gamma < 0.0 || gamma >= 1.0) throw InvalidArgument("capacity_upper: gamma in [0, 1)");
  if (mean_photons <= 0.0) throw InvalidArgument("capacity_upper: mean photon number > 0");
  return std::max(capacity_g((1.0 - gamma) * mean_photons) - capacity_g(gamma * mean_photons), 0.0);
}

std::vector<TheoremCheck> theorem_checks(const SearchCaps& caps) {
  if (caps.max_q < 6 || caps.max_n < 5 || caps.max_k < 1 || caps.max_b < 2) {
    throw InvalidArgument("theorem_checks: caps too small (need q >= 6, n >= 5)");
  }
  return {theorem1_example(), theorem2(caps), theorem3(caps), theorem4(caps), theorem5(caps)};
}

SaturationReport saturation_report(const CodeSpec& code) {
  SaturationReport r;
  r.code = code.name;
  const auto& p = code.params;
  r.at = {p.n, p.q, p.b, p.k, 1};
  if (code.family != CodeFamily::PCC && code.family != CodeFamily::EECC) {
    r.bound = "none";
    r.note = "no saturation claim for this code";
    return r;
  }
  r.bound = "loss";
  r.holds = loss_bound_holds(p.n, p.q, p.b, p.k);
  r.fails_below = !loss_bound_holds(p.n - 1, p.q, p.b, p.k);
  r.saturated = r.holds && r.fails_below;
  std::ostringstream os;
  os << "(1+3n)b^k vs (4q-3)^n: n=" << p.n << ": " << (1 + 3 * BigInt(p.n)) * big_pow(p.b, p.k) << " <= "
     << big_pow(4 * p.q - 3, p.n) << "; n=" << p.n - 1 << ": " << (1 + 3 * BigInt(p.n - 1)) * big_pow(p.b, p.k)
     << " vs " << big_pow(4 * p.q - 3, p.n - 1);
  r.note = os.str();
  return r;
}

std::vector<BoundRow> rotation_sweep(int max_q, int max_k, int max_t, int cap) {
  if (max_q < 2 || max_k < 1 || max_t < 1) throw InvalidArgument("rotation_sweep: empty range");
  const auto nq = static_cast<std::size_t>(max_q - 1);
  std::vector<std::vector<BoundRow>> slots(nq);
  parallel_for(nq, [&](std::size_t i) {
    const int q = static_cast<int>(i) + 2;
    for (int b = 2; b <= max_q; ++b) {
      for (int k = 1; k <= max_k; ++k) {
        for (int t = 1; t <= max_t; ++t) {
          const auto n = try_min_n(q, b, k, t, cap);
          if (!n) continue;
          slots[i].push_back({q, b, k, t, *n, code_rate(*n, q, b, k)});
        }
      }
    }
  });
  std::vector<BoundRow> rows;
  for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
  return rows;
}

std::vector<BoundRow> loss_sweep(int max_q, int max_k, int cap) {
  if (max_q < 2 || max_k < 1) throw InvalidArgument("loss_sweep: empty range");
  std::vector<BoundRow> rows;
  for (int q = 2; q <= max_q; ++q) {
    for (int b = 2; b <= max_q; ++b) {
      for (int k = 1; k <= max_k; ++k) {
        const auto n = try_min_n_loss(q, b, k, cap);
        if (!n) continue;
        rows.push_back({q, b, k, 1, *n, code_rate(*n, q, b, k)});
      }
    }
  }
  return rows;
}

std::string bound_rows_csv(const std::vector<BoundRow>& rows) {
  std::ostringstream os;
  os << "q,b,k,t,min_n,rate\n";
  os.precision(17);
  for (const auto& r : rows) os << r.q << ',' << r.b << ',' << r.k << ',' << r.t << ',' << r.min_n << ',' << r.rate << '\n';
  return os.str();
}

}  // namespace chi2qec
