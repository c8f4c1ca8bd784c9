#include "chi2qec/combinatorics.hpp"

#include <cmath>

#include "chi2qec/exceptions.hpp"

namespace chi2qec {

BigInt binomial(int n, int k) {
  if (n < 0) throw InvalidArgument("binomial: n must be >= 0");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt falling_factorial(int x, int k) {
  if (k < 0) throw InvalidArgument("falling_factorial: k must be >= 0");
  BigInt r = 1;
  for (int l = 0; l < k; ++l) r *= (x - l);
  return r;
}

BigInt rising_from_next(int x, int k) {
  if (k < 0) throw InvalidArgument("rising_from_next: k must be >= 0");
  BigInt r = 1;
  for (int l = 1; l <= k; ++l) r *= (x + l);
  return r;
}

BigInt int_pow(int base, int exponent) {
  if (exponent < 0) throw InvalidArgument("int_pow: negative exponent");
  BigInt r = 1;
  for (int e = 0; e < exponent; ++e) r *= base;
  return r;
}

double sqrt_binomial(int n, int k) { return std::sqrt(binomial(n, k).convert_to<double>()); }

}  // namespace chi2qec
