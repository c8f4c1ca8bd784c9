#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace chi2qec {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(int n, int k);
// x (x-1) ... (x-k+1); zero when k > x >= 0.
BigInt falling_factorial(int x, int k);
// (x+1) (x+2) ... (x+k).
BigInt rising_from_next(int x, int k);
BigInt int_pow(int base, int exponent);
// sqrt(C(n,k)) as a double, computed from the exact integer.
double sqrt_binomial(int n, int k);

}  // namespace chi2qec
