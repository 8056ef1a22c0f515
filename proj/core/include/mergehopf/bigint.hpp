#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mergehopf {

// Coefficients and combinatorial counts grow past 64 bits (Catalan-type
// growth), so all formal sums and counting functions use exact big integers.
using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(unsigned long n, unsigned long k);
BigInt falling_factorial(unsigned long n, unsigned long k);
BigInt int_pow(const BigInt& base, unsigned long exp);

}  // namespace mergehopf
