#include "mergehopf/bigint.hpp"

namespace mergehopf {

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    r *= BigInt(n - i);
    r /= BigInt(i + 1);
  }
  return r;
}

BigInt falling_factorial(unsigned long n, unsigned long k) {
  BigInt r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    if (i > n) return 0;
    r *= BigInt(n - i);
  }
  return r;
}

BigInt int_pow(const BigInt& base, unsigned long exp) {
  BigInt r = 1;
  for (unsigned long i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace mergehopf
