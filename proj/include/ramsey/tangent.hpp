#pragma once

// Exact Bernoulli numbers and the odd tangent derivatives tan^(2m-1)(0).
//
// Two independent integer-exact routes are provided and cross-checked:
//   (a) the Bernoulli closed form  tan^(2n-1)(0) = B_2n (-4)^n (1-4^n) / (2n),
//       with B_n obtained from the recurrence sum_{j<=n} C(n+1,j) B_j = 0;
//   (b) the boustrophedon (zigzag) triangle for the Euler zigzag numbers,
//       whose odd entries are the tangent numbers.
// No floating point is used anywhere in this header.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ramsey {

using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(BigInt base, unsigned exp) {
  BigInt r = 1;
  while (exp > 0) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt num = 1, den = 1;
  for (unsigned i = 1; i <= k; ++i) {
    num *= n - k + i;
    den *= i;
  }
  return num / den;  // exact: den divides num
}

// B_0..B_max via B_n = -(1/(n+1)) sum_{j<n} C(n+1,j) B_j.  B_1 = -1/2 under
// this convention.
inline std::vector<ExactRational> bernoulli_table(unsigned max_n) {
  std::vector<ExactRational> b(max_n + 1);
  b[0] = 1;
  for (unsigned n = 1; n <= max_n; ++n) {
    ExactRational acc = 0;
    for (unsigned j = 0; j < n; ++j) acc += ExactRational(binomial(n + 1, j)) * b[j];
    b[n] = -acc / (n + 1);
  }
  return b;
}

inline ExactRational bernoulli(unsigned n) { return bernoulli_table(n)[n]; }

// Zigzag numbers a_0, a_1, ... = 1, 1, 1, 2, 5, 16, 61, 272, ... via the
// boustrophedon triangle T(r,0) = [r == 0], T(r,c) = T(r,c-1) + T(r-1,r-c).
inline std::vector<BigInt> zigzag_numbers(unsigned max_index) {
  std::vector<BigInt> out;
  out.reserve(max_index + 1);
  std::vector<BigInt> row{1};
  out.push_back(1);
  for (unsigned r = 1; r <= max_index; ++r) {
    std::vector<BigInt> next(r + 1);
    next[0] = 0;
    for (unsigned c = 1; c <= r; ++c) next[c] = next[c - 1] + row[r - c];
    row = std::move(next);
    out.push_back(row[r]);
  }
  return out;
}

// Tangent numbers tan^(2m-1)(0) for m = 1..max_m, zigzag route.
inline std::vector<BigInt> zigzag_tangent_numbers(unsigned max_m) {
  if (max_m == 0) return {};
  std::vector<BigInt> zz = zigzag_numbers(2 * max_m - 1);
  std::vector<BigInt> out(max_m);
  for (unsigned m = 1; m <= max_m; ++m) out[m - 1] = zz[2 * m - 1];
  return out;
}

// tan^(odd_order)(0) as an exact integer via the Bernoulli closed form;
// integrality of the rational expression is asserted.  When cross_check is
// set the zigzag route must agree.
inline BigInt tangent_derivative(unsigned odd_order, bool cross_check = true) {
  if (odd_order == 0 || odd_order % 2 == 0)
    throw std::invalid_argument("tangent_derivative: order must be odd, got " +
                                std::to_string(odd_order));
  const unsigned n = (odd_order + 1) / 2;
  const ExactRational b2n = bernoulli(2 * n);
  const BigInt minus4n = big_pow(BigInt(-4), n);
  const BigInt four_n = big_pow(BigInt(4), n);
  const ExactRational val = b2n * ExactRational(minus4n * (1 - four_n), BigInt(2 * n));
  if (denominator(val) != 1)
    throw std::logic_error("tangent_derivative: closed form did not reduce to an integer");
  BigInt result = numerator(val);
  if (cross_check) {
    const BigInt zz = zigzag_tangent_numbers(n)[n - 1];
    if (zz != result)
      throw std::logic_error("tangent_derivative: Bernoulli and zigzag routes disagree at order " +
                             std::to_string(odd_order));
  }
  return result;
}

// values[m-1] = tan^(2m-1)(0) for m = 1..max_index, both routes compared.
struct TangentTable {
  unsigned max_index = 0;
  std::vector<BigInt> values;

  BigInt at(unsigned m) const {
    if (m == 0 || m > max_index) throw std::out_of_range("TangentTable::at");
    return values[m - 1];
  }
};

inline TangentTable make_tangent_table(unsigned max_index) {
  TangentTable t;
  t.max_index = max_index;
  const std::vector<BigInt> zz = zigzag_tangent_numbers(max_index);
  const std::vector<ExactRational> b = bernoulli_table(2 * max_index);
  for (unsigned m = 1; m <= max_index; ++m) {
    const BigInt minus4n = big_pow(BigInt(-4), m);
    const BigInt four_n = big_pow(BigInt(4), m);
    const ExactRational val = b[2 * m] * ExactRational(minus4n * (1 - four_n), BigInt(2 * m));
    if (denominator(val) != 1 || numerator(val) != zz[m - 1])
      throw std::logic_error("make_tangent_table: route disagreement at m = " + std::to_string(m));
    t.values.push_back(zz[m - 1]);
  }
  return t;
}

}  // namespace ramsey
