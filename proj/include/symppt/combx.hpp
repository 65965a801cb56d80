#pragma once

// Exact combinatorics and rational arithmetic.
//
// Every closed-form quantity used elsewhere in the library (binomial
// ratios, the Dicke splitting coefficients, SAPPT thresholds, the
// eigenvalues of the partially transposed symmetric identity) is built
// from the types in this header and only converted to double at
// matrix-assembly time.

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace symppt {

using BigInt = mpz_class;

// Rational number in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long value);  // NOLINT(google-explicit-constructor)
  ExactRational(const BigInt& numerator, const BigInt& denominator);
  explicit ExactRational(const mpq_class& value);

  // Parses "p/q" or "p".
  static ExactRational parse(std::string_view text);
  // Exact value of a binary double.
  static ExactRational from_double(double value);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  double to_double() const;
  // Always "num/den", including integers ("1/1").
  std::string str() const;

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  ExactRational& operator+=(const ExactRational& o);
  ExactRational& operator-=(const ExactRational& o);
  ExactRational& operator*=(const ExactRational& o);
  ExactRational& operator/=(const ExactRational& o);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
  ExactRational operator-() const;

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

// sqrt(radicand) for a nonnegative rational radicand.
class SqrtRational {
 public:
  SqrtRational() = default;
  explicit SqrtRational(ExactRational radicand);

  const ExactRational& radicand() const { return radicand_; }
  // The square, exactly.
  const ExactRational& squared() const { return radicand_; }
  double to_double() const;
  bool is_zero() const { return radicand_.is_zero(); }
  std::string str() const { return "sqrt(" + radicand_.str() + ")"; }

  friend SqrtRational operator*(const SqrtRational& a, const SqrtRational& b) {
    return SqrtRational(a.radicand_ * b.radicand_);
  }
  friend bool operator==(const SqrtRational& a, const SqrtRational& b) = default;

 private:
  ExactRational radicand_;
};

// C(n, r); zero when r < 0 or r > n. Requires n >= 0.
BigInt binomial(long n, long r);

// Binomial with the upper index extended to negative integers,
// C(-m, r) = (-1)^r C(m + r - 1, r). Zero for r < 0.
BigInt generalized_binomial(long n, long r);

// n! / (v_0! v_1! ...), with n = sum(v). Zero if any part is negative.
BigInt multinomial(std::span<const int> parts);

// Dimension of the symmetric subspace of n particles of local dimension d.
BigInt symmetric_dimension(int n, int d);

// Coefficient of |D_k^(alpha-beta)> |D_{N-k}^(beta)> in |D_N^(alpha)>:
// sqrt(C(k, alpha-beta) C(N-k, beta) / C(N, alpha)).
SqrtRational chi(int n, int k, int alpha, int beta);

// (C(a+b, g), sum_{j=0}^{g} C(a-j, g-j) C(b+j-1, j)). The two entries are
// equal; used to cross-check the normalization of the ladder eigenstates.
std::pair<BigInt, BigInt> vandermonde_lhs_rhs(long a, long b, long g);

// Smallest mixing probability for which the two-level spectrum
// (1 - Np/(N+1), p/(N+1), ...) is symmetric absolutely PPT.
ExactRational p_min_qubits(int n);

// Qudit version with D = C(N+d-1, d-1) in place of N+1.
ExactRational p_min_qudits(int n, int d);

}  // namespace symppt
