#include "symppt/combx.hpp"

#include <cmath>
#include <stdexcept>

namespace symppt {

ExactRational::ExactRational(long value) : value_(value) {}

ExactRational::ExactRational(const BigInt& numerator, const BigInt& denominator) {
  if (sgn(denominator) == 0) throw std::domain_error("ExactRational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

ExactRational::ExactRational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

ExactRational ExactRational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return ExactRational(BigInt(s, 10), BigInt(1));
    return ExactRational(BigInt(s.substr(0, slash), 10), BigInt(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("ExactRational: cannot parse '" + s + "'");
  }
}

ExactRational ExactRational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("ExactRational: non-finite double");
  return ExactRational(mpq_class(value));
}

double ExactRational::to_double() const { return value_.get_d(); }

std::string ExactRational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

ExactRational& ExactRational::operator+=(const ExactRational& o) {
  value_ += o.value_;
  return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& o) {
  value_ -= o.value_;
  return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& o) {
  value_ *= o.value_;
  return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& o) {
  if (o.is_zero()) throw std::domain_error("ExactRational: division by zero");
  value_ /= o.value_;
  return *this;
}
ExactRational ExactRational::operator-() const { return ExactRational(mpq_class(-value_)); }

SqrtRational::SqrtRational(ExactRational radicand) : radicand_(std::move(radicand)) {
  if (radicand_.sign() < 0) throw std::domain_error("SqrtRational: negative radicand");
}

double SqrtRational::to_double() const {
  // sqrt(p/q) evaluated as a ratio so that huge numerators do not overflow
  const mpf_class num(radicand_.numerator(), 256);
  const mpf_class den(radicand_.denominator(), 256);
  const mpf_class q = sqrt(mpf_class(num / den, 256));
  return q.get_d();
}

BigInt binomial(long n, long r) {
  if (n < 0) throw std::domain_error("binomial: negative upper index");
  if (r < 0 || r > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

BigInt generalized_binomial(long n, long r) {
  if (r < 0) return 0;
  if (n >= 0) return binomial(n, r);
  BigInt out = binomial(-n + r - 1, r);
  if (r % 2 != 0) out = -out;
  return out;
}

BigInt multinomial(std::span<const int> parts) {
  long total = 0;
  for (const int p : parts) {
    if (p < 0) return 0;
    total += p;
  }
  BigInt out = 1;
  long remaining = total;
  for (const int p : parts) {
    out *= binomial(remaining, p);
    remaining -= p;
  }
  return out;
}

BigInt symmetric_dimension(int n, int d) {
  if (n < 0 || d < 1) throw std::domain_error("symmetric_dimension: need n >= 0, d >= 1");
  return binomial(n + d - 1, d - 1);
}

SqrtRational chi(int n, int k, int alpha, int beta) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("chi: need 0 <= k <= N");
  if (alpha < 0 || alpha > n) throw std::domain_error("chi: need 0 <= alpha <= N");
  const BigInt num = binomial(k, alpha - beta) * binomial(n - k, beta);
  return SqrtRational(ExactRational(num, binomial(n, alpha)));
}

std::pair<BigInt, BigInt> vandermonde_lhs_rhs(long a, long b, long g) {
  if (a < 0 || b < 0 || g < 0) throw std::domain_error("vandermonde_lhs_rhs: negative argument");
  BigInt rhs = 0;
  for (long j = 0; j <= g; ++j) {
    rhs += generalized_binomial(a - j, g - j) * generalized_binomial(b + j - 1, j);
  }
  return {binomial(a + b, g), rhs};
}

ExactRational p_min_qubits(int n) {
  if (n < 2) throw std::domain_error("p_min_qubits: need N >= 2");
  return p_min_qudits(n, 2);
}

ExactRational p_min_qudits(int n, int d) {
  if (n < 2 || d < 2) throw std::domain_error("p_min_qudits: need N >= 2 and d >= 2");
  // 1 / (1 + 2/X) = X / (X + 2) with X = D * C(N, floor(N/2))
  const BigInt x = symmetric_dimension(n, d) * binomial(n, n / 2);
  return ExactRational(x, x + 2);
}

}  // namespace symppt
