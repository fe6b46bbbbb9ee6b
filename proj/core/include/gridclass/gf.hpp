#pragma once

#include <string>
#include <vector>

#include "gridclass/automaton.hpp"

namespace gridclass {

using automata::BigInt;

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// lowest degree first, no trailing zeros (the zero polynomial is empty).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coefficients);
  static Polynomial constant(BigInt c);
  /// c * x^k
  static Polynomial monomial(BigInt c, std::size_t k);

  const std::vector<BigInt>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  BigInt coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  const BigInt& leading() const { return c_.back(); }

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const BigInt& k);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Exact division; throws std::domain_error when `b` does not divide.
  Polynomial divide_exact(const Polynomial& b) const;
  Polynomial divide_exact(const BigInt& k) const;
  /// gcd of the coefficients (non-negative).
  BigInt content() const;
  Polynomial primitive_part() const;

  /// "1 - 2x + x^2"
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// gcd over Q[x], returned primitive with positive leading coefficient.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// numerator / denominator in lowest terms with denominator(0) = +1.
class RationalGF {
 public:
  RationalGF() : numerator_(), denominator_(Polynomial::constant(1)) {}
  /// Reduces and normalises; throws std::domain_error if denominator(0) is 0.
  RationalGF(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const noexcept { return numerator_; }
  const Polynomial& denominator() const noexcept { return denominator_; }

  /// First `terms` Taylor coefficients.
  std::vector<BigInt> series(std::size_t terms) const;
  /// The same function minus its constant term.
  RationalGF without_constant() const;
  /// "x/(1 - x)"
  std::string to_string() const;

  friend bool operator==(const RationalGF&, const RationalGF&) = default;

 private:
  Polynomial numerator_;
  Polynomial denominator_;
};

/// Sum over n of the number of accepted words of length n, times x^n.
/// Solves (I - xT) g = e_acc over the useful states by fraction-free
/// elimination. `include_empty` keeps the n = 0 term.
RationalGF transfer_matrix_gf(const automata::Automaton& a, bool include_empty = false);

}  // namespace gridclass
