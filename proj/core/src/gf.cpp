#include "gridclass/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridclass {

namespace {

BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Polynomial pseudo_remainder(Polynomial r, const Polynomial& b) {
  const long db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    const BigInt lead = r.leading();
    r = r * b.leading() - b * lead * Polynomial::monomial(1, static_cast<std::size_t>(r.degree() - db));
  }
  return r;
}

}  // namespace

Polynomial::Polynomial(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(BigInt c) { return Polynomial({std::move(c)}); }

Polynomial Polynomial::monomial(BigInt c, std::size_t k) {
  std::vector<BigInt> v(k + 1);
  v[k] = std::move(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coefficient(i) + b.coefficient(i);
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const BigInt& k) {
  std::vector<BigInt> v = a.c_;
  for (auto& c : v) c *= k;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::divide_exact(const BigInt& k) const {
  std::vector<BigInt> v = c_;
  for (auto& c : v) {
    if (c % k != 0) throw std::domain_error("inexact polynomial division");
    c /= k;
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::divide_exact(const Polynomial& b) const {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (is_zero()) return {};
  if (degree() < b.degree()) throw std::domain_error("inexact polynomial division");
  std::vector<BigInt> rem = c_;
  std::vector<BigInt> q(c_.size() - b.c_.size() + 1);
  const std::size_t db = b.c_.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& top = rem[k + db];
    if (top % b.leading() != 0) throw std::domain_error("inexact polynomial division");
    q[k] = top / b.leading();
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q[k] * b.c_[j];
  }
  for (const auto& r : rem)
    if (r != 0) throw std::domain_error("inexact polynomial division");
  return Polynomial(std::move(q));
}

BigInt Polynomial::content() const {
  BigInt g = 0;
  for (const auto& c : c_) g = big_gcd(g, c);
  return g;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (leading() < 0) g = -g;
  return divide_exact(g);
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const BigInt& c = c_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt magnitude = negative ? BigInt(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (k == 0 || magnitude != 1) out += magnitude.str();
    if (k > 0) out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.primitive_part();
  }
  return x;
}

RationalGF::RationalGF(Polynomial numerator, Polynomial denominator) {
  if (denominator.coefficient(0) == 0) throw std::domain_error("denominator vanishes at 0");
  if (numerator.is_zero()) {
    numerator_ = {};
    denominator_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = gcd(numerator, denominator);
  if (g.degree() > 0) {
    numerator = numerator.divide_exact(g);
    denominator = denominator.divide_exact(g);
  }
  BigInt scale = big_gcd(numerator.content(), denominator.content());
  if (denominator.coefficient(0) < 0) scale = -scale;
  numerator_ = numerator.divide_exact(scale);
  denominator_ = denominator.divide_exact(scale);
}

std::vector<BigInt> RationalGF::series(std::size_t terms) const {
  std::vector<BigInt> s(terms);
  const BigInt d0 = denominator_.coefficient(0);
  for (std::size_t k = 0; k < terms; ++k) {
    BigInt acc = numerator_.coefficient(k);
    const std::size_t top = std::min<std::size_t>(k, denominator_.coefficients().size() - 1);
    for (std::size_t i = 1; i <= top; ++i) acc -= denominator_.coefficients()[i] * s[k - i];
    if (acc % d0 != 0) throw std::domain_error("series has non-integer coefficients");
    s[k] = acc / d0;
  }
  return s;
}

RationalGF RationalGF::without_constant() const {
  const BigInt c0 = series(1).front();
  if (c0 == 0) return *this;
  return RationalGF(numerator_ - denominator_ * c0, denominator_);
}

std::string RationalGF::to_string() const {
  if (denominator_ == Polynomial::constant(1)) return numerator_.to_string();
  std::string top = numerator_.to_string();
  const auto nonzero = std::count_if(numerator_.coefficients().begin(), numerator_.coefficients().end(),
                                     [](const BigInt& c) { return c != 0; });
  if (nonzero > 1) top = "(" + top + ")";
  return top + "/(" + denominator_.to_string() + ")";
}

RationalGF transfer_matrix_gf(const automata::Automaton& a, bool include_empty) {
  using automata::kNone;
  const std::size_t n = a.states();
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> succ(n);
  std::vector<char> reach(n, 0);
  std::vector<std::uint32_t> order{0};
  reach[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    succ[order[i]] = automata::weighted_successors(a, order[i]);
    for (const auto& [t, c] : succ[order[i]])
      if (!reach[t]) {
        reach[t] = 1;
        order.push_back(t);
      }
  }
  std::vector<char> useful(n, 0);
  bool changed = true;
  for (std::uint32_t q : order) useful[q] = a.accepting[q];
  while (changed) {
    changed = false;
    for (std::uint32_t q : order) {
      if (useful[q]) continue;
      for (const auto& [t, c] : succ[q])
        if (useful[t]) {
          useful[q] = 1;
          changed = true;
          break;
        }
    }
  }
  if (!useful[0]) return {};

  // Useful states with the initial state last: after elimination the last
  // row holds det(I - xT) and the numerator of the initial state's series.
  std::vector<std::uint32_t> states;
  for (std::uint32_t q : order)
    if (useful[q] && q != 0) states.push_back(q);
  states.push_back(0);
  const std::size_t k = states.size();
  std::vector<std::uint32_t> index(n, kNone);
  for (std::size_t i = 0; i < k; ++i) index[states[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::vector<Polynomial>> m(k, std::vector<Polynomial>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    m[i][i] = Polynomial::constant(1);
    for (const auto& [t, c] : succ[states[i]])
      if (index[t] != kNone) m[i][index[t]] = m[i][index[t]] - Polynomial::monomial(c, 1);
    if (a.accepting[states[i]]) m[i][k] = Polynomial::constant(1);
  }
  Polynomial previous = Polynomial::constant(1);
  for (std::size_t p = 0; p + 1 < k; ++p) {
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j <= k; ++j) {
        Polynomial v = m[p][p] * m[i][j];
        if (!m[i][p].is_zero() && !m[p][j].is_zero()) v = v - m[i][p] * m[p][j];
        m[i][j] = v.divide_exact(previous);
      }
      m[i][p] = {};
    }
    previous = m[p][p];
  }
  RationalGF g(m[k - 1][k], m[k - 1][k - 1]);
  return include_empty ? g : g.without_constant();
}

}  // namespace gridclass
