#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ellgen/laurent.hpp"

namespace ellgen {

/// Sparse truncated series sum_n c_n q^{n/den}, den | 24.
///
/// Coefficients with index >= trunc are unknown. An exact (polynomial) series
/// has trunc == kExact. C must have a default-constructed zero plus + - * and
/// an `is_zero` overload.
template <class C>
class QSeries {
 public:
  static constexpr long kExact = LONG_MAX / 8;

  QSeries() = default;
  /// Zero series known below q^{trunc}.
  QSeries(int den, long trunc_index) : den_(den), trunc_(trunc_index) { check_den(den); }

  static QSeries zero(const Rat& trunc) {
    const int den = grid_of(trunc);
    return QSeries(den, index_of(trunc, den));
  }
  static QSeries exact_zero(int den = 1) { return QSeries(den, kExact); }
  static QSeries monomial(const Rat& exponent, const C& c, long den = 0, long trunc_index = kExact) {
    const int d = den ? static_cast<int>(den) : grid_of(exponent);
    QSeries s(d, trunc_index);
    s.add_term(index_of(exponent, d), c);
    return s;
  }
  /// c + O(q^{trunc}).
  static QSeries constant(const C& c, const Rat& trunc) {
    const int den = grid_of(trunc);
    QSeries s(den, index_of(trunc, den));
    s.add_term(0, c);
    return s;
  }

  int den() const { return den_; }
  Rat step() const { return Rat(1) / Rat(den_); }
  long trunc_index() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kExact; }
  Rat trunc() const { return Rat(trunc_) / Rat(den_); }
  const std::map<long, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Lowest index carrying a nonzero coefficient; for a zero series the
  /// truncation index (the series is known to vanish below it).
  long valuation() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

  void add_term(long n, const C& c) {
    if (n >= trunc_ || ring::zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(n, c);
    if (!inserted) {
      it->second = it->second + c;
      if (ring::zero(it->second)) terms_.erase(it);
    }
  }

  /// Coefficient of q^{exponent}; TruncationError at or beyond trunc.
  C coefficient(const Rat& exponent) const {
    if (exponent >= trunc()) throw TruncationError("coefficient of q^(" + to_text(exponent) + ") requested at or beyond O(q^(" + to_text(trunc()) + "))");
    const Rat scaled = exponent * den_;
    if (denominator_of(scaled) != 1) return C{};
    return coeff_index(static_cast<long>(numerator_of(scaled)));
  }
  C coeff_index(long n) const {
    if (n >= trunc_) throw TruncationError("coefficient index beyond truncation");
    auto it = terms_.find(n);
    return it == terms_.end() ? C{} : it->second;
  }

  /// Same series on the finer grid 1/new_den.
  QSeries refined(int new_den) const {
    if (new_den % den_ != 0) throw DomainError("refined: new grid must be a multiple of the old one");
    check_den(new_den);
    const long f = new_den / den_;
    QSeries r(new_den, is_exact() ? kExact : trunc_ * f);
    for (const auto& [n, c] : terms_) r.terms_.emplace(n * f, c);
    return r;
  }

  /// Lowers the truncation to q^{t} (no-op if already lower).
  QSeries truncated(const Rat& t) const {
    const int d = std::lcm(den_, grid_of(t));
    QSeries r = refined(d);
    const long ti = index_of(t, d);
    if (ti < r.trunc_) {
      r.trunc_ = ti;
      r.terms_.erase(r.terms_.lower_bound(ti), r.terms_.end());
    }
    return r;
  }

  /// Multiplication by q^{e}.
  QSeries shifted(const Rat& e) const {
    const int d = std::lcm(den_, grid_of(e));
    QSeries r = refined(d);
    const long s = index_of(e, d);
    QSeries out(d, r.is_exact() ? kExact : r.trunc_ + s);
    for (const auto& [n, c] : r.terms_) out.terms_.emplace(n + s, c);
    return out;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    auto [x, y] = unify(a, b);
    QSeries r(x.den_, std::min(x.trunc_, y.trunc_));
    for (const auto& [n, c] : x.terms_) r.add_term(n, c);
    for (const auto& [n, c] : y.terms_) r.add_term(n, c);
    return r;
  }
  friend QSeries operator-(const QSeries& a) {
    QSeries r(a.den_, a.trunc_);
    for (const auto& [n, c] : a.terms_) r.terms_.emplace(n, C(-c));
    return r;
  }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    auto [x, y] = unify(a, b);
    const long t = std::min(sat_add(x.trunc_, y.valuation()), sat_add(y.trunc_, x.valuation()));
    QSeries r(x.den_, t);
    for (const auto& [na, ca] : x.terms_) {
      if (na + y.valuation() >= t) break;
      for (const auto& [nb, cb] : y.terms_) {
        if (na + nb >= t) break;
        r.add_term(na + nb, C(ca * cb));
      }
    }
    return r;
  }
  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  QSeries scaled(const C& s) const {
    QSeries r(den_, trunc_);
    for (const auto& [n, c] : terms_) r.add_term(n, C(c * s));
    return r;
  }

  /// Multiplicative inverse; the lowest coefficient must be a unit of C.
  QSeries inverse() const {
    if (terms_.empty()) throw NotInvertible("cannot invert a series with no known nonzero term");
    if (is_exact() && terms_.size() > 1) throw DomainError("inverse of an exact multi-term series needs an explicit truncation");
    const long v = terms_.begin()->first;
    const C lead_inv = ring::inv(terms_.begin()->second);
    const long len = is_exact() ? 1 : trunc_ - v;  // relative precision
    std::vector<C> a(static_cast<std::size_t>(len));
    for (const auto& [n, c] : terms_)
      if (n - v < len) a[static_cast<std::size_t>(n - v)] = c;
    std::vector<C> b(static_cast<std::size_t>(len));
    b[0] = lead_inv;
    for (long m = 1; m < len; ++m) {
      C acc{};
      bool any = false;
      for (long i = 1; i <= m; ++i) {
        const C& ai = a[static_cast<std::size_t>(i)];
        if (ring::zero(ai)) continue;
        const C& bj = b[static_cast<std::size_t>(m - i)];
        if (ring::zero(bj)) continue;
        acc = any ? C(acc + ai * bj) : C(ai * bj);
        any = true;
      }
      if (any) b[static_cast<std::size_t>(m)] = C(-(acc * lead_inv));
    }
    QSeries r(den_, is_exact() ? kExact : trunc_ - 2 * v);
    for (long m = 0; m < len; ++m) r.add_term(m - v, b[static_cast<std::size_t>(m)]);
    return r;
  }

  /// Apply f to every coefficient (f(0) must be 0).
  template <class F>
  auto map_coeffs(F&& f) const {
    using R = decltype(f(std::declval<const C&>()));
    QSeries<R> r(den_, trunc_);
    for (const auto& [n, c] : terms_) r.add_term(n, f(c));
    return r;
  }

  /// sum conv(c_n) q^{n/den} at q = e^{2 pi i tau}, for the known terms.
  template <class F>
  Complex evaluate(Complex tau, F&& conv) const {
    Complex acc(0.0, 0.0);
    for (const auto& [n, c] : terms_)
      acc += conv(c) * std::exp(Complex(0.0, 2.0 * kPi) * tau * (static_cast<double>(n) / den_));
    return acc;
  }

  /// `c*q^(a) + ... + O(q^(T))`, exponents in lowest terms.
  std::string to_string() const {
    std::string out;
    for (const auto& [n, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += to_text(c) + "*q^(" + to_text(Rat(n) / Rat(den_)) + ")";
    }
    if (!is_exact()) {
      if (!out.empty()) out += " + ";
      out += "O(q^(" + to_text(trunc()) + "))";
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    auto [x, y] = unify(a, b);
    return x.trunc_ == y.trunc_ && (x - y).terms_.empty();
  }

  static int grid_of(const Rat& e) {
    const BigInt d = denominator_of(e);
    if (24 % static_cast<long>(d > 24 ? BigInt(25) : d) != 0) throw DomainError("q-exponent " + to_text(e) + " is off the 1/24 grid");
    return static_cast<int>(d);
  }
  static long index_of(const Rat& e, int den) {
    const Rat s = e * den;
    if (denominator_of(s) != 1) throw DomainError("q-exponent not on the requested grid");
    return static_cast<long>(numerator_of(s));
  }

 private:
  template <class>
  friend class QSeries;

  static void check_den(int den) {
    if (den <= 0 || 24 % den != 0) throw DomainError("q-grid denominator must divide 24");
  }
  static long sat_add(long a, long b) {
    if (a >= kExact || b >= kExact) return kExact;
    return std::min(a + b, kExact);
  }
  static std::pair<QSeries, QSeries> unify(const QSeries& a, const QSeries& b) {
    const int d = std::lcm(a.den_, b.den_);
    return {a.refined(d), b.refined(d)};
  }

  int den_ = 1;
  long trunc_ = kExact;
  std::map<long, C> terms_;
};

template <class C>
bool is_zero(const QSeries<C>& s) {
  return s.is_zero();
}

/// (1 + c q^{a})^{p} for integer p (negative powers expand geometrically),
/// a > 0, truncated at q^{trunc}.
template <class C>
QSeries<C> binomial_factor(const C& c, const Rat& a, long p, const C& one, const Rat& trunc) {
  if (a <= 0) throw DomainError("binomial_factor: exponent must be positive");
  const int den = std::lcm(QSeries<C>::grid_of(a), QSeries<C>::grid_of(trunc));
  const long step = QSeries<C>::index_of(a, den);
  const long t = QSeries<C>::index_of(trunc, den);
  QSeries<C> r(den, t);
  C power = one;
  Rat binom = 1;  // generalized binomial coefficient C(p, j)
  for (long j = 0; j * step < t; ++j) {
    if (j > 0) {
      binom = binom * Rat(p - (j - 1)) / Rat(j);
      power = C(power * c);
    }
    if (binom == 0) break;
    r.add_term(j * step, scale_rat(power, binom));
  }
  return r;
}

/// One factor (1 + sign * q^{exponent} z^{z_half/2})^{power}.
struct EulerFactor {
  Rat exponent;
  int z_half = 0;
  int sign = -1;
  long power = 1;
};

/// Finite product of Euler factors with Laurent-in-z coefficients. Factors
/// whose exponent is at or beyond trunc contribute 1 and are skipped.
QSeries<Laurent<Rat>> euler_product(const std::vector<EulerFactor>& factors, const Rat& trunc);

/// prod_{n >= 1} (1 - q^n) over the coefficient ring of `one`.
template <class C>
QSeries<C> euler_function(const C& one, const Rat& trunc) {
  QSeries<C> r = QSeries<C>::constant(one, trunc);
  for (long n = 1; Rat(n) < trunc; ++n) r *= binomial_factor(C(-one), Rat(n), 1, one, trunc);
  return r;
}

}  // namespace ellgen
