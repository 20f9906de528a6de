#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "ellgen/rational.hpp"

namespace ellgen {

/// Sparse Laurent polynomial in the circle variable z = e^{2 pi i t}.
///
/// Exponents are stored in half units: key e stands for z^{e/2}. Spinor
/// weights contribute the odd keys. No zero coefficients are stored.
template <class K>
class Laurent {
 public:
  using Terms = std::map<int, K>;

  Laurent() = default;
  explicit Laurent(const K& c) { add_term(0, c); }

  static Laurent monomial(int half_exp, const K& c) {
    Laurent p;
    p.add_term(half_exp, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  K coeff(int half_exp) const {
    auto it = terms_.find(half_exp);
    return it == terms_.end() ? K(0) : it->second;
  }

  int min_exp() const { return terms_.begin()->first; }
  int max_exp() const { return terms_.rbegin()->first; }

  /// True when every exponent is an integer power of z.
  bool integral_exponents() const {
    for (const auto& [e, c] : terms_)
      if (e % 2 != 0) return false;
    return true;
  }

  void add_term(int half_exp, const K& c) {
    if (ring::zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(half_exp, c);
    if (!inserted) {
      it->second += c;
      if (ring::zero(it->second)) terms_.erase(it);
    }
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, K(-c));
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) {
    Laurent r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, K(-c));
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, K(ca * cb));
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent scaled(const K& s) const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.add_term(e, K(c * s));
    return r;
  }

  /// Shift all exponents by `half_shift` half units (multiply by z^{half_shift/2}).
  Laurent shifted(int half_shift) const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + half_shift, c);
    return r;
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

  /// Exact division. Returns nullopt when `d` does not divide *this.
  std::optional<Laurent> divide_exact(const Laurent& d) const {
    if (d.is_zero()) throw NotInvertible("Laurent division by zero");
    if (is_zero()) return Laurent{};
    Laurent rem = *this;
    Laurent quo;
    const int dtop = d.max_exp();
    const int dlow = d.min_exp();
    const K lead = d.terms_.rbegin()->second;
    while (!rem.is_zero()) {
      const int rtop = rem.max_exp();
      if (rtop - dtop < rem.min_exp() - dlow) return std::nullopt;
      const int e = rtop - dtop;
      const K c = K(rem.terms_.rbegin()->second / lead);
      quo.add_term(e, c);
      rem -= d.shifted(e).scaled(c);
    }
    return quo;
  }

  /// Evaluate with Zhalf = z^{1/2}.
  Complex evaluate(Complex zhalf) const {
    Complex acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) acc += to_complex(c) * std::pow(zhalf, e);
    return acc;
  }

  std::string to_string() const;

 private:
  static Complex to_complex(const Rat& x) { return Complex(to_double(x), 0.0); }
  static Complex to_complex(const Complex& x) { return x; }

  Terms terms_;
};

std::string half_exponent_text(int half_exp);

template <class K>
std::string Laurent<K>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += to_text(c);
    if (e != 0) out += "*z^(" + half_exponent_text(e) + ")";
  }
  return out;
}

template <class K>
bool is_zero(const Laurent<K>& p) {
  return p.is_zero();
}
template <class K>
Laurent<K> scale_rat(const Laurent<K>& p, const Rat& r) {
  return p.scaled(from_rat<K>(r));
}
template <class K>
std::string to_text(const Laurent<K>& p) {
  const std::string s = p.to_string();
  return p.size() > 1 ? "(" + s + ")" : s;
}

}  // namespace ellgen
