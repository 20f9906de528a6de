#include "ellgen/zfrac.hpp"

#include <algorithm>

namespace ellgen {

std::string half_exponent_text(int half_exp) {
  if (half_exp % 2 == 0) return std::to_string(half_exp / 2);
  return std::to_string(half_exp) + "/2";
}

ZFrac::Poly ZFrac::denominator_factor(int m) {
  Poly a = Poly::monomial(m, Rat(1));
  a.add_term(-m, Rat(-1));
  return a;
}

ZFrac::ZFrac(Poly num, Den den) : num_(std::move(num)), den_(std::move(den)) {
  for (auto it = den_.begin(); it != den_.end();) {
    if (it->first <= 0) throw DomainError("ZFrac denominator index must be positive");
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
  cancel();
}

void ZFrac::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = num_.divide_exact(denominator_factor(it->first));
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

ZFrac& ZFrac::operator+=(const ZFrac& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  Den common = den_;
  for (const auto& [m, p] : o.den_) common[m] = std::max(common[m], p);
  auto lift = [&](const ZFrac& x) {
    Poly n = x.num_;
    for (const auto& [m, p] : common) {
      auto it = x.den_.find(m);
      const int have = it == x.den_.end() ? 0 : it->second;
      for (int i = have; i < p; ++i) n *= denominator_factor(m);
    }
    return n;
  };
  num_ = lift(*this) + lift(o);
  den_ = std::move(common);
  cancel();
  return *this;
}

ZFrac& ZFrac::operator*=(const ZFrac& o) {
  num_ *= o.num_;
  for (const auto& [m, p] : o.den_) den_[m] += p;
  cancel();
  return *this;
}

ZFrac ZFrac::inverse() const {
  if (num_.is_zero()) throw NotInvertible("inverse of zero in Q[z^(1/2)] localization");
  Poly rest = num_;
  Den factors;
  // Greedy factoring by the largest admissible a_m first.
  bool progress = true;
  while (progress && rest.size() > 1) {
    progress = false;
    const int span = rest.max_exp() - rest.min_exp();
    for (int m = span / 2; m >= 1; --m) {
      if (auto q = rest.divide_exact(denominator_factor(m))) {
        rest = std::move(*q);
        ++factors[m];
        progress = true;
        break;
      }
    }
  }
  if (rest.size() != 1)
    throw NotInvertible("element " + to_string() + " is not a unit (numerator is not a product of z^(m/2)-z^(-m/2))");
  const int e = rest.min_exp();
  const Rat c = rest.coeff(e);
  Poly inv_num = Poly::monomial(-e, Rat(1) / c);
  for (const auto& [m, p] : den_)
    for (int i = 0; i < p; ++i) inv_num *= denominator_factor(m);
  return ZFrac(std::move(inv_num), std::move(factors));
}

std::optional<ZFrac::Poly> ZFrac::to_laurent() const {
  if (den_.empty()) return num_;
  return std::nullopt;
}

Complex ZFrac::evaluate(Complex zhalf) const {
  Complex v = num_.evaluate(zhalf);
  for (const auto& [m, p] : den_) {
    const Complex a = std::pow(zhalf, m) - std::pow(zhalf, -m);
    v /= std::pow(a, p);
  }
  return v;
}

std::string ZFrac::to_string() const {
  if (den_.empty()) {
    if (num_.size() <= 1) return num_.to_string();
    return "(" + num_.to_string() + ")";
  }
  std::string d;
  for (const auto& [m, p] : den_) {
    if (!d.empty()) d += "*";
    d += "(z^(" + half_exponent_text(m) + ")-z^(" + half_exponent_text(-m) + "))";
    if (p != 1) d += "^" + std::to_string(p);
  }
  return "(" + num_.to_string() + ")/(" + d + ")";
}

}  // namespace ellgen
