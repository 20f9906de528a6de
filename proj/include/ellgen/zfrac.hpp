#pragma once

#include <map>
#include <optional>
#include <string>

#include "ellgen/laurent.hpp"

namespace ellgen {

/// Exact scalar for symbolic-z arithmetic: a Laurent polynomial over Q
/// divided by a product of factors a_m = z^{m/2} - z^{-m/2} (m > 0).
///
/// These are exactly the denominators produced by fixed-point contributions
/// 1/(e^{pi i (x + m t)} - e^{-pi i (x + m t)}). Zero testing is exact because
/// each a_m is a non-zero-divisor.
class ZFrac {
 public:
  using Poly = Laurent<Rat>;
  using Den = std::map<int, int>;  // m -> power

  ZFrac() = default;
  ZFrac(long c) : num_(Rat(c)) {}  // NOLINT: integer literals are scalars
  ZFrac(const Rat& c) : num_(c) {}  // NOLINT
  explicit ZFrac(Poly num, Den den = {});

  /// z^{half_exp/2}.
  static ZFrac z_power(int half_exp) { return ZFrac(Poly::monomial(half_exp, Rat(1))); }
  /// a_m = z^{m/2} - z^{-m/2}.
  static Poly denominator_factor(int m);

  const Poly& numerator() const { return num_; }
  const Den& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  ZFrac& operator+=(const ZFrac& o);
  ZFrac& operator-=(const ZFrac& o) { return *this += -o; }
  ZFrac& operator*=(const ZFrac& o);
  ZFrac& operator/=(const ZFrac& o) { return *this *= o.inverse(); }
  friend ZFrac operator+(ZFrac a, const ZFrac& b) { return a += b; }
  friend ZFrac operator-(ZFrac a, const ZFrac& b) { return a -= b; }
  friend ZFrac operator*(ZFrac a, const ZFrac& b) { return a *= b; }
  friend ZFrac operator/(ZFrac a, const ZFrac& b) { return a /= b; }
  friend ZFrac operator-(const ZFrac& a) { return ZFrac(-a.num_, a.den_); }
  friend bool operator==(const ZFrac& a, const ZFrac& b) { return (a - b).is_zero(); }

  /// Throws NotInvertible unless the numerator is c * z^e * (product of a_m).
  ZFrac inverse() const;

  /// The Laurent polynomial this element equals, if the denominator cancels.
  std::optional<Poly> to_laurent() const;

  Complex evaluate(Complex zhalf) const;
  Complex evaluate_at_t(Complex t) const { return evaluate(std::exp(Complex(0, kPi) * t)); }

  std::string to_string() const;

 private:
  void cancel();

  Poly num_;
  Den den_;
};

inline bool is_zero(const ZFrac& x) { return x.is_zero(); }
inline ZFrac one_like(const ZFrac&) { return ZFrac(1); }
inline ZFrac zero_like(const ZFrac&) { return ZFrac(0); }
inline ZFrac inverse(const ZFrac& x) { return x.inverse(); }
inline std::string to_text(const ZFrac& x) { return x.to_string(); }
template <>
inline ZFrac from_rat<ZFrac>(const Rat& x) {
  return ZFrac(x);
}

}  // namespace ellgen
