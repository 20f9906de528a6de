#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ellgen/error.hpp"

namespace ellgen {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }

inline Rat one_like(const Rat&) { return Rat(1); }
inline Complex one_like(const Complex&) { return Complex(1.0, 0.0); }
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Complex zero_like(const Complex&) { return Complex(0.0, 0.0); }

inline Rat inverse(const Rat& x) {
  if (x == 0) throw NotInvertible("division by zero rational");
  return Rat(1) / x;
}

inline Complex inverse(const Complex& x) {
  if (x == Complex(0.0, 0.0)) throw NotInvertible("division by complex zero");
  return 1.0 / x;
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

/// "p" or "p/q" in lowest terms.
std::string to_text(const Rat& x);
std::string to_text(const Complex& x);

/// Accepts "p", "-p", "p/q", and finite decimals such as "0.25".
Rat parse_rat(const std::string& s);

inline Rat rat(long num, long den = 1) { return Rat(num) / Rat(den); }

inline BigInt numerator_of(const Rat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const Rat& x) { return boost::multiprecision::denominator(x); }

/// Scalar embedding used by generic code: Rat -> K.
template <class K>
K from_rat(const Rat& x);

template <>
inline Rat from_rat<Rat>(const Rat& x) {
  return x;
}
template <>
inline Complex from_rat<Complex>(const Rat& x) {
  return Complex(to_double(x), 0.0);
}

/// Late-bound (ADL) spellings for use inside templates over coefficient rings.
namespace ring {
template <class T>
bool zero(const T& x) {
  return is_zero(x);
}
template <class T>
T inv(const T& x) {
  return inverse(x);
}
}  // namespace ring

/// x * r for scalar rings; structured rings overload this.
template <class K>
K scale_rat(const K& x, const Rat& r) {
  return K(x * from_rat<K>(r));
}

inline double magnitude(const Rat& x) { return std::abs(to_double(x)); }
inline double magnitude(const Complex& x) { return std::abs(x); }

}  // namespace ellgen
