#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ellgen/nilpoly.hpp"
#include "ellgen/qseries.hpp"
#include "ellgen/zfrac.hpp"

namespace ellgen {

/// Theta: sin-type with (1 - q^n w^{+-1}); Theta1: cos-type with (1 + q^n w^{+-1});
/// Theta2: (1 - q^{n-1/2} w^{+-1}); Theta3: (1 + q^{n-1/2} w^{+-1}). All carry
/// c(q) = prod (1 - q^n); Theta and Theta1 also carry 2 q^{1/8}.
enum class ThetaKind { Theta, Theta1, Theta2, Theta3 };

std::string kind_name(ThetaKind k);
ThetaKind parse_theta_kind(const std::string& s);

// ---------------------------------------------------------------- numeric

/// Truncated product at (v, tau); the product runs until the remaining
/// factors differ from 1 by less than 1e-17.
Complex theta_numeric(ThetaKind kind, Complex v, Complex tau);
/// d theta / dv at 0 = 2 pi q^{1/8} c(q)^3.
Complex theta_prime_zero(Complex tau);

/// theta_kind(v0 + X / 2 pi i) for a nilpotent X with zero constant term.
NilPoly<Complex> theta_numeric(ThetaKind kind, Complex v0, const NilPoly<Complex>& X, Complex tau);
/// theta(Y / 2 pi i) / Y, a unit in the nilpotent algebra.
NilPoly<Complex> theta_over_arg_numeric(const NilPoly<Complex>& Y, Complex tau);

/// sinh(Y/2) / (Y/2).
template <class K>
NilPoly<K> sinhc_half(const NilPoly<K>& Y) {
  NilPoly<K> result(Y.algebra(), K(1));
  const NilPoly<K> y2 = Y * Y;
  NilPoly<K> power(Y.algebra(), K(1));
  Rat fact = 1;
  for (int j = 1;; ++j) {
    power = power * y2;
    if (power.is_zero()) break;
    fact *= Rat(2 * j) * Rat(2 * j + 1) * 4;  // (2j+1)! 4^j
    result += scale_rat(power, Rat(1) / fact);
  }
  return result;
}

/// |theta(v + a tau + b) - factor * theta(v)| with the quasi-period factor
/// (-1)^{a+b} q^{-a^2/2} e^{-2 pi i a v} (Theta) or (-1)^b ... (Theta1).
double check_elliptic_shift(ThetaKind kind, Complex v, Complex tau, int a, int b);

/// Modular word over the letters 'S', 'T' and 't' (= T^{-1}); the word acts
/// as the matrix product read left to right.
struct ModularAction {
  ThetaKind target;  // kind appearing on the right-hand side
  Complex factor;
  Complex v_image, tau_image;
};
ModularAction modular_action(ThetaKind kind, const std::string& word, Complex v, Complex tau);
/// Relative residual |lhs - rhs| / max(1, |rhs|) of the transformation law.
double check_modular(ThetaKind kind, Complex v, Complex tau, const std::string& word);
Eigen::Matrix2i word_matrix(const std::string& word);

// ---------------------------------------------------------------- formal

/// (2 pi i)^two_pi_i * i^i_power.
struct Prefactor {
  int two_pi_i = 0;
  int i_power = 0;

  Prefactor operator*(const Prefactor& o) const { return {two_pi_i + o.two_pi_i, ((i_power + o.i_power) % 4 + 4) % 4}; }
  Prefactor inverse() const { return {-two_pi_i, ((4 - i_power) % 4 + 4) % 4}; }
  Prefactor pow(int e) const { return {two_pi_i * e, ((i_power * e) % 4 + 4) % 4}; }
  bool is_rational() const { return two_pi_i == 0 && i_power % 2 == 0; }
  int sign() const { return i_power == 2 ? -1 : 1; }  // when rational
  Complex value() const;
  friend bool operator==(const Prefactor& a, const Prefactor& b) {
    return a.two_pi_i == b.two_pi_i && (a.i_power - b.i_power) % 4 == 0;
  }
};

/// prefactor * series.
template <class K>
struct Formal {
  Prefactor pre;
  QSeries<NilPoly<K>> series;

  Formal operator*(const Formal& o) const { return {pre * o.pre, series * o.series}; }
  Formal& operator*=(const Formal& o) { return *this = *this * o; }
  Formal inverse() const { return {pre.inverse(), series.inverse()}; }
  Formal pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Formal r{Prefactor{}, QSeries<NilPoly<K>>::constant(NilPoly<K>(series.terms().empty() ? point_algebra() : series.terms().begin()->second.algebra(), K(1)), series.trunc())};
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }
};

/// Symbolic circle variable: coefficients in ZFrac, z^{1/2} kept formal.
struct SymbolicZ {
  using K = ZFrac;
  K z_half(int e) const { return ZFrac::z_power(e); }
  /// e^{pi i beta} = value * i^{power}; only beta in (1/2)Z is exact.
  std::pair<K, int> phase(const Rat& beta) const;
};

/// Numeric circle variable at a fixed t: z^{1/2} = e^{pi i t}.
struct NumericZ {
  using K = Complex;
  Complex t;
  K z_half(int e) const { return std::exp(Complex(0.0, kPi * e) * t); }
  std::pair<K, int> phase(const Rat& beta) const { return {std::exp(Complex(0.0, kPi * to_double(beta))), 0}; }
};

/// The argument x + l t + beta, with x a nilpotent class in the variable X = 2 pi i x.
struct ThetaArg {
  int z_weight = 0;
  NilPoly<Rat> nil;
  Rat shift = 0;
};

template <class K>
NilPoly<K> to_ring(const NilPoly<Rat>& p) {
  return convert_coeffs<K>(p, [](const Rat& x) { return from_rat<K>(x); });
}

namespace detail {

// prod_{n} (1 + sign q^{n - off} w)(1 + sign q^{n - off} / w) up to trunc, w, 1/w given.
template <class K>
QSeries<NilPoly<K>> theta_products(const NilPoly<K>& w, const NilPoly<K>& w_inv, int sign, const Rat& offset, const Rat& trunc) {
  const NilPoly<K> one(w.algebra(), K(1));
  QSeries<NilPoly<K>> r = QSeries<NilPoly<K>>::constant(one, trunc);
  const NilPoly<K> cw = sign > 0 ? w : -w;
  const NilPoly<K> cwi = sign > 0 ? w_inv : -w_inv;
  for (long n = 1; Rat(n) - offset < trunc; ++n) {
    r *= binomial_factor(cw, Rat(n) - offset, 1, one, trunc);
    r *= binomial_factor(cwi, Rat(n) - offset, 1, one, trunc);
  }
  return r;
}

}  // namespace detail

/// Exact q-expansion of theta_kind(arg). Theta carries the prefactor i^3
/// (theta = -i * q^{1/8} c (w^{1/2} - w^{-1/2}) prod ...).
template <class Z>
Formal<typename Z::K> theta_qexp(ThetaKind kind, const ThetaArg& arg, const Z& ctx, const Rat& trunc) {
  using K = typename Z::K;
  if (trunc <= 0) throw DomainError("theta_qexp: truncation must be positive");
  if (!arg.nil.algebra()) throw DomainError("theta_qexp: argument has no algebra");
  if (!is_zero(arg.nil.constant_term())) throw DomainError("theta_qexp: nilpotent part has a constant term");
  const AlgebraPtr& alg = arg.nil.algebra();
  const NilPoly<K> X = to_ring<K>(arg.nil);
  const NilPoly<K> half_x = scale_rat(X, Rat(1, 2));
  const auto [p, s] = ctx.phase(arg.shift);
  const K pinv = inverse(p);
  const int sigma = (s % 2 == 0) ? 1 : -1;  // i^{2s}
  // E0 = z^{l/2} e^{X/2}; E = p i^s E0
  const NilPoly<K> E0 = half_x.exp().scaled(ctx.z_half(arg.z_weight));
  const NilPoly<K> E0_inv = (-half_x).exp().scaled(ctx.z_half(-arg.z_weight));
  const NilPoly<K> w = (E0 * E0).scaled(K(p * p * K(sigma)));
  const NilPoly<K> w_inv = (E0_inv * E0_inv).scaled(K(pinv * pinv * K(sigma)));
  const NilPoly<K> one(alg, K(1));

  Formal<K> out;
  switch (kind) {
    case ThetaKind::Theta:
    case ThetaKind::Theta1: {
      const Rat inner = trunc - Rat(1, 8);
      const int eps = kind == ThetaKind::Theta ? -1 : 1;
      // E -/+ E^{-1} = i^s (p E0 -/+ sigma p^{-1} E0^{-1})
      NilPoly<K> lead = E0.scaled(p) + E0_inv.scaled(K(pinv * K(eps * sigma)));
      if (inner > 0) {
        QSeries<NilPoly<K>> body = euler_function(one, inner) * detail::theta_products(w, w_inv, eps, Rat(0), inner);
        out.series = body.scaled(lead).shifted(Rat(1, 8));
      } else {
        out.series = QSeries<NilPoly<K>>::zero(trunc);
      }
      out.pre = Prefactor{0, (s + (kind == ThetaKind::Theta ? 3 : 0)) % 4};
      break;
    }
    case ThetaKind::Theta2:
    case ThetaKind::Theta3: {
      const int eps = kind == ThetaKind::Theta2 ? -1 : 1;
      out.series = euler_function(one, trunc) * detail::theta_products(w, w_inv, eps, Rat(1, 2), trunc);
      break;
    }
  }
  return out;
}

/// theta'(0) = (2 pi i) * i^3 * q^{1/8} c(q)^3.
template <class K>
Formal<K> theta_prime_zero_qexp(const AlgebraPtr& alg, const Rat& trunc) {
  const NilPoly<K> one(alg, K(1));
  const Rat inner = trunc - Rat(1, 8);
  QSeries<NilPoly<K>> c = inner > 0 ? euler_function(one, inner) : QSeries<NilPoly<K>>::zero(Rat(0));
  Formal<K> out;
  out.series = (c * c * c).shifted(Rat(1, 8));
  out.pre = Prefactor{1, 3};
  return out;
}

/// theta(Y / 2 pi i) / Y = i^3 * q^{1/8} c(q) S(Y) prod (1 - q^n e^Y)(1 - q^n e^{-Y}).
template <class K>
Formal<K> theta_over_arg_qexp(const NilPoly<Rat>& Y, const Rat& trunc) {
  if (!is_zero(Y.constant_term())) throw DomainError("theta_over_arg_qexp: argument has a constant term");
  const NilPoly<K> y = to_ring<K>(Y);
  const NilPoly<K> one(Y.algebra(), K(1));
  const Rat inner = trunc - Rat(1, 8);
  Formal<K> out;
  out.pre = Prefactor{0, 3};
  if (inner <= 0) {
    out.series = QSeries<NilPoly<K>>::zero(trunc);
    return out;
  }
  QSeries<NilPoly<K>> body = euler_function(one, inner) * detail::theta_products(y.exp(), (-y).exp(), -1, Rat(0), inner);
  out.series = body.scaled(sinhc_half(y)).shifted(Rat(1, 8));
  return out;
}

/// Scalar value of a formal result whose coefficients are constants, at (t, tau).
Complex evaluate_formal(const Formal<ZFrac>& f, Complex t, Complex tau);
Complex evaluate_formal(const Formal<Complex>& f, Complex tau);

// ---------------------------------------------------------------- lattice

/// Positive-definite rational Gram matrix in generator coordinates.
struct Lattice {
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> gram;
  Eigen::MatrixXd gram_double() const;
};

struct LatticeThetaResult {
  Complex value;
  double tail_bound;
  long points;
};

/// e^{2 pi i m u} sum over gamma in M + lambda_bar / m of
/// e^{pi i m tau (gamma,gamma) + 2 pi i m (gamma, z)}; coordinates are in the
/// generator basis. Shells are added until |q|^{m R/2} * count < tol / 10.
LatticeThetaResult lattice_theta(const Lattice& lat, const std::vector<Rat>& lambda_bar, int m, const Eigen::VectorXcd& z,
                                 Complex tau, Complex u, double tol = 1e-13);

struct CharAnomalyInput {
  int level = 0;
  Rat norm_lambda_plus_2rho_lambda = 0;
  int dual_coxeter = 1;
  int dim_g = 1;
};

/// (Lambda + 2 rho, Lambda) / (2 (m + h)) - m dim g / (24 (m + h)).
Rat char_anomaly(const CharAnomalyInput& in);

}  // namespace ellgen
