#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ellgen/theta.hpp"

using namespace ellgen;

namespace {

const Complex I(0.0, 1.0);

Complex qp(Complex tau, double e) { return std::exp(2.0 * kPi * I * tau * e); }

// Fourier-series oracle, independent of the product formulas.
Complex theta_sum(ThetaKind kind, Complex v, Complex tau) {
  Complex s(0.0, 0.0);
  for (int n = -40; n <= 40; ++n) {
    switch (kind) {
      case ThetaKind::Theta: {
        const double h = n + 0.5;
        s += std::pow(-1.0, n) * qp(tau, h * h / 2.0) * std::exp(2.0 * kPi * I * h * v) / I;
        break;
      }
      case ThetaKind::Theta1: {
        const double h = n + 0.5;
        s += qp(tau, h * h / 2.0) * std::exp(2.0 * kPi * I * h * v);
        break;
      }
      case ThetaKind::Theta2:
        s += std::pow(-1.0, n) * qp(tau, n * n / 2.0) * std::exp(2.0 * kPi * I * double(n) * v);
        break;
      case ThetaKind::Theta3:
        s += qp(tau, n * n / 2.0) * std::exp(2.0 * kPi * I * double(n) * v);
        break;
    }
  }
  return s;
}

const ThetaKind kAll[] = {ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3};

}  // namespace

TEST_CASE("product formula against Fourier series") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.5, 2.0), vi(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex tau(re(rng), im(rng)), v(re(rng), vi(rng));
    for (ThetaKind k : kAll) CHECK(std::abs(theta_numeric(k, v, tau) - theta_sum(k, v, tau)) < 1e-12);
  }
  CHECK(std::abs(theta_numeric(ThetaKind::Theta, 0.0, I)) == 0.0);
  const Complex half = theta_numeric(ThetaKind::Theta, 0.5, I);
  CHECK(std::abs(half.imag()) < 1e-15);
  CHECK(half.real() > 0.1);
}

TEST_CASE("theta prime at zero") {
  const double h = 1e-6;
  const Complex fd = (theta_numeric(ThetaKind::Theta, h, I) - theta_numeric(ThetaKind::Theta, -h, I)) / (2.0 * h);
  CHECK(std::abs(theta_prime_zero(I) - fd) < 1e-8);
  CHECK(std::abs(theta_prime_zero(Complex(0, 8)) / qp(Complex(0, 8), 1.0 / 8.0) - 2.0 * kPi) < 1e-9);
  const auto formal = theta_prime_zero_qexp<ZFrac>(point_algebra(), Rat(12));
  CHECK(std::abs(evaluate_formal(formal, 0.0, I) - theta_prime_zero(I)) < 1e-12);
}

TEST_CASE("parity and zero locus") {
  const Complex tau(0.3, 1.1), v(0.21, 0.07);
  CHECK(std::abs(theta_numeric(ThetaKind::Theta, -v, tau) + theta_numeric(ThetaKind::Theta, v, tau)) < 1e-12);
  for (ThetaKind k : {ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3})
    CHECK(std::abs(theta_numeric(k, -v, tau) - theta_numeric(k, v, tau)) < 1e-12);
  for (int n = -2; n <= 2; ++n)
    for (int m = -1; m <= 1; ++m) CHECK(std::abs(theta_numeric(ThetaKind::Theta, double(n) + double(m) * tau, tau)) < 1e-10);
}

TEST_CASE("formal and numeric backends agree") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.5, 2.0), vi(-0.2, 0.2);
  const ThetaArg arg{1, NilPoly<Rat>(point_algebra()), 0};
  for (ThetaKind k : kAll) {
    const auto formal = theta_qexp(k, arg, SymbolicZ{}, Rat(10));
    for (int trial = 0; trial < 8; ++trial) {
      const Complex tau(re(rng), im(rng)), v(re(rng), vi(rng));
      CHECK(std::abs(evaluate_formal(formal, v, tau) - theta_numeric(k, v, tau)) < 1e-10);
    }
  }
  const auto t1 = theta_qexp(ThetaKind::Theta1, arg, SymbolicZ{}, Rat(12));
  CHECK(std::abs(evaluate_formal(t1, 0.3, I) - theta_numeric(ThetaKind::Theta1, 0.3, I)) < 1e-12);
  const auto t0 = theta_qexp(ThetaKind::Theta, ThetaArg{0, NilPoly<Rat>(point_algebra()), 0}, SymbolicZ{}, Rat(4));
  CHECK(t0.series.is_zero());
}

TEST_CASE("triple product for theta3 at z=1 exactly") {
  const auto f = theta_qexp(ThetaKind::Theta3, ThetaArg{0, NilPoly<Rat>(point_algebra()), 0}, SymbolicZ{}, Rat(10));
  QSeries<Rat> expect(2, 20);
  for (int n = -4; n <= 4; ++n) expect.add_term(n * n, Rat(1));
  const QSeries<Rat> got = f.series.map_coeffs([](const NilPoly<ZFrac>& c) {
    auto l = c.constant_term().to_laurent();
    REQUIRE(l.has_value());
    return l->coeff(0);
  });
  CHECK(got == expect);
  CHECK(f.pre == Prefactor{});
}

TEST_CASE("half-period shifts in exact mode") {
  // theta(v + 1/2) = theta1(v) and theta2(v + 1/2) = theta3(v)
  const auto a = theta_qexp(ThetaKind::Theta, ThetaArg{1, NilPoly<Rat>(point_algebra()), Rat(1, 2)}, SymbolicZ{}, Rat(6));
  const auto b = theta_qexp(ThetaKind::Theta1, ThetaArg{1, NilPoly<Rat>(point_algebra()), 0}, SymbolicZ{}, Rat(6));
  CHECK(a.pre == b.pre);
  CHECK(a.series == b.series);
  const auto c = theta_qexp(ThetaKind::Theta2, ThetaArg{2, NilPoly<Rat>(point_algebra()), Rat(1, 2)}, SymbolicZ{}, Rat(6));
  const auto d = theta_qexp(ThetaKind::Theta3, ThetaArg{2, NilPoly<Rat>(point_algebra()), 0}, SymbolicZ{}, Rat(6));
  CHECK(c.series == d.series);
  CHECK_THROWS_AS(theta_qexp(ThetaKind::Theta, ThetaArg{1, NilPoly<Rat>(point_algebra()), Rat(1, 3)}, SymbolicZ{}, Rat(2)), DomainError);
}

TEST_CASE("denominator series inverts exactly") {
  const auto den = theta_qexp(ThetaKind::Theta, ThetaArg{1, NilPoly<Rat>(point_algebra()), 0}, SymbolicZ{}, Rat(10));
  const auto inv = den.inverse();
  const auto prod = den * inv;
  CHECK(prod.pre == Prefactor{});
  CHECK(prod.series == QSeries<NilPoly<ZFrac>>::constant(NilPoly<ZFrac>(point_algebra(), ZFrac(1)), prod.series.trunc()));
}

TEST_CASE("nilpotent arguments match Taylor coefficients") {
  auto alg = make_algebra({{"h", 2}}, 4);
  const auto h = NilPoly<Complex>::variable(alg, "h");
  const Complex tau(0.1, 0.9), v0(0.23, 0.05);
  const double e = 1e-4;
  for (ThetaKind k : kAll) {
    const auto th = theta_numeric(k, v0, h, tau);
    const Complex f0 = theta_numeric(k, v0, tau);
    const Complex fp = theta_numeric(k, v0 + e, tau), fm = theta_numeric(k, v0 - e, tau);
    CHECK(std::abs(th.coeff({0}) - f0) < 1e-12);
    CHECK(std::abs(th.coeff({1}) - (fp - fm) / (2.0 * e) / (2.0 * kPi * I)) < 1e-6);
    CHECK(std::abs(th.coeff({2}) - (fp - 2.0 * f0 + fm) / (e * e) / (2.0 * std::pow(2.0 * kPi * I, 2))) < 1e-4);
  }
  const auto ratio = theta_over_arg_numeric(h, tau);
  CHECK(std::abs(ratio.coeff({0}) - theta_prime_zero(tau) / (2.0 * kPi * I)) < 1e-12);
  CHECK(std::abs((ratio * h - theta_numeric(ThetaKind::Theta, 0.0, h, tau)).coeff({2})) < 1e-12);
  // formal counterpart
  auto ralg = make_algebra({{"h", 2}}, 4);
  const auto f = theta_over_arg_qexp<Complex>(NilPoly<Rat>::variable(ralg, "h"), Rat(12));
  const Complex f1 = f.pre.value() * f.series.evaluate(tau, [](const NilPoly<Complex>& c) { return c.coeff({1}); });
  CHECK(std::abs(f1 - ratio.coeff({1})) < 1e-10);
}

TEST_CASE("elliptic shifts") {
  const Complex tau(0.2, 1.0), v(0.3, 0.1);
  CHECK(check_elliptic_shift(ThetaKind::Theta, v, tau, 0, 0) == 0.0);
  for (ThetaKind k : {ThetaKind::Theta, ThetaKind::Theta1})
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) CHECK(check_elliptic_shift(k, v, tau, a, b) < 1e-9);
  CHECK(std::abs(theta_numeric(ThetaKind::Theta, v + 1.0, tau) + theta_numeric(ThetaKind::Theta, v, tau)) < 1e-10);
  CHECK_THROWS_AS(check_elliptic_shift(ThetaKind::Theta2, v, tau, 1, 0), DomainError);
}

TEST_CASE("modular transformations") {
  for (ThetaKind k : kAll) {
    CHECK(check_modular(k, 0.2, I, "S") < 1e-9);
    CHECK(check_modular(k, 0.2, I, "T") < 1e-10);
    CHECK(check_modular(k, 0.2, I, "tT") < 1e-12);
  }
  CHECK(modular_action(ThetaKind::Theta1, "S", 0.2, I).target == ThetaKind::Theta2);
  CHECK(modular_action(ThetaKind::Theta3, "T", 0.2, I).target == ThetaKind::Theta2);
  CHECK(std::abs(theta_numeric(ThetaKind::Theta2, 0.0, Complex(0.1, 1.0)) - theta_numeric(ThetaKind::Theta3, 0.0, Complex(1.1, 1.0))) < 1e-12);
  std::mt19937 rng(3);
  const std::string letters = "STt";
  for (int trial = 0; trial < 20; ++trial) {
    std::string w;
    for (int i = 0; i < 1 + trial % 4; ++i) w += letters[rng() % 3];
    for (ThetaKind k : kAll) CHECK(check_modular(k, Complex(0.17, 0.03), Complex(0.05, 1.3), w) < 1e-9);
  }
  CHECK(word_matrix("ST") == (Eigen::Matrix2i() << 0, -1, 1, 1).finished());
}

TEST_CASE("lattice theta") {
  const Lattice a1{{"alpha"}, {{Rat(2)}}};
  const Eigen::VectorXcd z0 = Eigen::VectorXcd::Zero(1);
  const Complex tau(0.0, 0.8);
  const auto r = lattice_theta(a1, {Rat(0)}, 1, z0, tau, 0.0);
  Complex direct(0.0, 0.0);
  for (int n = -30; n <= 30; ++n) direct += qp(tau, double(n * n));
  CHECK(std::abs(r.value - direct) < 1e-12);
  CHECK(std::abs(r.value.imag()) < 1e-15);
  Eigen::VectorXcd z(1);
  z << Complex(0.13, 0.02);
  const Complex base = lattice_theta(a1, {Rat(1)}, 1, z, tau, 0.0).value;
  Eigen::VectorXcd z1 = z;
  z1(0) += 1.0;
  CHECK(std::abs(lattice_theta(a1, {Rat(1)}, 1, z1, tau, 0.0).value - base) < 1e-12);
  Eigen::VectorXcd zt = z;
  zt(0) += tau;
  // (alpha, alpha) = 2, (alpha, z) = 2 z
  const Complex factor = std::exp(-kPi * I * tau * 2.0 - 2.0 * kPi * I * 2.0 * z(0));
  CHECK(std::abs(lattice_theta(a1, {Rat(0)}, 1, zt, tau, 0.0).value - factor * lattice_theta(a1, {Rat(0)}, 1, z, tau, 0.0).value) < 1e-11);
  const Lattice bad{{"a"}, {{Rat(-1)}}};
  CHECK_THROWS_AS(lattice_theta(bad, {Rat(0)}, 1, z0, tau, 0.0), DomainError);
}

TEST_CASE("character anomaly") {
  CHECK(char_anomaly({0, Rat(0), 2, 3}) == 0);
  CHECK(char_anomaly({1, Rat(0), 2, 3}) == rat(-1, 24));
  const Rat one = char_anomaly({1, Rat(0), 2, 3});
  CHECK(char_anomaly({1, Rat(0), 2, 6}) == one * 2);
}
