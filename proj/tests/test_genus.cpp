#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellgen/genus.hpp"

using namespace ellgen;

namespace {

OperatorSpec op(OpKind kind, int j = 1) {
  OperatorSpec s;
  s.kind = kind;
  s.j = j;
  if (s.has_beta()) {
    s.beta = Rat(1, 2);
    s.N = 2;
  }
  return s;
}

OperatorSpec loop_op(const FixedPointModel& m) {
  OperatorSpec s = op(OpKind::Loop);
  s.table = level_one_table(1, m.l(), Rat(4));
  return s;
}

NilPoly<Complex> at_tau(const NumericSeries& s, Complex tau) {
  NilPoly<Complex> acc;
  for (const auto& [n, c] : s.terms())
    acc += c.scaled(std::exp(Complex(0.0, 2.0 * kPi) * tau * (static_cast<double>(n) / s.den())));
  return acc;
}

double distance(const NilPoly<Complex>& a, const NilPoly<Complex>& b) {
  const NilPoly<Complex> diff = a - b;
  double d = 0.0;
  for (const auto& [m, c] : diff.terms()) d = std::max(d, std::abs(c));
  return d;
}

double size_of(const NilPoly<Complex>& a) {
  double d = 0.0;
  for (const auto& [m, c] : a.terms()) d = std::max(d, std::abs(c));
  return d;
}

}  // namespace

TEST_CASE("theta assembly matches the bundle expansion per component through q^2") {
  struct Case {
    const char* model;
    OperatorSpec spec;
  };
  const std::vector<Case> cases{
      {"s2", op(OpKind::Witten)},          {"s2", op(OpKind::F1)},
      {"s2-v", op(OpKind::F1)},            {"s2-v", op(OpKind::Fj, 2)},
      {"s2-v2", op(OpKind::Fj, 3)},        {"s2-spinc", op(OpKind::F1)},
      {"s2-spinc", op(OpKind::F1Beta)},    {"s2xs2", op(OpKind::Witten)},
      {"cp3", op(OpKind::Witten)},         {"cp3", op(OpKind::F1)},
      {"cp3-v", op(OpKind::F1)},           {"cp3-v", op(OpKind::Fj, 2)},
      {"hirzebruch", op(OpKind::Witten)},  {"hirzebruch", op(OpKind::F1)},
      {"hirzebruch", op(OpKind::Fj, 3)},   {"hirzebruch-spinc", op(OpKind::F1)},
      {"hirzebruch-spinc", op(OpKind::F1Beta)},
  };
  for (const auto& c : cases) {
    const auto m = builtin_model(c.model);
    for (int i = 0; i < static_cast<int>(m.components.size()); ++i) {
      INFO(c.model << " " << op_name(c.spec.kind) << " j=" << c.spec.j << " component " << i);
      CHECK(genus_symbolic(m, c.spec, Rat(2), i) == oracle_genus(m, c.spec, Rat(2), i));
    }
  }
  for (const char* name : {"s2-v", "cp3-v", "hirzebruch"}) {
    const auto m = builtin_model(name);
    for (int i = 0; i < static_cast<int>(m.components.size()); ++i)
      CHECK(genus_symbolic(m, loop_op(m), Rat(2), i) == oracle_genus(m, loop_op(m), Rat(2), i));
  }
}

TEST_CASE("component contributions are nontrivial") {
  const auto m = builtin_model("cp3-v");
  const auto s = genus_symbolic(m, op(OpKind::Fj, 2), Rat(1), 0);
  CHECK_FALSE(s.coefficient(Rat(1, 2)).is_zero());
}

TEST_CASE("witten stack vanishes on S^2 and CP^3") {
  for (const char* name : {"s2", "cp3"}) {
    const auto g = genus_symbolic(builtin_model(name), op(OpKind::Witten), Rat(3));
    CHECK(g.terms().empty());
    CHECK(g.trunc() == Rat(3));
  }
}

TEST_CASE("index character reproduces holomorphic Lefschetz numbers on CP^1") {
  const auto m = builtin_model("s2-spinc");
  const AlgebraPtr& pt = m.base;
  std::vector<NilPoly<ZFrac>> ones, tangent;
  for (const auto& c : m.components) {
    ones.emplace_back(c.algebra, ZFrac(1));
    tangent.emplace_back(c.algebra, ZFrac::z_power(2 * c.normal.front().weight));
  }
  CHECK(index_character(m, ones, true) == NilPoly<ZFrac>(pt, ZFrac(1)));
  const NilPoly<ZFrac> h0 = NilPoly<ZFrac>(pt, ZFrac::z_power(-2) + ZFrac(1) + ZFrac::z_power(2));
  CHECK(index_character(m, tangent, true) == h0);
}

TEST_CASE("bundle expansion low-order terms") {
  const auto m = builtin_model("s2");
  const auto e = bundle_expand(m, op(OpKind::Witten), 0, Rat(2));
  const AlgebraPtr& alg = m.components[0].algebra;
  CHECK(e.coefficient(Rat(0)) == NilPoly<ZFrac>(alg, ZFrac(1)));
  CHECK(e.coefficient(Rat(1)) == NilPoly<ZFrac>(alg, ZFrac::z_power(2) + ZFrac::z_power(-2) - ZFrac(2)));
}

TEST_CASE("character tables enter linearly") {
  const auto m = builtin_model("s2-v");
  OperatorSpec a = loop_op(m), b = a;
  b.table = a.table.scaled(Rat(3));
  const auto ga = genus_symbolic(m, a, Rat(2), 0);
  const auto gb = genus_symbolic(m, b, Rat(2), 0);
  CHECK(gb == ga.map_coeffs([](const NilPoly<ZFrac>& x) { return x.scaled(ZFrac(3)); }));
}

TEST_CASE("numeric backends agree with the symbolic series") {
  const Complex t(0.23, 0.05), tau(0.1, 2.5);
  const Complex zhalf = std::exp(Complex(0.0, kPi) * t);
  for (const char* name : {"cp3-v", "hirzebruch", "s2-spinc"}) {
    const auto m = builtin_model(name);
    for (OpKind kind : {OpKind::F1, OpKind::Fj}) {
      const OperatorSpec s = op(kind, 2);
      for (int i = 0; i < static_cast<int>(m.components.size()); ++i) {
        INFO(name << " component " << i);
        const auto sym = genus_symbolic(m, s, Rat(3), i).map_coeffs(
            [&](const NilPoly<ZFrac>& x) { return x.map_coeffs([&](const ZFrac& c) { return c.evaluate(zhalf); }); });
        const auto num = genus_numeric(m, s, t, Rat(3), i);
        CHECK(distance(at_tau(sym, tau), at_tau(num, tau)) < 1e-9 * (1.0 + size_of(at_tau(num, tau))));
        const auto direct = genus_direct(m, s, t, tau, i);
        CHECK(distance(direct, at_tau(num, tau)) < 1e-9 * (1.0 + size_of(direct)));
      }
    }
  }
}

TEST_CASE("beta series with c = 0 agrees with direct evaluation") {
  const auto m = builtin_model("s2-spinc");
  const Complex t(0.31, -0.02), tau(-0.2, 2.2);
  const auto s = op(OpKind::F1Beta);
  for (int i = 0; i < 2; ++i) {
    const auto num = genus_numeric(m, s, t, Rat(3), i);
    CHECK(distance(genus_direct(m, s, t, tau, i), at_tau(num, tau)) < 1e-9);
  }
}

TEST_CASE("poles, spin requirements and unsupported twists are reported") {
  CHECK_THROWS_AS(genus_direct(builtin_model("s2"), op(OpKind::Witten), Complex(0.0, 0.0), Complex(0.0, 1.0)), PoleError);
  CHECK_THROWS_AS(genus_numeric(builtin_model("s2"), op(OpKind::Witten), Complex(1.0, 0.0), Rat(2)), PoleError);
  CHECK_THROWS_AS(genus_numeric(builtin_model("s2-v"), op(OpKind::F1), Complex(0.25, 0.0), Rat(2)), PoleError);
  CHECK_NOTHROW(genus_numeric(builtin_model("s2-v"), op(OpKind::F1), Complex(0.25, 0.01), Rat(2)));
  CHECK_THROWS_AS(genus_symbolic(builtin_model("s2-spinc"), op(OpKind::Witten), Rat(1)), ModelError);
  OperatorSpec a = op(OpKind::FjBetaA, 1);
  a.A << 1, 0, 1, 1;
  CHECK_THROWS_AS(genus_symbolic(builtin_model("s2-spinc"), a, Rat(1)), DomainError);
  CHECK_NOTHROW(genus_direct(builtin_model("s2-spinc"), a, Complex(0.2, 0.01), Complex(0.1, 1.3)));
}
