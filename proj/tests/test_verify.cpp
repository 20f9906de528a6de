#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "ellgen/verify.hpp"

using namespace ellgen;

namespace {

OperatorSpec op(const FixedPointModel& m, OpKind kind, int j = 1) {
  OperatorSpec s;
  s.kind = kind;
  s.j = j;
  if (kind == OpKind::Loop) s.table = level_one_table(1, m.l(), Rat(4));
  if (s.has_beta()) {
    s.beta = Rat(1, 2);
    s.N = 2;
  }
  return s;
}

RigidityOptions exact() { return {}; }
RigidityOptions numeric() {
  RigidityOptions o;
  o.mode = Mode::Numeric;
  return o;
}

}  // namespace

TEST_CASE("anomaly arithmetic") {
  const auto s2 = builtin_model("s2");
  const auto a = anomaly_n(s2, op(s2, OpKind::Witten));
  REQUIRE(a.consistent());
  CHECK(*a.global == Rat(-1));
  CHECK(a.n == std::vector<Rat>{Rat(-1), Rat(-1)});

  const auto cp3 = builtin_model("cp3");
  const auto b = anomaly_n(cp3, op(cp3, OpKind::Witten));
  CHECK_FALSE(b.consistent());
  CHECK(b.n == std::vector<Rat>{Rat(-14), Rat(-6), Rat(-6), Rat(-14)});
  const auto cp3b = builtin_model("cp3:0,1,2,4");
  CHECK_FALSE(anomaly_n(cp3b, op(cp3b, OpKind::Witten)).consistent());

  for (const char* name : {"s2-spinc", "s2-v", "hirzebruch", "hirzebruch-spinc", "cp3-v"}) {
    const auto m = builtin_model(name);
    const auto r = anomaly_n(m, op(m, OpKind::F1));
    INFO(name);
    REQUIRE(r.consistent());
    CHECK(*r.global == 0);
  }
  const auto h = builtin_model("hirzebruch");
  CHECK(*anomaly_n(h, op(h, OpKind::Loop)).global == 0);

  const auto bad = builtin_model("s2-v-shifted");
  const auto c = anomaly_n(bad, op(bad, OpKind::F1));
  CHECK_FALSE(c.consistent());
  CHECK(c.n == std::vector<Rat>{Rat(3), Rat(-1)});
}

TEST_CASE("rigidity of anomaly-free configurations") {
  struct Case {
    const char* model;
    OpKind kind;
    int j;
  };
  const std::vector<Case> cases{{"s2-v", OpKind::F1, 1},       {"s2-v", OpKind::Fj, 2},        {"s2-spinc", OpKind::F1, 1},
                                {"s2-spinc", OpKind::F1Beta, 1}, {"hirzebruch", OpKind::F1, 1},   {"hirzebruch", OpKind::Loop, 1},
                                {"hirzebruch-spinc", OpKind::F1, 1}, {"cp3-v", OpKind::Loop, 1}, {"cp3-v", OpKind::Fj, 3}};
  for (const auto& c : cases) {
    const auto m = builtin_model(c.model);
    const auto s = op(m, c.kind, c.j);
    INFO(c.model << " " << op_name(c.kind));
    CHECK(check_rigidity(m, s, Rat(2), exact()).constant);
    const auto v = check_rigidity(m, s, Rat(2), numeric());
    CHECK(v.constant);
    CHECK(v.fit_residual < 1e-8);
    CHECK(static_cast<int>(v.samples.size()) >= 2 * v.window + 1);
  }
  const auto sc = builtin_model("s2-spinc");
  const auto v = check_rigidity(sc, op(sc, OpKind::F1), Rat(2), exact());
  REQUIRE(v.entries.size() == 1);
  CHECK(v.entries[0].laurent == "2");
}

TEST_CASE("a perturbed weight breaks rigidity") {
  const auto m = builtin_model("s2-v-shifted");
  const auto s = op(m, OpKind::F1);
  const auto e = check_rigidity(m, s, Rat(2), exact());
  CHECK_FALSE(e.constant);
  REQUIRE_FALSE(e.entries.empty());
  CHECK(e.entries[0].laurent == "-1/2*z^(-1/2) + 1/2*z^(1/2)");
  const auto n = check_rigidity(m, s, Rat(2), numeric());
  CHECK_FALSE(n.constant);
  CHECK(n.entries[0].nonconstant == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("too few interpolation samples is an error") {
  const auto m = builtin_model("s2-v");
  RigidityOptions o = numeric();
  o.samples = 5;
  CHECK_THROWS_AS(check_rigidity(m, op(m, OpKind::F1), Rat(2), o), DomainError);
}

TEST_CASE("quasi-periodicity per component and in total") {
  for (const char* name : {"s2", "s2-v", "hirzebruch", "cp3-v", "s2-spinc"}) {
    const auto m = builtin_model(name);
    const auto s = op(m, m.is_spin() && m.l() == 0 ? OpKind::Witten : OpKind::F1);
    const auto rep = anomaly_n(m, s);
    for (int c = 0; c < static_cast<int>(m.components.size()); ++c) {
      INFO(name << " component " << c);
      const auto q = check_quasi_periodicity(m, s, rep.n[static_cast<std::size_t>(c)], {{2, 0}, {0, 2}, {-2, 2}, {0, 0}},
                                             default_samples(10), 1e-8, c);
      CHECK(q.pass);
      CHECK(q.residuals.size() == 40 * static_cast<std::size_t>(m.base->trunc_degree() / 2 + 1));
      // wrong index must be detected
      CHECK_FALSE(check_quasi_periodicity(m, s, rep.n[static_cast<std::size_t>(c)] + 1, {{2, 0}}, default_samples(4), 1e-8, c).pass);
    }
  }
  const auto b = builtin_model("s2-spinc");
  CHECK(check_quasi_periodicity(b, op(b, OpKind::F1Beta), Rat(0), {{4, 0}, {0, 4}}, default_samples(10), 1e-8).pass);
  CHECK_THROWS_AS(check_quasi_periodicity(b, op(b, OpKind::F1Beta), Rat(0), {{2, 0}}, default_samples(2), 1e-8), DomainError);
}

TEST_CASE("theta class bookkeeping under SL2") {
  CHECK(theta_class_after(1, word_matrix("S")) == 2);
  CHECK(theta_class_after(1, word_matrix("T")) == 1);
  CHECK(theta_class_after(1, word_matrix("St")) == 3);
  CHECK(theta_class_after(2, word_matrix("T")) == 3);
  CHECK(theta_class_after(3, word_matrix("T")) == 2);
  CHECK(theta_class_after(3, word_matrix("S")) == 3);
  CHECK(parse_matrix("0,-1;1,0") == word_matrix("S"));
  CHECK_THROWS_AS(parse_matrix("1,1;1,1"), DomainError);
}

TEST_CASE("modular weight in all three parity classes") {
  const std::vector<std::string> words{"S", "T", "TS", "St", "STS", "TTST"};
  std::set<std::string> classes;
  for (const char* name : {"s2-v", "hirzebruch", "cp3-v", "s2-spinc", "hirzebruch-spinc"}) {
    const auto m = builtin_model(name);
    for (OpKind kind : {OpKind::F1, OpKind::Fj, OpKind::Loop, OpKind::F1Beta}) {
      if (kind == OpKind::Loop && !m.is_spin()) continue;
      if (kind == OpKind::F1Beta && m.r() == 0) continue;
      const auto s = op(m, kind, 2);
      const auto rep = anomaly_n(m, s);
      for (int c = 0; c < static_cast<int>(m.components.size()); ++c)
        for (const auto& w : words) {
          INFO(name << " " << op_name(kind) << " component " << c << " word " << w);
          const Eigen::Matrix2i A = word_matrix(w);
          const auto r = check_modular_weight(m, s, A, rep.n[static_cast<std::size_t>(c)], default_samples(6), 1e-8, -1, c);
          CHECK(r.pass);
          if (!r.notes.empty()) classes.insert(r.notes.front());
          if (A(1, 0) != 0)
            CHECK_FALSE(check_modular_weight(m, s, A, rep.n[static_cast<std::size_t>(c)], default_samples(3), 1e-8, r.weight + 1, c).pass);
        }
    }
  }
  CHECK(classes.count("epsilon_A = 1"));
  CHECK(classes.count("epsilon_A = 2"));
  CHECK(classes.count("epsilon_A = 3"));
}

TEST_CASE("Psi scaling is checked per base degree on the family") {
  const auto m = builtin_model("hirzebruch");
  const auto s = op(m, OpKind::F1);
  const auto r = check_modular_weight(m, s, word_matrix("S"), Rat(0), default_samples(4), 1e-8, -1, 0);
  std::set<int> degrees;
  for (const auto& x : r.residuals) degrees.insert(x.base_degree);
  CHECK(degrees == std::set<int>{0, 2});
  CHECK(r.pass);
  const NilPoly<Complex> v = genus_direct(m, s, Complex(0.3, 0.02), Complex(0.1, 1.0), 0);
  CHECK(std::abs(v.grade_part(2).terms().begin()->second) > 1e-3);
}

TEST_CASE("Gamma_1(2N) elements collapse the twisted beta series") {
  const auto m = builtin_model("s2-spinc");
  const auto s = op(m, OpKind::F1Beta);
  Eigen::Matrix2i A;
  A << 1, 0, 4, 1;
  const auto r = check_modular_weight(m, s, A, Rat(0), default_samples(6), 1e-8);
  bool saw = false;
  for (const auto& x : r.residuals) saw = saw || x.transform == "collapse";
  CHECK(saw);
  CHECK(r.pass);
}

TEST_CASE("vanishing verdicts") {
  const auto s2 = builtin_model("s2");
  for (const auto& o : {exact(), numeric()}) {
    const auto v = check_vanishing(s2, op(s2, OpKind::Witten), Rat(3), o);
    CHECK(v.verdict == "VANISHES");
    CHECK(v.pass);
  }
  const auto cp3 = builtin_model("cp3");
  const auto w = check_vanishing(cp3, op(cp3, OpKind::Witten), Rat(2), exact());
  CHECK(w.verdict == "INCONSISTENT");
  CHECK(w.detail.find("nevertheless vanishes") != std::string::npos);

  const auto sc = builtin_model("s2-spinc");
  const auto r = check_vanishing(sc, op(sc, OpKind::F1), Rat(2), exact());
  CHECK(r.verdict == "RIGID");
  CHECK(r.pass);
  const auto bad = builtin_model("s2-v-shifted");
  CHECK_FALSE(check_vanishing(bad, op(bad, OpKind::F1), Rat(2), exact()).pass);
}

TEST_CASE("zero counting") {
  const Complex tau(0.2, 1.1);
  const Complex corner = -0.37 - 0.41 * tau;
  auto th = [&](Complex v) { return theta_numeric(ThetaKind::Theta, v, tau); };
  const auto one = count_zeros(th, corner, 1.0, tau);
  CHECK(one.count == 1);
  CHECK(one.residual < 0.1);
  CHECK(count_zeros([](Complex) { return Complex(1.0, 0.0); }, corner, 1.0, tau).count == 0);
  CHECK(count_zeros([&](Complex v) { return th(v) * th(v); }, corner, 1.0, tau).count == 2);
  CHECK(count_zeros(th, corner, 2.0, 2.0 * tau).count == 4);
  CHECK(count_zeros(th, corner, tau, 1.0).count == 1);
  CHECK_THROWS_AS(count_zeros(th, Complex(0.0, 0.0), 1.0, tau), DomainError);

  // computed F of index 0 over the (2Z)^2 cell
  const auto m = builtin_model("s2-spinc");
  const auto s = op(m, OpKind::F1);
  auto F = [&](Complex t) { return genus_direct(m, s, t, tau).constant_term(); };
  CHECK(count_zeros(F, corner + Complex(0.0, 0.01), 2.0, 2.0 * tau).count == 0);
}
