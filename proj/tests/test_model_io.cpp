#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellgen/genus.hpp"
#include "ellgen/model_io.hpp"

using namespace ellgen;

namespace {

int error_line(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

const char* kSphere = R"(# two poles
model sphere
k 1

[component north]
normal 1: 0

[component south]
normal -1: 0
)";

}  // namespace

TEST_CASE("polynomials in declared generators") {
  const auto alg = make_algebra({{"h", 2}, {"a", 2}}, 4);
  const auto h = NilPoly<Rat>::variable(alg, "h"), a = NilPoly<Rat>::variable(alg, "a");
  CHECK(parse_poly("1/2*h^2 - a", alg) == scale_rat(h * h, Rat(1, 2)) - a);
  CHECK(parse_poly("-h + -2*a*h", alg) == -h - scale_rat(a * h, Rat(2)));
  CHECK(parse_poly("0", alg).is_zero());
  CHECK(parse_poly("h^3", alg).is_zero());  // above the truncation
  CHECK_THROWS_AS(parse_poly("x", alg), DomainError);
  CHECK_THROWS_AS(parse_poly("h +", alg), DomainError);
  CHECK_THROWS_AS(parse_poly("", alg), DomainError);
}

TEST_CASE("every built-in model survives a round trip") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    const auto m = builtin_model(name);
    const std::string text = serialize_model(m);
    const auto back = parse_model(text);
    CHECK(back == m);
    CHECK(serialize_model(back) == text);
  }
  const auto w = builtin_model("cp3:0,1,3,7");
  CHECK(parse_model(serialize_model(w)) == w);
}

TEST_CASE("a hand-written file matches the built-in sphere") {
  auto m = parse_model(kSphere);
  CHECK(m.components.size() == 2);
  OperatorSpec s;
  CHECK(genus_symbolic(m, s, Rat(3)).terms().empty());
  auto b = builtin_model("s2");
  m.name = b.name;
  m.components[0].name = b.components[0].name;
  m.components[1].name = b.components[1].name;
  CHECK(m == b);
}

TEST_CASE("parse errors carry the line") {
  CHECK(error_line("") == 1);
  CHECK(error_line("# only a comment\n\n") == 2);
  CHECK(error_line("model x\nk 1\n[component p]\nnormal 1: y\n") == 4);
  CHECK(error_line("model x\nk one\n") == 2);
  CHECK(error_line("model x\nk 1\n[bogus]\n") == 3);
  CHECK(error_line("model x\nk 1\n[component p]\nnormal 1: 0\nspin yes\n") == 5);
  CHECK(error_line("model x\nk 1\n[base]\ngenerators h:3\ntruncation 2\n[component p]\nnormal 1: 0\n") == 1);
  // validation: zero rotation number on a normal bundle
  CHECK(error_line("model x\nk 1\n[component p]\nnormal 0: 0\n") == 3);
}

TEST_CASE("character tables") {
  const auto t = parse_table("trunc 2\n# weights : exponent coefficient\n1 : 0 1\n1 : 1 3\n-1 : 0 1\n", "t");
  CHECK(t.entries.size() == 2);
  CHECK(t.entries.at({1}).coefficient(Rat(1)) == Rat(3));
  CHECK(t.entries.at({1}).trunc() == Rat(2));
  CHECK_THROWS_AS(parse_table("1 : 0 1\n", "t"), ParseError);
  CHECK_THROWS_AS(parse_table("trunc 1\n1 : 2 1\n", "t"), ParseError);
  CHECK(load_table("r1", 2, Rat(2)).level_one_j == 1);
  CHECK(load_table("trivial", 1, Rat(2)).entries.size() == 1);
}
