#include "ellgen/cohomology.hpp"

#include <set>

namespace ellgen {

Algebra::Algebra(std::vector<Var> vars, int trunc_degree) : vars_(std::move(vars)), trunc_(trunc_degree) {
  if (trunc_ < 0 || trunc_ % 2 != 0) throw DomainError("truncation degree must be a non-negative even integer");
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.degree < 2 || v.degree % 2 != 0)
      throw DomainError("generator '" + v.name + "' must have positive even degree");
    if (!seen.insert(v.name).second) throw DomainError("duplicate generator name '" + v.name + "'");
  }
}

int Algebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  return -1;
}

AlgebraPtr point_algebra() {
  static const AlgebraPtr pt = make_algebra({}, 0);
  return pt;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

int monomial_degree(const Algebra& alg, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * alg.vars()[i].degree;
  return d;
}

std::string monomial_text(const Algebra& alg, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += alg.vars()[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

PushForward PushForward::identity(const AlgebraPtr& base) {
  PushForward pf;
  pf.fiber_dim = 0;
  pf.table.emplace(Monomial{}, NilPoly<Rat>(base, Rat(1)));
  return pf;
}

AlgebraPtr component_algebra(const AlgebraPtr& base, const std::vector<Algebra::Var>& fiber_vars, int fiber_dim) {
  std::vector<Algebra::Var> vars = base->vars();
  vars.insert(vars.end(), fiber_vars.begin(), fiber_vars.end());
  return make_algebra(std::move(vars), base->trunc_degree() + fiber_dim);
}

}  // namespace ellgen
