#pragma once

#include <map>
#include <string>
#include <vector>

#include "ellgen/nilpoly.hpp"

namespace ellgen {

/// Integration along the fibre of a fixed component M_alpha -> B, declared as
/// data: fibre monomial -> class on the base.
///
/// The component algebra lists the base generators first, then the fibre
/// generators. Fibre monomials of degree below fiber_dim integrate to zero;
/// every fibre monomial of degree >= fiber_dim that occurs must be tabulated.
struct PushForward {
  int fiber_dim = 0;  // 2 k_alpha
  std::map<Monomial, NilPoly<Rat>> table;  // keys index the fibre generators only

  /// Identity pushforward of an isolated (over the base) fixed component.
  static PushForward identity(const AlgebraPtr& base);

  friend bool operator==(const PushForward& a, const PushForward& b) {
    return a.fiber_dim == b.fiber_dim && a.table == b.table;
  }
};

/// Base generators followed by fibre generators; truncation D_base + fiber_dim.
AlgebraPtr component_algebra(const AlgebraPtr& base, const std::vector<Algebra::Var>& fiber_vars, int fiber_dim);

/// Embeds a base class into a component algebra (base generators come first).
template <class K>
NilPoly<K> lift_to_component(const NilPoly<K>& base_elem, const AlgebraPtr& comp) {
  NilPoly<K> r(comp);
  for (const auto& [m, c] : base_elem.terms()) {
    Monomial mm(comp->size(), 0);
    std::copy(m.begin(), m.end(), mm.begin());
    r.add_term(mm, c);
  }
  return r;
}

/// pi_*: linear extension of the table, base factors pass through.
template <class K>
NilPoly<K> fiber_integrate(const NilPoly<K>& c, const PushForward& pf, const AlgebraPtr& base) {
  const AlgebraPtr& comp = c.algebra();
  NilPoly<K> result(base);
  if (c.is_zero()) return result;
  const std::size_t nb = base->size();
  if (comp->size() < nb) throw IncompatibleRing("component algebra does not extend the base algebra");
  for (const auto& [m, coef] : c.terms()) {
    Monomial base_part(m.begin(), m.begin() + static_cast<long>(nb));
    Monomial fiber_part(m.begin() + static_cast<long>(nb), m.end());
    int fdeg = 0;
    for (std::size_t i = 0; i < fiber_part.size(); ++i) fdeg += fiber_part[i] * comp->vars()[nb + i].degree;
    if (fdeg < pf.fiber_dim) continue;
    auto it = pf.table.find(fiber_part);
    if (it == pf.table.end())
      throw ModelError("pushforward table has no entry for fibre monomial '" +
                       monomial_text(*comp, [&] {
                         Monomial full(comp->size(), 0);
                         std::copy(fiber_part.begin(), fiber_part.end(), full.begin() + static_cast<long>(nb));
                         return full;
                       }()) + "'");
    NilPoly<K> base_mono(base);
    base_mono.add_term(base_part, coef);
    NilPoly<K> image = convert_coeffs<K>(it->second, [](const Rat& x) { return from_rat<K>(x); });
    result += image * base_mono;
  }
  return result;
}

}  // namespace ellgen
