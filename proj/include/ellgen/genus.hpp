#pragma once

#include <vector>

#include "ellgen/model.hpp"
#include "ellgen/theta.hpp"

namespace ellgen {

using SymbolicSeries = QSeries<NilPoly<ZFrac>>;
using NumericSeries = QSeries<NilPoly<Complex>>;

/// Throws ModelError if the operator cannot be applied to the model (spin
/// requirements, c1(W) = c1(TX) matching, beta admissibility, table shape).
void check_spec_applicable(const FixedPointModel& model, const OperatorSpec& spec);

/// Theta-quotient assembly of F(t, tau) over H*(B); only_component >= 0
/// restricts the sum to one fixed component.
SymbolicSeries genus_symbolic(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, int only_component = -1);
/// Same at a fixed complex t (z^{1/2} = e^{pi i t}); beta may be any rational.
NumericSeries genus_numeric(const FixedPointModel& model, const OperatorSpec& spec, Complex t, const Rat& trunc, int only_component = -1);

/// Direct evaluation of the fixed-point expression at (t, tau) with the
/// product formulas for theta (no q-truncation). For FjBetaA the A-twisted
/// series is evaluated with spec.A.
NilPoly<Complex> genus_direct(const FixedPointModel& model, const OperatorSpec& spec, Complex t, Complex tau, int only_component = -1);

// ------------------------------------------------ bundle-expansion oracle

/// Equivariant Chern characters of the complexified tangent bundle at a
/// component: z^{m} e^{X}, z^{-m} e^{-X} per normal root and e^{+-Y} per tangent root.
std::vector<NilPoly<ZFrac>> tangent_characters(const FixedComponent& c);

/// sum_j t^j Lambda^j(E) (sign +1) or sum_j t^j S^j(E) for a bundle with the
/// given line characters, t = sign * q^{a}; reduced subtracts the rank.
SymbolicSeries exterior_series(const std::vector<NilPoly<ZFrac>>& chars, const AlgebraPtr& alg, const Rat& a, int sign, bool reduced,
                               const Rat& trunc, const ZFrac& extra = ZFrac(1));
SymbolicSeries symmetric_series(const std::vector<NilPoly<ZFrac>>& chars, const AlgebraPtr& alg, const Rat& a, bool reduced,
                                const Rat& trunc);

/// The coefficient classes of the operator's twist stack restricted to a
/// component (in the component algebra), including the R_j(V) or table factor.
SymbolicSeries bundle_expand(const FixedPointModel& model, const OperatorSpec& spec, int component, const Rat& trunc);

/// Fixed-point index of a class: sum over components of
/// pi_*[ Ahat(TX^g) ch e^{pi i (c1 + lc t)} / prod (e^{pi i (x+mt)} - e^{-pi i (x+mt)}) ].
NilPoly<ZFrac> index_character(const FixedPointModel& model, const std::vector<NilPoly<ZFrac>>& per_component, bool spinc_line);

/// bundle_expand fed through index_character, with the 2^{-l} normalization for F_1.
SymbolicSeries oracle_genus(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, int only_component = -1);

}  // namespace ellgen
