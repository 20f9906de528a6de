#pragma once

#include <string>

#include "ellgen/model.hpp"

namespace ellgen {

/// Line-oriented model files.
///
///     model hirzebruch
///     note P(O + O(-1)) over CP^1
///     k 1
///     level 1
///
///     [base]
///     generators h:2
///     truncation 2
///
///     [component zero-section]
///     fiber a:2            # fibre generators, optional
///     fiber_dim 2          # real dimension of the fibre
///     tangent 2*a          # one line per tangent root
///     normal 1: -h         # weight: roots, comma separated
///     V 1: -h
///     W 1: -h
///     c1 -h
///     lc 1
///     push a -> 1          # fibre monomial -> base class
///
/// '#' starts a comment. Polynomials use the declared generator names.
FixedPointModel parse_model(const std::string& text);
std::string serialize_model(const FixedPointModel& model);

/// "builtin:<name>" or a path to a model file.
FixedPointModel load_model(const std::string& where);

/// Sums of rational multiples of generator monomials, e.g. "1/2*h^2 - a".
NilPoly<Rat> parse_poly(const std::string& text, const AlgebraPtr& alg);

/// Character tables: "trunc T" then lines "h_1,...,h_l : exponent coefficient".
CharacterTable parse_table(const std::string& text, const std::string& name);
/// "r1", "r2", "r3", "trivial" or a path to a table file.
CharacterTable load_table(const std::string& where, int l, const Rat& trunc);

}  // namespace ellgen
