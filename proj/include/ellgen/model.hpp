#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ellgen/cohomology.hpp"
#include "ellgen/qseries.hpp"

namespace ellgen {

/// An isotypic summand: the circle acts by z^{weight} on a bundle whose
/// Chern roots (in the variable X = 2 pi i x) are `roots`.
struct TwistBundle {
  int weight = 0;
  std::vector<NilPoly<Rat>> roots;
  int rank() const { return static_cast<int>(roots.size()); }
  friend bool operator==(const TwistBundle&, const TwistBundle&) = default;
};

struct FixedComponent {
  std::string name;
  std::vector<Algebra::Var> fiber_vars;
  int fiber_dim = 0;           // real dimension of the fixed fibre
  AlgebraPtr algebra;          // base generators, then fibre generators
  std::vector<NilPoly<Rat>> tangent_roots;  // y', one per complex dimension of the fixed fibre
  std::vector<TwistBundle> normal, V, W;
  NilPoly<Rat> c1;             // spin^c line restricted to the component
  int lc = 0;                  // its circle weight
  PushForward push;

  friend bool operator==(const FixedComponent& a, const FixedComponent& b) {
    return a.name == b.name && a.fiber_vars == b.fiber_vars && a.fiber_dim == b.fiber_dim && same_algebra(a.algebra, b.algebra) &&
           a.tangent_roots == b.tangent_roots && a.normal == b.normal && a.V == b.V && a.W == b.W && a.c1 == b.c1 && a.lc == b.lc &&
           a.push == b.push;
  }
};

struct FixedPointModel {
  std::string name;
  std::string note;
  int k = 0;      // complex dimension of the fibre
  int level = 1;  // m in p1(TX) = m p1(V)
  AlgebraPtr base;
  std::vector<FixedComponent> components;

  /// Half the real rank of V and the complex rank of W (taken from the first component).
  int l() const;
  int r() const;
  bool is_spin() const;

  friend bool operator==(const FixedPointModel& a, const FixedPointModel& b) {
    return a.name == b.name && a.k == b.k && a.level == b.level && same_algebra(a.base, b.base) && a.components == b.components;
  }
};

/// Creates an empty component over the model's base with the given fibre generators.
FixedComponent make_component(const std::string& name, const AlgebraPtr& base, std::vector<Algebra::Var> fiber_vars, int fiber_dim);

/// The same model with V replaced by the real tangent bundle: the normal
/// bundles with their weights plus the fibre tangent roots at weight 0.
FixedPointModel with_tangent_twist(const FixedPointModel& model);

/// Empty list means the model is valid.
std::vector<std::string> validate_model(const FixedPointModel& model);
void require_valid(const FixedPointModel& model);

enum class OpKind { Witten, Loop, F1, F1Beta, Fj, FjBetaA };

std::string op_name(OpKind k);
OpKind parse_op(const std::string& s);

/// Weight vector (one entry per Chern root of V, in units of 1/2) -> q-series.
struct CharacterTable {
  std::string name;
  std::map<std::vector<int>, QSeries<Rat>> entries;
  int level_one_j = 0;  // nonzero for the built-in R_j tables (enables closed-form evaluation)

  CharacterTable scaled(const Rat& c) const;
};

/// The bare product expansions of the R_j stacks of a rank-2l bundle as tables:
/// j=1: prod (w^{1/2}+w^{-1/2}) (1+q^n w)(1+q^n/w)/(1+q^n)^2,
/// j=2,3: prod (1 -/+ q^{n-1/2} w)(1 -/+ q^{n-1/2}/w)/(1 -/+ q^{n-1/2})^2.
CharacterTable level_one_table(int j, int l, const Rat& trunc);
/// C == 1.
CharacterTable trivial_table(int l);

struct OperatorSpec {
  OpKind kind = OpKind::Witten;
  int j = 1;
  Rat beta = 0;  // 1/N
  int N = 0;
  Eigen::Matrix2i A = Eigen::Matrix2i::Identity();
  CharacterTable table;  // loop variant
  Rat anomaly = 0;       // q^{m_Lambda} shift, loop variant only

  bool uses_twists() const { return kind != OpKind::Witten; }
  bool is_spinc_family() const { return kind != OpKind::Loop; }
  bool has_beta() const { return kind == OpKind::F1Beta || kind == OpKind::FjBetaA; }
  int effective_j() const { return (kind == OpKind::Fj || kind == OpKind::FjBetaA) ? j : 1; }
};

/// (c, d) mod 2 -> 1, 2, 3.
int epsilon_class(const Eigen::Matrix2i& A);

/// Names: s2, s2-v, s2-v2, s2-v-shifted, s2-spinc, s2xs2, cp3[:a,b,c,d], cp3-v, hirzebruch, hirzebruch-spinc.
FixedPointModel builtin_model(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace ellgen
