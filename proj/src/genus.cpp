#include "ellgen/genus.hpp"

namespace ellgen {

namespace {

ThetaKind kind_for_j(int j) {
  switch (j) {
    case 1: return ThetaKind::Theta1;
    case 2: return ThetaKind::Theta2;
    case 3: return ThetaKind::Theta3;
  }
  throw DomainError("j must be 1, 2 or 3");
}

struct Root {
  int weight;
  NilPoly<Rat> root;
};

std::vector<Root> flatten(const std::vector<TwistBundle>& parts) {
  std::vector<Root> out;
  for (const auto& b : parts)
    for (const auto& x : b.roots) out.push_back({b.weight, x});
  return out;
}

NilPoly<Rat> root_sum(const std::vector<TwistBundle>& parts, const AlgebraPtr& alg) {
  NilPoly<Rat> s(alg);
  for (const auto& b : parts)
    for (const auto& x : b.roots) s += x;
  return s;
}

bool negligible(const ZFrac& x) { return ring::zero(x); }
bool negligible(const Complex& x) { return std::abs(x) < 1e-12; }

bool uses_V(const OperatorSpec& s) { return s.kind != OpKind::Witten; }
bool uses_W(const OperatorSpec& s) { return s.kind != OpKind::Witten && s.kind != OpKind::Loop; }

// A factor (2 pi i)^a i^b q^{shift} * s, where s has valuation 0.
template <class K>
struct Piece {
  Prefactor pre;
  Rat shift = 0;
  QSeries<NilPoly<K>> s;

  Piece operator*(const Piece& o) const { return {pre * o.pre, shift + o.shift, s * o.s}; }
  Piece inverse() const { return {pre.inverse(), -shift, s.inverse()}; }
};

template <class K>
Piece<K> unit_piece(const AlgebraPtr& alg, const Rat& T) {
  return {Prefactor{}, Rat(0), QSeries<NilPoly<K>>::constant(NilPoly<K>(alg, K(1)), T)};
}

template <class K>
Piece<K> power(const Piece<K>& p, int e, const AlgebraPtr& alg, const Rat& T) {
  Piece<K> base = e < 0 ? p.inverse() : p;
  Piece<K> r = unit_piece<K>(alg, T);
  for (int i = 0; i < std::abs(e); ++i) r = r * base;
  return r;
}

template <class Z>
Piece<typename Z::K> theta_piece(ThetaKind kind, const ThetaArg& arg, const Z& ctx, const Rat& T) {
  const Rat off = (kind == ThetaKind::Theta || kind == ThetaKind::Theta1) ? Rat(1, 8) : Rat(0);
  auto f = theta_qexp(kind, arg, ctx, T + off);
  return {f.pre, off, f.series.shifted(-off)};
}

template <class K>
Piece<K> prime_piece(const AlgebraPtr& alg, const Rat& T) {
  auto f = theta_prime_zero_qexp<K>(alg, T + Rat(1, 8));
  return {f.pre, Rat(1, 8), f.series.shifted(-Rat(1, 8))};
}

template <class K>
Piece<K> over_arg_piece(const NilPoly<Rat>& Y, const Rat& T) {
  auto f = theta_over_arg_qexp<K>(Y, T + Rat(1, 8));
  return {f.pre, Rat(1, 8), f.series.shifted(-Rat(1, 8))};
}

// sum_h a_h(q) prod_i z^{n_i h_i / 2} e^{h_i U_i / 2}
template <class Z>
QSeries<NilPoly<typename Z::K>> table_series(const CharacterTable& table, const std::vector<Root>& vroots, const AlgebraPtr& alg,
                                             const Z& ctx, const Rat& T) {
  using K = typename Z::K;
  QSeries<NilPoly<K>> out = QSeries<NilPoly<K>>::zero(T);
  for (const auto& [h, a] : table.entries) {
    if (h.size() != vroots.size())
      throw ModelError("character table '" + table.name + "' has weight vectors of length " + std::to_string(h.size()) +
                       " but V has " + std::to_string(vroots.size()) + " Chern roots");
    NilPoly<Rat> arg(alg);
    int zk = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      arg += scale_rat(vroots[i].root, Rat(h[i], 2));
      zk += vroots[i].weight * h[i];
    }
    const NilPoly<K> nil = to_ring<K>(arg).exp().scaled(ctx.z_half(zk));
    out = out + a.map_coeffs([&](const Rat& c) { return nil.scaled(from_rat<K>(c)); });
  }
  return out;
}

template <class Z>
QSeries<NilPoly<typename Z::K>> component_series(const FixedPointModel& model, const OperatorSpec& spec, const FixedComponent& c,
                                                 const Z& ctx, const Rat& T) {
  using K = typename Z::K;
  const AlgebraPtr& alg = c.algebra;
  const int k = model.k;
  const int l = uses_V(spec) ? model.l() : 0;
  const int r = uses_W(spec) ? model.r() : 0;
  const auto vroots = uses_V(spec) ? flatten(c.V) : std::vector<Root>{};
  const auto wroots = uses_W(spec) ? flatten(c.W) : std::vector<Root>{};
  const NilPoly<Rat> zero(alg);

  Piece<K> acc = unit_piece<K>(alg, T);
  if (!c.tangent_roots.empty()) {
    Piece<K> d = unit_piece<K>(alg, T);
    for (const auto& y : c.tangent_roots) d = d * over_arg_piece<K>(y, T);
    acc = acc * d.inverse();
  }
  {
    Piece<K> d = unit_piece<K>(alg, T);
    for (const auto& x : flatten(c.normal)) d = d * theta_piece(ThetaKind::Theta, ThetaArg{x.weight, x.root, 0}, ctx, T);
    const auto& lead = d.s.terms();
    if (lead.empty() || lead.begin()->first != 0 || negligible(lead.begin()->second.constant_term()))
      throw PoleError("component '" + c.name + "': a normal theta factor vanishes identically at this t");
    acc = acc * d.inverse();
  }

  Rat anomaly = 0;
  if (spec.kind == OpKind::Loop) {
    acc.pre = acc.pre * Prefactor{-k, 0};
    acc = acc * power(prime_piece<K>(alg, T), k, alg, T);
    acc.s = acc.s * table_series(spec.table, vroots, alg, ctx, T);
    anomaly = spec.anomaly;
  } else {
    const ThetaKind tj = kind_for_j(spec.effective_j());
    Rat shift = 0;
    if (spec.has_beta()) {
      if (spec.A(1, 0) != 0) throw DomainError("the A-twisted series with c != 0 is available through direct evaluation only");
      shift = spec.beta * spec.A(1, 1);
    }
    acc.pre = acc.pre * Prefactor{spec.has_beta() ? -k : r - k, 0};
    acc = acc * power(prime_piece<K>(alg, T), spec.has_beta() ? k : k - r, alg, T);
    if (l > 0) acc = acc * power(theta_piece(tj, ThetaArg{0, zero, 0}, ctx, T), -l, alg, T);
    if (spec.has_beta() && r > 0) acc = acc * power(theta_piece(ThetaKind::Theta, ThetaArg{0, zero, shift}, ctx, T), -r, alg, T);
    for (const auto& v : vroots) acc = acc * theta_piece(tj, ThetaArg{v.weight, v.root, 0}, ctx, T);
    for (const auto& w : wroots) acc = acc * theta_piece(ThetaKind::Theta, ThetaArg{w.weight, w.root, shift}, ctx, T);
  }
  if (!acc.pre.is_rational()) throw std::logic_error("transcendental prefactor did not cancel");
  if (acc.shift != 0) throw std::logic_error("q^{1/8} bookkeeping did not cancel");
  const int sign = acc.pre.sign();
  QSeries<NilPoly<K>> pushed = acc.s.map_coeffs([&](const NilPoly<K>& x) { return fiber_integrate(x, c.push, model.base); });
  if (sign < 0) pushed = -pushed;
  if (anomaly != 0) pushed = pushed.shifted(anomaly);
  return pushed;
}

template <class Z>
QSeries<NilPoly<typename Z::K>> assemble(const FixedPointModel& model, const OperatorSpec& spec, const Z& ctx, const Rat& trunc,
                                         int only) {
  using K = typename Z::K;
  check_spec_applicable(model, spec);
  if (only >= static_cast<int>(model.components.size())) throw DomainError("component index out of range");
  QSeries<NilPoly<K>> total = QSeries<NilPoly<K>>::zero(trunc + spec.anomaly).shifted(Rat(0));
  bool first = true;
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    if (only >= 0 && static_cast<int>(i) != only) continue;
    auto part = component_series(model, spec, model.components[i], ctx, trunc);
    total = first ? part : total + part;
    first = false;
  }
  const Rat want = trunc + spec.anomaly;
  if (total.trunc() < want) throw TruncationError("character table is truncated below the requested order");
  return total.truncated(want);
}

}  // namespace

void check_spec_applicable(const FixedPointModel& model, const OperatorSpec& spec) {
  require_valid(model);
  if (spec.kind == OpKind::Witten || spec.kind == OpKind::Loop) {
    if (!model.is_spin()) throw ModelError("operator '" + op_name(spec.kind) + "' needs a spin model (c1 = 0 and lc = 0 everywhere)");
  } else {
    for (const auto& c : model.components) {
      int wsum = 0;
      for (const auto& b : c.W) wsum += b.weight * b.rank();
      if (!(root_sum(c.W, c.algebra) == c.c1) || wsum != c.lc)
        throw ModelError("component '" + c.name + "': c1(W) does not match the spin^c line (sum of W roots + weights != c1 + lc t)");
    }
  }
  if ((spec.kind == OpKind::Fj || spec.kind == OpKind::FjBetaA) && (spec.j < 1 || spec.j > 3)) throw DomainError("j must be 1, 2 or 3");
  if (spec.has_beta()) {
    if (spec.beta <= 0 || spec.beta >= 1) throw DomainError("beta must lie strictly between 0 and 1");
    if (spec.N > 0 && spec.beta * spec.N != 1) throw DomainError("beta must equal 1/N");
    if (spec.A.determinant() != 1) throw DomainError("A must have determinant 1");
    const int N = spec.N > 0 ? spec.N : static_cast<int>(denominator_of(spec.beta));
    for (const auto& c : model.components)
      if (((c.lc - model.components.front().lc) % N) != 0)
        throw ModelError("c1(W) is not divisible by N: circle weights of the spin^c line differ mod N");
  }
  if (spec.kind == OpKind::Loop && spec.table.entries.empty()) throw ModelError("loop operator needs a character table");
}

SymbolicSeries genus_symbolic(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, int only_component) {
  return assemble(model, spec, SymbolicZ{}, trunc, only_component);
}

namespace {

// The localization formula holds for t generating a dense subgroup; real t near p/q (q <= 24) is refused.
void reject_rational(Complex t) {
  if (std::abs(t.imag()) > 1e-12) return;
  for (int q = 1; q <= 24; ++q) {
    const double p = std::round(t.real() * q);
    if (std::abs(t.real() - p / q) < 1e-10)
      throw PoleError("t = " + std::to_string(static_cast<long>(p)) + "/" + std::to_string(q) +
                      " is rational; move the sample off the real axis or to an irrational point");
  }
}

}  // namespace

NumericSeries genus_numeric(const FixedPointModel& model, const OperatorSpec& spec, Complex t, const Rat& trunc, int only_component) {
  reject_rational(t);
  return assemble(model, spec, NumericZ{t}, trunc, only_component);
}

// ------------------------------------------------------------- direct

namespace {

NilPoly<Complex> to_complex(const NilPoly<Rat>& p) { return to_ring<Complex>(p); }

NilPoly<Complex> table_direct(const CharacterTable& table, const std::vector<Root>& vroots, const AlgebraPtr& alg, Complex t, Complex tau) {
  const int l = static_cast<int>(vroots.size());
  NilPoly<Complex> one(alg, Complex(1.0, 0.0));
  if (table.level_one_j) {
    const ThetaKind tj = kind_for_j(table.level_one_j);
    NilPoly<Complex> val = one;
    const Complex at0 = theta_numeric(tj, 0.0, tau);
    for (const auto& v : vroots) val = val * theta_numeric(tj, static_cast<double>(v.weight) * t, to_complex(v.root), tau).scaled(1.0 / at0);
    if (table.level_one_j == 1) val = val.scaled(std::pow(2.0, l));
    return val;
  }
  NilPoly<Complex> val(alg);
  for (const auto& [h, a] : table.entries) {
    if (static_cast<int>(h.size()) != l) throw ModelError("character table weight vectors do not match the rank of V");
    NilPoly<Rat> arg(alg);
    int zk = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      arg += scale_rat(vroots[i].root, Rat(h[i], 2));
      zk += vroots[i].weight * h[i];
    }
    const Complex coef = a.evaluate(tau, [](const Rat& x) { return Complex(to_double(x), 0.0); });
    val += to_complex(arg).exp().scaled(coef * std::exp(Complex(0.0, kPi * zk) * t));
  }
  return val;
}

NilPoly<Complex> component_direct(const FixedPointModel& model, const OperatorSpec& spec, const FixedComponent& c, Complex t, Complex tau) {
  const AlgebraPtr& alg = c.algebra;
  const Complex two_pi_i(0.0, 2.0 * kPi);
  const int k = model.k;
  const int l = uses_V(spec) ? model.l() : 0;
  const int r = uses_W(spec) ? model.r() : 0;
  const auto vroots = uses_V(spec) ? flatten(c.V) : std::vector<Root>{};
  const auto wroots = uses_W(spec) ? flatten(c.W) : std::vector<Root>{};
  NilPoly<Complex> val(alg, Complex(1.0, 0.0));
  for (const auto& y : c.tangent_roots) val = val * theta_over_arg_numeric(to_complex(y), tau).inverse();
  for (const auto& x : flatten(c.normal)) {
    const NilPoly<Complex> th = theta_numeric(ThetaKind::Theta, static_cast<double>(x.weight) * t, to_complex(x.root), tau);
    if (std::abs(th.constant_term()) < 1e-13) throw PoleError("component '" + c.name + "': theta denominator vanishes at this (t, tau)");
    val = val * th.inverse();
  }
  const Complex prime = theta_prime_zero(tau);
  Complex scalar;
  if (spec.kind == OpKind::Loop) {
    scalar = std::pow(prime / two_pi_i, k) * std::exp(two_pi_i * tau * to_double(spec.anomaly));
    val = val * table_direct(spec.table, vroots, alg, t, tau);
  } else {
    const ThetaKind tj = kind_for_j(spec.effective_j());
    const double cc = spec.has_beta() ? spec.A(1, 0) : 0.0, dd = spec.has_beta() ? spec.A(1, 1) : 1.0;
    const double beta = spec.has_beta() ? to_double(spec.beta) : 0.0;
    const Complex s = (cc * tau + dd) * beta;
    scalar = std::pow(two_pi_i, r - k) * std::pow(prime, k - r) / std::pow(theta_numeric(tj, 0.0, tau), l);
    if (spec.has_beta()) scalar = std::pow(prime / two_pi_i, k) / (std::pow(theta_numeric(tj, 0.0, tau), l) * std::pow(theta_numeric(ThetaKind::Theta, s, tau), r));
    for (const auto& v : vroots) val = val * theta_numeric(tj, static_cast<double>(v.weight) * t, to_complex(v.root), tau);
    for (const auto& w : wroots) {
      const NilPoly<Complex> om = to_complex(w.root);
      NilPoly<Complex> f = theta_numeric(ThetaKind::Theta, static_cast<double>(w.weight) * t + s, om, tau);
      if (cc != 0.0) f = f * om.scaled(Complex(cc * beta, 0.0)).exp().scaled(std::exp(two_pi_i * cc * beta * static_cast<double>(w.weight) * t));
      val = val * f;
    }
  }
  return fiber_integrate(val.scaled(scalar), c.push, model.base);
}

}  // namespace

NilPoly<Complex> genus_direct(const FixedPointModel& model, const OperatorSpec& spec, Complex t, Complex tau, int only_component) {
  check_spec_applicable(model, spec);
  reject_rational(t);
  NilPoly<Complex> total(model.base);
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    if (only_component >= 0 && static_cast<int>(i) != only_component) continue;
    total += component_direct(model, spec, model.components[i], t, tau);
  }
  return total;
}

// ------------------------------------------------------------- oracle

namespace {

using SP = NilPoly<ZFrac>;

SP char_of(int weight, const NilPoly<Rat>& root, int sign) {
  return to_ring<ZFrac>(root.scaled(Rat(sign))).exp().scaled(ZFrac::z_power(2 * weight * sign));
}

// e_j (exterior) or h_j (symmetric) for j <= J
std::vector<SP> symmetric_functions(const std::vector<SP>& chars, const AlgebraPtr& alg, int J, bool exterior) {
  std::vector<SP> f(static_cast<std::size_t>(J + 1), SP(alg));
  f[0] = SP(alg, ZFrac(1));
  for (const auto& L : chars) {
    if (exterior) {
      for (int j = J; j >= 1; --j) f[static_cast<std::size_t>(j)] += L * f[static_cast<std::size_t>(j - 1)];
    } else {
      for (int j = 1; j <= J; ++j) f[static_cast<std::size_t>(j)] += L * f[static_cast<std::size_t>(j - 1)];
    }
  }
  return f;
}

int max_power(const Rat& a, const Rat& trunc) {
  int J = 0;
  while (a * (J + 1) < trunc) ++J;
  return J;
}

SymbolicSeries power_series(const std::vector<SP>& f, const Rat& a, const ZFrac& t_coeff, const Rat& trunc) {
  const int den = std::lcm(SymbolicSeries::grid_of(a), SymbolicSeries::grid_of(trunc));
  SymbolicSeries s(den, SymbolicSeries::index_of(trunc, den));
  ZFrac c(1);
  for (std::size_t j = 0; j < f.size(); ++j) {
    s.add_term(SymbolicSeries::index_of(a * static_cast<long>(j), den), f[j].scaled(c));
    c *= t_coeff;
  }
  return s;
}

SP lambda_class(const std::vector<SP>& chars, const AlgebraPtr& alg, const ZFrac& t) {
  const auto e = symmetric_functions(chars, alg, static_cast<int>(chars.size()), true);
  SP out(alg);
  ZFrac c(1);
  for (const auto& ej : e) {
    out += ej.scaled(c);
    c *= t;
  }
  return out;
}

std::vector<SP> chars_of(const std::vector<Root>& roots, int sign) {
  std::vector<SP> out;
  for (const auto& r : roots) out.push_back(char_of(r.weight, r.root, sign));
  return out;
}

std::vector<SP> concat(std::vector<SP> a, const std::vector<SP>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::vector<NilPoly<ZFrac>> tangent_characters(const FixedComponent& c) {
  std::vector<SP> out;
  for (const auto& x : flatten(c.normal)) {
    out.push_back(char_of(x.weight, x.root, 1));
    out.push_back(char_of(x.weight, x.root, -1));
  }
  for (const auto& y : c.tangent_roots) {
    out.push_back(char_of(0, y, 1));
    out.push_back(char_of(0, y, -1));
  }
  return out;
}

SymbolicSeries exterior_series(const std::vector<NilPoly<ZFrac>>& chars, const AlgebraPtr& alg, const Rat& a, int sign, bool reduced,
                               const Rat& trunc, const ZFrac& extra) {
  const ZFrac t = extra * ZFrac(static_cast<long>(sign));
  const int J = std::min(max_power(a, trunc), static_cast<int>(chars.size()));
  SymbolicSeries s = power_series(symmetric_functions(chars, alg, J, true), a, t, trunc);
  if (reduced && !chars.empty())
    s *= binomial_factor(SP(alg, t), a, -static_cast<long>(chars.size()), SP(alg, ZFrac(1)), trunc);
  return s;
}

SymbolicSeries symmetric_series(const std::vector<NilPoly<ZFrac>>& chars, const AlgebraPtr& alg, const Rat& a, bool reduced,
                                const Rat& trunc) {
  const int J = max_power(a, trunc);
  SymbolicSeries s = power_series(symmetric_functions(chars, alg, J, false), a, ZFrac(1), trunc);
  if (reduced && !chars.empty())
    s *= binomial_factor(SP(alg, ZFrac(-1)), a, static_cast<long>(chars.size()), SP(alg, ZFrac(1)), trunc);
  return s;
}

SymbolicSeries bundle_expand(const FixedPointModel& model, const OperatorSpec& spec, int component, const Rat& trunc) {
  const FixedComponent& c = model.components.at(static_cast<std::size_t>(component));
  const AlgebraPtr& alg = c.algebra;
  const SP one(alg, ZFrac(1));
  SymbolicSeries total = SymbolicSeries::constant(one, trunc);
  const auto tchars = tangent_characters(c);
  for (long m = 1; Rat(m) < trunc; ++m) total *= symmetric_series(tchars, alg, Rat(m), true, trunc);
  if (spec.kind == OpKind::Witten) return total;
  const auto vroots = flatten(c.V);
  if (spec.kind == OpKind::Loop) return total * table_series(spec.table, vroots, alg, SymbolicZ{}, trunc);

  const auto wroots = flatten(c.W);
  const auto w = chars_of(wroots, 1), wd = chars_of(wroots, -1);
  const int r = static_cast<int>(wroots.size());
  if (!spec.has_beta()) {
    total = total.scaled(lambda_class(wd, alg, ZFrac(-1)));
    const auto wc = concat(w, wd);
    for (long n = 1; Rat(n) < trunc; ++n) total *= exterior_series(wc, alg, Rat(n), -1, true, trunc);
  } else {
    if (spec.A(1, 0) != 0) throw DomainError("bundle expansion of the A-twisted series needs c = 0");
    const Rat b = spec.beta * spec.A(1, 1);
    const Rat twice = b * 2;
    if (denominator_of(twice) != 1) throw DomainError("exact bundle expansion supports y = e^{2 pi i beta} = -1 only");
    const bool y_is_one = numerator_of(twice) % 2 == 0;
    if (y_is_one && r > 0) throw PoleError("theta(beta)^r vanishes: beta is an integer");
    const ZFrac y(-1), yinv(-1);
    SP lead = lambda_class(wd, alg, ZFrac(-1) * yinv);
    for (int i = 0; i < r; ++i) lead = lead.scaled(ZFrac(1) / (ZFrac(1) - yinv));  // reduced: (1 - y^{-1})^{-r}
    total = total.scaled(lead);
    for (long n = 1; Rat(n) < trunc; ++n) {
      total *= exterior_series(w, alg, Rat(n), -1, true, trunc, y);
      total *= exterior_series(wd, alg, Rat(n), -1, true, trunc, yinv);
    }
  }
  const auto vc = concat(chars_of(vroots, 1), chars_of(vroots, -1));
  switch (spec.effective_j()) {
    case 1: {
      SP delta = one;
      for (const auto& v : vroots) {
        const NilPoly<Rat> half = scale_rat(v.root, Rat(1, 2));
        delta = delta * (to_ring<ZFrac>(half).exp().scaled(ZFrac::z_power(v.weight)) +
                         to_ring<ZFrac>(-half).exp().scaled(ZFrac::z_power(-v.weight)));
      }
      total = total.scaled(delta);
      for (long n = 1; Rat(n) < trunc; ++n) total *= exterior_series(vc, alg, Rat(n), +1, true, trunc);
      break;
    }
    case 2:
    case 3: {
      const int sign = spec.effective_j() == 2 ? -1 : 1;
      for (long n = 1; Rat(n) - Rat(1, 2) < trunc; ++n) total *= exterior_series(vc, alg, Rat(n) - Rat(1, 2), sign, true, trunc);
      break;
    }
  }
  return total;
}

namespace {

SP index_component(const FixedPointModel& model, const FixedComponent& c, const SP& cls, bool spinc_line) {
  const AlgebraPtr& alg = c.algebra;
  SP integrand = cls;
  for (const auto& y : c.tangent_roots) integrand = integrand * sinhc_half(to_ring<ZFrac>(y)).inverse();
  SP den(alg, ZFrac(1));
  for (const auto& x : flatten(c.normal)) {
    const NilPoly<Rat> half = scale_rat(x.root, Rat(1, 2));
    den = den * (to_ring<ZFrac>(half).exp().scaled(ZFrac::z_power(x.weight)) - to_ring<ZFrac>(-half).exp().scaled(ZFrac::z_power(-x.weight)));
  }
  integrand = integrand * den.inverse();
  if (spinc_line) integrand = integrand * to_ring<ZFrac>(scale_rat(c.c1, Rat(1, 2))).exp().scaled(ZFrac::z_power(c.lc));
  return fiber_integrate(integrand, c.push, model.base);
}

}  // namespace

NilPoly<ZFrac> index_character(const FixedPointModel& model, const std::vector<NilPoly<ZFrac>>& per_component, bool spinc_line) {
  if (per_component.size() != model.components.size()) throw DomainError("index_character: one class per component expected");
  SP total(model.base);
  for (std::size_t i = 0; i < model.components.size(); ++i)
    total += index_component(model, model.components[i], per_component[i], spinc_line);
  return total;
}

SymbolicSeries oracle_genus(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, int only_component) {
  check_spec_applicable(model, spec);
  const bool line = spec.is_spinc_family() && spec.kind != OpKind::Witten;
  SymbolicSeries total = SymbolicSeries::zero(trunc);
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    if (only_component >= 0 && static_cast<int>(i) != only_component) continue;
    const FixedComponent& c = model.components[i];
    const SymbolicSeries cls = bundle_expand(model, spec, static_cast<int>(i), trunc);
    total += cls.map_coeffs([&](const SP& x) { return index_component(model, c, x, line); });
  }
  if (spec.kind != OpKind::Witten && spec.kind != OpKind::Loop && spec.effective_j() == 1 && model.l() > 0) {
    const ZFrac eps(Rat(1) / Rat(BigInt(1) << model.l()));
    total = total.map_coeffs([&](const SP& x) { return x.scaled(eps); });
  }
  if (spec.kind == OpKind::Loop && spec.anomaly != 0) total = total.shifted(spec.anomaly);
  return total;
}

}  // namespace ellgen
