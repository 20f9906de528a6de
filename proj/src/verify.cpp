#include "ellgen/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace ellgen {

namespace {

bool uses_V(const OperatorSpec& s) { return s.kind != OpKind::Witten; }
bool uses_W(const OperatorSpec& s) { return s.kind != OpKind::Witten && s.kind != OpKind::Loop; }

Rat largest(const NilPoly<Rat>& p) {
  Rat m = 0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, c < 0 ? Rat(-c) : c);
  return m;
}

double largest(const NilPoly<Complex>& p) {
  double m = 0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

// max |a - b| / max(1, |a|, |b|) over the monomials of one base degree
double relative_gap(const NilPoly<Complex>& a, const NilPoly<Complex>& b) {
  const NilPoly<Complex> diff = a - b;
  return largest(diff) / std::max({1.0, largest(a), largest(b)});
}

std::vector<int> base_degrees(const AlgebraPtr& base) {
  std::vector<int> out;
  for (int p = 0; p <= base->trunc_degree(); p += 2) out.push_back(p);
  return out;
}

std::string format_complex(Complex c) {
  std::ostringstream os;
  os << std::setprecision(10);
  if (std::abs(c.imag()) < 1e-12) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

int lattice_step(const OperatorSpec& spec) {
  if (!spec.has_beta()) return 2;
  const int N = spec.N > 0 ? spec.N : static_cast<int>(denominator_of(spec.beta));
  return 2 * N;
}

}  // namespace

// ------------------------------------------------------------- anomaly

AnomalyReport anomaly_n(const FixedPointModel& model, const OperatorSpec& spec) {
  AnomalyReport rep;
  const Rat level = spec.kind == OpKind::Loop ? Rat(model.level) : Rat(1);
  for (const auto& c : model.components) {
    NilPoly<Rat> squares(c.algebra), weighted(c.algebra);
    Rat n = 0;
    auto add = [&](const std::vector<TwistBundle>& parts, const Rat& sign) {
      for (const auto& b : parts)
        for (const auto& x : b.roots) {
          squares += scale_rat(x * x, sign);
          weighted += scale_rat(x, sign * b.weight);
          n += sign * b.weight * b.weight;
        }
    };
    if (uses_V(spec)) add(c.V, level);
    if (uses_W(spec)) add(c.W, Rat(1));
    add(c.normal, Rat(-1));
    for (const auto& y : c.tangent_roots) squares -= y * y;
    rep.components.push_back(c.name);
    rep.n.push_back(n);
    rep.square_residual.push_back(largest(squares));
    rep.weighted_residual.push_back(largest(weighted));
  }
  bool ok = !rep.n.empty();
  for (std::size_t i = 0; i < rep.n.size(); ++i)
    ok = ok && rep.n[i] == rep.n.front() && rep.square_residual[i] == 0 && rep.weighted_residual[i] == 0;
  if (ok) rep.global = rep.n.front();
  return rep;
}

// ------------------------------------------------------------- rigidity

std::string mode_name(Mode m) { return m == Mode::Exact ? "exact" : "numeric"; }

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "numeric") return Mode::Numeric;
  throw DomainError("mode must be exact or numeric, got '" + s + "'");
}

int default_maxdeg(const FixedPointModel& model, const Rat& trunc) {
  int w = 1;
  for (const auto& c : model.components)
    for (const auto* parts : {&c.normal, &c.V, &c.W})
      for (const auto& b : *parts) w = std::max(w, std::abs(b.weight));
  const Rat order = trunc + 1;
  const BigInt up = (numerator_of(order) + denominator_of(order) - 1) / denominator_of(order);
  return w * static_cast<int>(up) + model.k;
}

namespace {

RigidityVerdict rigidity_exact(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc) {
  RigidityVerdict v;
  v.mode = Mode::Exact;
  const SymbolicSeries s = genus_symbolic(model, spec, trunc);
  for (const auto& [idx, coeff] : s.terms())
    for (const auto& [mono, zf] : coeff.terms()) {
      CoefficientFit f;
      f.q_exponent = Rat(idx) / Rat(s.den());
      f.base = mono;
      f.base_degree = monomial_degree(*model.base, mono);
      const auto lp = zf.to_laurent();
      if (!lp) {
        f.polynomial = false;
        f.constant = false;
        f.laurent = zf.to_string();
      } else {
        f.laurent = lp->to_string();
        f.spread = lp->max_exp() - lp->min_exp();
        f.constant = lp->size() == 1 && lp->min_exp() == 0;
      }
      v.constant = v.constant && f.constant;
      v.entries.push_back(std::move(f));
    }
  return v;
}

RigidityVerdict rigidity_numeric(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, const RigidityOptions& opt) {
  RigidityVerdict v;
  v.mode = Mode::Numeric;
  const int D = opt.maxdeg > 0 ? opt.maxdeg : default_maxdeg(model, trunc);
  const int W = 2 * D;  // half units: basis w^e, w = z^{1/2}
  const int cols = 2 * W + 1;
  const int M = opt.samples > 0 ? opt.samples : cols + 6;
  if (M < cols)
    throw DomainError("interpolation needs at least " + std::to_string(cols) + " samples for z-degree window " + std::to_string(D) + ", got " +
                      std::to_string(M));
  v.window = W;

  std::vector<NumericSeries> values;
  Eigen::MatrixXcd V(M, cols);
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * (j + 0.381966) / M;
    v.samples.push_back(t);
    values.push_back(genus_numeric(model, spec, Complex(t, 0.0), trunc));
    const Complex w = std::exp(Complex(0.0, kPi * t));
    for (int e = -W; e <= W; ++e) V(j, e + W) = std::pow(w, e);
  }
  std::set<std::pair<long, Monomial>> keys;
  const int den = values.front().den();
  for (const auto& s : values) {
    if (s.den() != den) throw std::logic_error("sample series on different grids");
    for (const auto& [idx, coeff] : s.terms())
      for (const auto& [mono, c] : coeff.terms()) keys.insert({idx, mono});
  }
  const auto qr = V.colPivHouseholderQr();
  for (const auto& [idx, mono] : keys) {
    Eigen::VectorXcd b(M);
    for (int j = 0; j < M; ++j) {
      const auto& terms = values[static_cast<std::size_t>(j)].terms();
      auto it = terms.find(idx);
      b(j) = it == terms.end() ? Complex(0.0, 0.0) : it->second.coeff(mono);
    }
    const Eigen::VectorXcd a = qr.solve(b);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    v.fit_residual = std::max(v.fit_residual, (V * a - b).cwiseAbs().maxCoeff() / scale);

    CoefficientFit f;
    f.q_exponent = Rat(idx) / Rat(den);
    f.base = mono;
    f.base_degree = monomial_degree(*model.base, mono);
    std::ostringstream text;
    int lo = W + 1, hi = -W - 1;
    bool first = true;
    for (int e = -W; e <= W; ++e) {
      const Complex c = a(e + W);
      if (e != 0) f.nonconstant = std::max(f.nonconstant, std::abs(c));
      if (std::abs(c) <= opt.tol * scale) continue;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      if (!first) text << " + ";
      first = false;
      text << format_complex(c);
      if (e != 0) text << "*z^(" << half_exponent_text(e) << ")";
    }
    f.laurent = first ? "0" : text.str();
    f.spread = hi >= lo ? hi - lo : 0;
    f.constant = f.nonconstant <= opt.tol * scale;
    v.constant = v.constant && f.constant;
    v.entries.push_back(std::move(f));
  }
  if (v.fit_residual > opt.tol) v.constant = false;
  return v;
}

}  // namespace

RigidityVerdict check_rigidity(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, const RigidityOptions& opt) {
  return opt.mode == Mode::Exact ? rigidity_exact(model, spec, trunc) : rigidity_numeric(model, spec, trunc, opt);
}

// ------------------------------------------------------------- Jacobi

std::vector<Sample> default_samples(int count) {
  const Complex taus[3] = {Complex(0.0, 1.0), Complex(0.5, 1.0), Complex(0.0, 2.0)};
  std::vector<Sample> out;
  for (int j = 0; j < count; ++j) {
    const double re = std::fmod(0.1 + 0.07 * j, 1.0);
    out.push_back({Complex(re, 0.013 + 0.004 * (j % 5)), taus[j % 3]});
  }
  return out;
}

namespace {

NilPoly<Complex> direct_or_explain(const FixedPointModel& model, const OperatorSpec& spec, Complex t, Complex tau, int only) {
  try {
    return genus_direct(model, spec, t, tau, only);
  } catch (const PoleError& e) {
    throw PoleError(std::string(e.what()) + "; retry with samples moved off the lattice of poles (shift t by a small non-real amount)");
  }
}

void record(JacobiCheckReport& rep, const std::string& transform, const AlgebraPtr& base, const NilPoly<Complex>& lhs,
            const NilPoly<Complex>& rhs, const Sample& s, double tol) {
  for (int p : base_degrees(base)) {
    const double r = relative_gap(lhs.grade_part(p), rhs.grade_part(p));
    rep.residuals.push_back({transform, p, s.t, s.tau, r});
    rep.max_residual = std::max(rep.max_residual, r);
    if (!(r < tol)) rep.pass = false;
  }
}

int nominal_weight(const FixedPointModel& model, const OperatorSpec& spec) {
  if (spec.kind == OpKind::Witten || spec.kind == OpKind::Loop || spec.has_beta()) return model.k;
  return model.k - model.r();
}

}  // namespace

JacobiCheckReport check_quasi_periodicity(const FixedPointModel& model, const OperatorSpec& spec, const Rat& n,
                                          const std::vector<std::pair<int, int>>& shifts, const std::vector<Sample>& samples,
                                          double tol, int only_component) {
  JacobiCheckReport rep;
  rep.index = n / 2;
  rep.weight = nominal_weight(model, spec);
  const int step = lattice_step(spec);
  const double nd = to_double(n);
  for (const auto& [a, b] : shifts)
    if (a % step != 0 || b % step != 0)
      throw DomainError("shift (" + std::to_string(a) + ", " + std::to_string(b) + ") is not in the lattice (" + std::to_string(step) +
                        "Z)^2");
  for (const auto& s : samples) {
    if (!(s.tau.imag() > 0)) throw DomainError("tau must lie in the upper half plane");
    const NilPoly<Complex> base = direct_or_explain(model, spec, s.t, s.tau, only_component);
    for (const auto& [a, b] : shifts) {
      const NilPoly<Complex> lhs = direct_or_explain(model, spec, s.t + double(a) * s.tau + double(b), s.tau, only_component);
      const Complex factor = std::exp(Complex(0.0, -kPi * nd) * (double(a * a) * s.tau + 2.0 * a * s.t));
      record(rep, "shift(" + std::to_string(a) + "," + std::to_string(b) + ")", model.base, lhs, base.scaled(factor), s, tol);
    }
  }
  return rep;
}

int theta_class_after(int j, const Eigen::Matrix2i& A) {
  Eigen::Matrix2i B = Eigen::Matrix2i::Identity();
  if (j == 2) B << 0, -1, 1, 0;
  else if (j == 3) B << 1, 0, 1, 1;
  else if (j != 1) throw DomainError("j must be 1, 2 or 3");
  return epsilon_class(B * A);
}

JacobiCheckReport check_modular_weight(const FixedPointModel& model, const OperatorSpec& spec, const Eigen::Matrix2i& A, const Rat& n,
                                       const std::vector<Sample>& samples, double tol, int weight, int only_component) {
  if (A.determinant() != 1) throw DomainError("A must lie in SL2(Z)");
  JacobiCheckReport rep;
  rep.index = n / 2;
  rep.weight = weight >= 0 ? weight : nominal_weight(model, spec);
  const int a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);

  OperatorSpec target = spec;
  double rescale = 1.0;
  if (spec.kind == OpKind::Loop) {
    const int j = spec.table.level_one_j;
    if (j == 0) {
      if (A != Eigen::Matrix2i::Identity()) throw DomainError("modular check of a loop operator needs a level-one character table");
    } else {
      const int jt = theta_class_after(j, A);
      target.table = level_one_table(jt, model.l(), Rat(1));
      rescale = std::pow(2.0, model.l() * ((j == 1) - (jt == 1)));
      rep.notes.push_back("table class " + std::to_string(j) + " -> " + std::to_string(jt));
    }
  } else if (spec.kind != OpKind::Witten) {
    const int jt = theta_class_after(spec.effective_j(), A);
    target.j = jt;
    if (spec.has_beta()) {
      target.kind = OpKind::FjBetaA;
      target.A = A;
    } else {
      target.kind = OpKind::Fj;
    }
    rep.notes.push_back("epsilon_A = " + std::to_string(jt));
  }

  const bool collapse = spec.has_beta() && spec.effective_j() == 1 && spec.A == Eigen::Matrix2i::Identity() &&
                        c % lattice_step(spec) == 0 && (a - 1) % lattice_step(spec) == 0 && (d - 1) % lattice_step(spec) == 0;
  for (const auto& s : samples) {
    const Complex ct = double(c) * s.tau + double(d);
    const NilPoly<Complex> lhs = direct_or_explain(model, spec, s.t / ct, (double(a) * s.tau + double(b)) / ct, only_component);
    const NilPoly<Complex> moved = direct_or_explain(model, target, s.t, s.tau, only_component);
    const Complex factor = std::pow(ct, rep.weight) * std::exp(Complex(0.0, kPi * to_double(n) * c) * s.t * s.t / ct) * rescale;
    record(rep, "A", model.base, lhs, moved.psi_scale(ct).scaled(factor), s, tol);
    if (collapse) record(rep, "collapse", model.base, moved, direct_or_explain(model, spec, s.t, s.tau, only_component), s, tol);
  }
  if (collapse) rep.notes.push_back("A lies in Gamma_1(2N): twisted series compared with the untwisted one");
  return rep;
}

Eigen::Matrix2i parse_matrix(const std::string& text) {
  if (text.find(',') == std::string::npos) return word_matrix(text);
  std::string cleaned;
  for (char ch : text) cleaned += (ch == ',' || ch == ';') ? ' ' : ch;
  std::istringstream is(cleaned);
  Eigen::Matrix2i A;
  if (!(is >> A(0, 0) >> A(0, 1) >> A(1, 0) >> A(1, 1))) throw DomainError("matrix must look like 'a,b;c,d'");
  std::string rest;
  if (is >> rest) throw DomainError("matrix must look like 'a,b;c,d'");
  if (A.determinant() != 1) throw DomainError("matrix must have determinant 1");
  return A;
}

// ------------------------------------------------------------- vanishing

VanishingVerdict check_vanishing(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, const RigidityOptions& opt) {
  VanishingVerdict v;
  const AnomalyReport rep = anomaly_n(model, spec);
  v.n = rep.global;

  auto measure = [&]() {
    if (opt.mode == Mode::Exact) {
      const SymbolicSeries s = genus_symbolic(model, spec, trunc);
      v.largest = s.terms().empty() ? 0.0 : 1.0;
      return s.terms().empty();
    }
    for (const auto& smp : default_samples(7)) {
      const NumericSeries s = genus_numeric(model, spec, smp.t, trunc);
      for (const auto& [idx, c] : s.terms()) v.largest = std::max(v.largest, largest(c));
    }
    return v.largest < opt.tol;
  };

  if (!rep.consistent()) {
    v.verdict = "INCONSISTENT";
    const bool zero = measure();
    v.detail = std::string("anomaly differs between components or the root identities fail; the series ") +
               (zero ? "nevertheless vanishes" : "does not vanish") + " through the requested order";
    return v;
  }
  const Rat n = *rep.global;
  if (n < 0) {
    v.pass = measure();
    v.verdict = v.pass ? "VANISHES" : "NONZERO";
    return v;
  }
  if (n == 0) {
    v.rigidity = check_rigidity(model, spec, trunc, opt);
    v.pass = v.rigidity->constant;
    v.verdict = v.pass ? "RIGID" : "NOT_RIGID";
    return v;
  }
  const bool twisted = (uses_V(spec) && model.l() > 0) || (uses_W(spec) && model.r() > 0);
  if (!twisted) {
    v.verdict = "INCONSISTENT";
    v.detail = "positive anomaly without V or W contradicts -n = sum of squared rotation numbers";
    return v;
  }
  v.verdict = "NO_CLAIM";
  v.pass = true;
  v.detail = "positive anomaly: no vanishing or rigidity statement applies";
  return v;
}

// ------------------------------------------------------------- zeros

namespace {

struct Edge {
  Complex from, step;
};

Complex log_derivative(const std::function<Complex(Complex)>& f, Complex z, double h) {
  const Complex fz = f(z);
  const Complex d = (f(z + h) - f(z - h)) / (2.0 * h);
  return d / fz;
}

Complex simpson(const std::function<Complex(double)>& g, double a, double b, Complex fa, Complex fm, Complex fb, Complex whole, double tol,
                int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const Complex flm = g(lm), frm = g(rm);
  const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson(g, a, m, fa, flm, fm, left, tol / 2, depth - 1) + simpson(g, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

ZeroCount count_zeros(const std::function<Complex(Complex)>& f, Complex corner, Complex period1, Complex period2, double tol) {
  if ((period2 / period1).imag() == 0.0) throw DomainError("cell periods are parallel");
  if ((period2 / period1).imag() < 0) std::swap(period1, period2);
  const Edge edges[4] = {{corner, period1}, {corner + period1, period2}, {corner + period1 + period2, -period1}, {corner + period2, -period2}};
  const double scale = std::max(std::abs(period1), std::abs(period2));
  const double h = 1e-6 * scale;
  Complex total(0.0, 0.0);
  for (const auto& e : edges) {
    for (int i = 0; i <= 64; ++i) {
      const Complex z = e.from + e.step * (i / 64.0);
      if (std::abs(f(z)) < 1e-6)
        throw DomainError("contour passes within 1e-6 of a zero or pole near " + format_complex(z) + "; shift the cell corner");
    }
    const std::function<Complex(double)> g = [&](double s) { return log_derivative(f, e.from + e.step * s, h) * e.step; };
    // Split each edge so the adaptive rule starts from a reasonable mesh.
    const int pieces = 16;
    for (int k = 0; k < pieces; ++k) {
      const double a = double(k) / pieces, b = double(k + 1) / pieces;
      const Complex fa = g(a), fm = g(0.5 * (a + b)), fb = g(b);
      total += simpson(g, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol / pieces, 30);
    }
  }
  const Complex winding = total / Complex(0.0, 2.0 * kPi);
  ZeroCount zc;
  zc.raw = winding.real();
  zc.count = static_cast<int>(std::lround(zc.raw));
  zc.residual = std::abs(winding - Complex(zc.count, 0.0));
  if (!(zc.residual < 0.1)) throw DomainError("contour integral " + format_complex(winding) + " is not near an integer; refine or shift the cell");
  return zc;
}

}  // namespace ellgen
