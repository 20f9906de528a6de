#include "ellgen/model.hpp"

#include <functional>
#include <sstream>

namespace ellgen {

int FixedPointModel::l() const {
  if (components.empty()) return 0;
  int s = 0;
  for (const auto& b : components.front().V) s += b.rank();
  return s;
}

int FixedPointModel::r() const {
  if (components.empty()) return 0;
  int s = 0;
  for (const auto& b : components.front().W) s += b.rank();
  return s;
}

bool FixedPointModel::is_spin() const {
  for (const auto& c : components)
    if (c.lc != 0 || !c.c1.is_zero()) return false;
  return true;
}

FixedComponent make_component(const std::string& name, const AlgebraPtr& base, std::vector<Algebra::Var> fiber_vars, int fiber_dim) {
  FixedComponent c;
  c.name = name;
  c.fiber_vars = std::move(fiber_vars);
  c.fiber_dim = fiber_dim;
  c.algebra = component_algebra(base, c.fiber_vars, fiber_dim);
  c.c1 = NilPoly<Rat>(c.algebra);
  if (c.fiber_vars.empty() && fiber_dim == 0) c.push = PushForward::identity(base);
  else c.push.fiber_dim = fiber_dim;
  return c;
}

FixedPointModel with_tangent_twist(const FixedPointModel& model) {
  FixedPointModel m = model;
  for (auto& c : m.components) {
    c.V = c.normal;
    if (!c.tangent_roots.empty()) c.V.push_back(TwistBundle{0, c.tangent_roots});
  }
  return m;
}

namespace {

bool homogeneous(const NilPoly<Rat>& p, int degree) {
  for (const auto& [m, c] : p.terms())
    if (monomial_degree(*p.algebra(), m) != degree) return false;
  return true;
}

// All exponent vectors over `vars` with total degree in [lo, hi].
void fiber_monomials(const std::vector<Algebra::Var>& vars, int lo, int hi, std::vector<Monomial>& out) {
  Monomial m(vars.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int deg) {
    if (i == vars.size()) {
      if (deg >= lo) out.push_back(m);
      return;
    }
    for (int e = 0; deg + e * vars[i].degree <= hi; ++e) {
      m[i] = e;
      rec(i + 1, deg + e * vars[i].degree);
    }
    m[i] = 0;
  };
  rec(0, 0);
}

}  // namespace

std::vector<std::string> validate_model(const FixedPointModel& model) {
  std::vector<std::string> out;
  if (!model.base) {
    out.push_back("model has no base algebra");
    return out;
  }
  if (model.k <= 0) out.push_back("fibre dimension k must be positive");
  if (model.level <= 0) out.push_back("level must be positive");
  if (model.components.empty()) out.push_back("model has no fixed components");
  const int l = model.l(), r = model.r();
  for (const auto& c : model.components) {
    const std::string where = "component '" + c.name + "': ";
    if (!c.algebra) {
      out.push_back(where + "missing algebra");
      continue;
    }
    if (!same_algebra(c.algebra, component_algebra(model.base, c.fiber_vars, c.fiber_dim)))
      out.push_back(where + "algebra does not extend the base by the declared fibre generators");
    int normal_rank = 0;
    for (const auto& b : c.normal) {
      normal_rank += b.rank();
      if (b.weight == 0) out.push_back(where + "zero rotation number on a normal bundle");
    }
    const int ka = static_cast<int>(c.tangent_roots.size());
    if (normal_rank + ka != model.k)
      out.push_back(where + "normal rank " + std::to_string(normal_rank) + " + fixed dimension " + std::to_string(ka) +
                    " != k = " + std::to_string(model.k));
    if (2 * ka != c.fiber_dim) out.push_back(where + "fixed fibre dimension does not match the number of tangent roots");
    auto check_class = [&](const NilPoly<Rat>& x, const std::string& what) {
      if (x.algebra() && !same_algebra(x.algebra(), c.algebra)) out.push_back(where + what + " lives in a different algebra");
      if (!is_zero(x.constant_term())) out.push_back(where + what + " has a constant term");
    };
    for (const auto& y : c.tangent_roots) check_class(y, "tangent root");
    int vl = 0, wr = 0;
    for (const auto& b : c.normal)
      for (const auto& x : b.roots) check_class(x, "normal root");
    for (const auto& b : c.V) {
      vl += b.rank();
      for (const auto& x : b.roots) check_class(x, "V root");
    }
    for (const auto& b : c.W) {
      wr += b.rank();
      for (const auto& x : b.roots) check_class(x, "W root");
    }
    check_class(c.c1, "c1");
    if (vl != l) out.push_back(where + "rank of V differs between components");
    if (wr != r) out.push_back(where + "rank of W differs between components");
    if (c.push.fiber_dim != c.fiber_dim) out.push_back(where + "pushforward fibre dimension differs from the component's");
    for (const auto& [key, val] : c.push.table) {
      if (key.size() != c.fiber_vars.size()) {
        out.push_back(where + "pushforward key has the wrong number of exponents");
        continue;
      }
      int deg = 0;
      for (std::size_t i = 0; i < key.size(); ++i) deg += key[i] * c.fiber_vars[i].degree;
      if (val.algebra() && !same_algebra(val.algebra(), model.base)) out.push_back(where + "pushforward value is not a base class");
      else if (!homogeneous(val, deg - c.fiber_dim)) out.push_back(where + "pushforward value has the wrong degree");
    }
    std::vector<Monomial> needed;
    fiber_monomials(c.fiber_vars, c.fiber_dim, c.algebra->trunc_degree(), needed);
    for (const auto& m : needed)
      if (!c.push.table.count(m)) {
        Monomial full(c.algebra->size(), 0);
        std::copy(m.begin(), m.end(), full.end() - static_cast<long>(m.size()));
        const std::string txt = monomial_text(*c.algebra, full);
        out.push_back(where + "missing pushforward entry for '" + (txt.empty() ? "1" : txt) + "'");
      }
  }
  return out;
}

void require_valid(const FixedPointModel& model) {
  const auto diag = validate_model(model);
  if (diag.empty()) return;
  std::string msg = "invalid model '" + model.name + "'";
  for (const auto& d : diag) msg += "\n  " + d;
  throw ModelError(msg);
}

std::string op_name(OpKind k) {
  switch (k) {
    case OpKind::Witten: return "witten";
    case OpKind::Loop: return "loop";
    case OpKind::F1: return "f1";
    case OpKind::F1Beta: return "f1beta";
    case OpKind::Fj: return "fj";
    case OpKind::FjBetaA: return "fjA";
  }
  return "?";
}

OpKind parse_op(const std::string& s) {
  for (OpKind k : {OpKind::Witten, OpKind::Loop, OpKind::F1, OpKind::F1Beta, OpKind::Fj, OpKind::FjBetaA})
    if (op_name(k) == s) return k;
  throw DomainError("unknown operator '" + s + "'");
}

CharacterTable CharacterTable::scaled(const Rat& c) const {
  CharacterTable t{name, {}, 0};
  for (const auto& [w, s] : entries) t.entries.emplace(w, s.scaled(c));
  return t;
}

CharacterTable trivial_table(int l) {
  CharacterTable t{"trivial", {}, 0};
  t.entries.emplace(std::vector<int>(static_cast<std::size_t>(l), 0), QSeries<Rat>::monomial(Rat(0), Rat(1)));
  return t;
}

CharacterTable level_one_table(int j, int l, const Rat& trunc) {
  if (j < 1 || j > 3) throw DomainError("level_one_table: j must be 1, 2 or 3");
  using L = Laurent<Rat>;
  std::vector<EulerFactor> f;
  if (j == 1) {
    for (long n = 1; Rat(n) < trunc; ++n) {
      f.push_back({Rat(n), 2, +1, 1});
      f.push_back({Rat(n), -2, +1, 1});
      f.push_back({Rat(n), 0, +1, -2});
    }
  } else {
    const int s = j == 2 ? -1 : 1;
    for (long n = 1; Rat(n) - Rat(1, 2) < trunc; ++n) {
      const Rat e = Rat(n) - Rat(1, 2);
      f.push_back({e, 2, s, 1});
      f.push_back({e, -2, s, 1});
      f.push_back({e, 0, s, -2});
    }
  }
  QSeries<L> one_var = euler_product(f, trunc);
  if (j == 1) one_var = one_var.scaled(L::monomial(1, Rat(1)) + L::monomial(-1, Rat(1)));
  // split by the power of w
  std::map<int, QSeries<Rat>> per_key;
  for (const auto& [n, lp] : one_var.terms())
    for (const auto& [e, c] : lp.terms()) {
      auto it = per_key.try_emplace(e, QSeries<Rat>(one_var.den(), one_var.trunc_index())).first;
      it->second.add_term(n, c);
    }
  std::map<std::vector<int>, QSeries<Rat>> acc;
  acc.emplace(std::vector<int>{}, QSeries<Rat>::constant(Rat(1), trunc));
  for (int i = 0; i < l; ++i) {
    std::map<std::vector<int>, QSeries<Rat>> next;
    for (const auto& [w, s] : acc)
      for (const auto& [e, t] : per_key) {
        auto key = w;
        key.push_back(e);
        QSeries<Rat> prod = s * t;
        if (!prod.is_zero()) next.emplace(std::move(key), std::move(prod));
      }
    acc = std::move(next);
  }
  return CharacterTable{"r" + std::to_string(j), std::move(acc), j};
}

int epsilon_class(const Eigen::Matrix2i& A) {
  if (A.determinant() != 1) throw DomainError("matrix is not in SL2(Z)");
  const int c = ((A(1, 0) % 2) + 2) % 2, d = ((A(1, 1) % 2) + 2) % 2;
  if (c == 0 && d == 1) return 1;
  if (c == 1 && d == 0) return 2;
  return 3;
}

namespace {

TwistBundle bundle(int weight, std::vector<NilPoly<Rat>> roots) { return TwistBundle{weight, std::move(roots)}; }

NilPoly<Rat> zero_root(const FixedComponent& c) { return NilPoly<Rat>(c.algebra); }

FixedPointModel sphere(const std::string& name, int v_north, int v_south, bool with_v, bool spinc) {
  FixedPointModel m;
  m.name = name;
  m.k = 1;
  m.base = point_algebra();
  const int weights[2] = {1, -1};
  const int vw[2] = {v_north, v_south};
  const char* names[2] = {"north", "south"};
  for (int i = 0; i < 2; ++i) {
    FixedComponent c = make_component(names[i], m.base, {}, 0);
    c.normal.push_back(bundle(weights[i], {zero_root(c)}));
    if (with_v) c.V.push_back(bundle(vw[i], {zero_root(c)}));
    if (spinc) {
      c.W.push_back(bundle(weights[i], {zero_root(c)}));
      c.lc = weights[i];
    }
    m.components.push_back(std::move(c));
  }
  return m;
}

FixedPointModel projective3(const std::vector<int>& lambda, bool with_v) {
  FixedPointModel m;
  std::ostringstream nm;
  nm << (with_v ? "cp3-v" : "cp3");
  if (lambda != std::vector<int>{0, 1, 2, 3}) {
    nm << ":";
    for (std::size_t i = 0; i < lambda.size(); ++i) nm << (i ? "," : "") << lambda[i];
  }
  m.name = nm.str();
  m.k = 3;
  m.base = point_algebra();
  for (std::size_t i = 0; i < 4; ++i) {
    FixedComponent c = make_component("p" + std::to_string(i), m.base, {}, 0);
    std::map<int, int> mult;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) ++mult[lambda[j] - lambda[i]];
    for (const auto& [w, d] : mult) {
      c.normal.push_back(bundle(w, std::vector<NilPoly<Rat>>(static_cast<std::size_t>(d), zero_root(c))));
      if (with_v) c.V.push_back(c.normal.back());
    }
    m.components.push_back(std::move(c));
  }
  m.note = "linear circle action on CP^3; fixed points are the coordinate points, tangent weights lambda_j - lambda_i";
  return m;
}

FixedPointModel hirzebruch(bool spinc) {
  FixedPointModel m;
  m.name = spinc ? "hirzebruch-spinc" : "hirzebruch";
  m.k = 1;
  m.base = make_algebra({{"h", 2}}, 2);
  const auto h = NilPoly<Rat>::variable(m.base, "h");
  const int weights[2] = {1, -1};
  const char* names[2] = {"zero-section", "infinity-section"};
  for (int i = 0; i < 2; ++i) {
    FixedComponent c = make_component(names[i], m.base, {}, 0);
    const NilPoly<Rat> root = lift_to_component(weights[i] > 0 ? -h : h, c.algebra);
    c.normal.push_back(bundle(weights[i], {root}));
    if (spinc) {
      c.W.push_back(bundle(weights[i], {root}));
      c.c1 = root;
      c.lc = weights[i];
    } else {
      c.V.push_back(bundle(weights[i], {root}));
    }
    m.components.push_back(std::move(c));
  }
  m.note = "P(O + O(-1)) -> CP^1 with the circle rotating the fibres; the two sections are the fixed components, "
           "their normal bundles are the vertical tangent line with first Chern class -h and h";
  return m;
}

FixedPointModel sphere_square() {
  FixedPointModel m;
  m.name = "s2xs2";
  m.k = 2;
  m.base = point_algebra();
  const int weights[2] = {1, -1};
  const char* names[2] = {"north-sphere", "south-sphere"};
  for (int i = 0; i < 2; ++i) {
    FixedComponent c = make_component(names[i], m.base, {{"a", 2}}, 2);
    const auto a = NilPoly<Rat>::variable(c.algebra, "a");
    c.tangent_roots.push_back(a.scaled(Rat(2)));
    c.normal.push_back(bundle(weights[i], {zero_root(c)}));
    c.push.table[{1}] = NilPoly<Rat>(m.base, Rat(1));
    m.components.push_back(std::move(c));
  }
  m.note = "S^2 x S^2 with the circle rotating the first factor; fixed set is two copies of S^2 with trivial normal bundle";
  return m;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"s2", "s2-v", "s2-v2", "s2-v-shifted", "s2-spinc", "s2xs2", "cp3", "cp3-v", "hirzebruch", "hirzebruch-spinc"};
}

FixedPointModel builtin_model(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  if (head == "cp3" || head == "cp3-v") {
    std::vector<int> lambda{0, 1, 2, 3};
    if (colon != std::string::npos) {
      lambda.clear();
      std::stringstream ss(name.substr(colon + 1));
      std::string tok;
      while (std::getline(ss, tok, ',')) lambda.push_back(std::stoi(tok));
      if (lambda.size() != 4) throw ModelError("cp3 takes four weights");
    }
    return projective3(lambda, head == "cp3-v");
  }
  if (colon != std::string::npos) throw ModelError("builtin '" + head + "' takes no parameters");
  FixedPointModel m;
  if (head == "s2") m = sphere("s2", 0, 0, false, false);
  else if (head == "s2-v") m = sphere("s2-v", 1, -1, true, false);
  else if (head == "s2-v2") m = sphere("s2-v2", 2, -2, true, false);
  else if (head == "s2-v-shifted") m = sphere("s2-v-shifted", 2, 0, true, false);
  else if (head == "s2-spinc") m = sphere("s2-spinc", 0, 0, false, true);
  else if (head == "s2xs2") m = sphere_square();
  else if (head == "hirzebruch") m = hirzebruch(false);
  else if (head == "hirzebruch-spinc") m = hirzebruch(true);
  else throw ModelError("unknown builtin model '" + name + "'");
  if (m.note.empty()) m.note = "round S^2 rotated about an axis; fixed points are the poles with tangent weights +1 and -1";
  return m;
}

}  // namespace ellgen
