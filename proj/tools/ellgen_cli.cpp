#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ellgen/model_io.hpp"
#include "ellgen/verify.hpp"

using namespace ellgen;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string model = "builtin:s2";
  std::string op = "witten";
  int j = 1;
  std::string beta;
  int N = 2;
  std::string A = "S";
  std::string table = "r1";
  std::string anomaly = "0";
  std::string trunc = "2";
  std::string mode = "exact";
  std::string t = "0.3+0.02i";
  int component = -1;
  std::string out;
  bool as_json = false;
  double tol = 1e-8;
  int samples = 0;
  int maxdeg = 0;
  long seed = -1;
  std::vector<std::string> suites;
};

Complex parse_complex(std::string s) {
  std::string c;
  for (char ch : s)
    if (ch != ' ') c += ch;
  if (c.empty()) throw DomainError("empty complex number");
  if (c.back() != 'i') return {std::stod(c), 0.0};
  c.pop_back();
  std::size_t cut = std::string::npos;
  for (std::size_t k = c.size(); k-- > 1;)
    if ((c[k] == '+' || c[k] == '-') && c[k - 1] != 'e' && c[k - 1] != 'E') {
      cut = k;
      break;
    }
  const std::string re = cut == std::string::npos ? "" : c.substr(0, cut);
  std::string im = cut == std::string::npos ? c : c.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  std::size_t used = 0;
  const double imv = std::stod(im, &used);
  if (used != im.size()) throw DomainError("cannot read complex number '" + s + "'");
  return {re.empty() ? 0.0 : std::stod(re), imv};
}

std::string complex_text(Complex z) {
  std::ostringstream os;
  os << std::setprecision(15) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

struct Setup {
  FixedPointModel model;
  OperatorSpec spec;
  std::vector<std::string> notes;
};

Setup setup(const Options& o) {
  Setup s;
  s.model = load_model(o.model);
  std::string op = o.op;
  const bool alias = op == "r1" || op == "r2" || op == "r3";
  if (alias) {
    if (s.model.l() == 0) {
      s.model = with_tangent_twist(s.model);
      s.notes.push_back("model has no V; using V = TX");
    }
    s.spec.kind = OpKind::Loop;
    s.spec.table = load_table(op, s.model.l(), parse_rat(o.trunc) + 2);
  } else {
    s.spec.kind = parse_op(op);
    if (s.spec.kind == OpKind::Loop) s.spec.table = load_table(o.table, s.model.l(), parse_rat(o.trunc) + 2);
  }
  s.spec.j = o.j;
  s.spec.anomaly = parse_rat(o.anomaly);
  if (s.spec.has_beta()) {
    s.spec.N = o.N;
    s.spec.beta = o.beta.empty() ? Rat(1, o.N) : parse_rat(o.beta);
    if (s.spec.kind == OpKind::FjBetaA) s.spec.A = parse_matrix(o.A);
  }
  return s;
}

void emit(const Options& o, const json& report, const std::string& text) {
  const std::string body = o.as_json ? report.dump(2) + "\n" : text;
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error("cannot write '" + o.out + "'");
    f << body;
  }
}

json header(const Options& o, const Setup& s, const std::string& command) {
  json j;
  j["tool"] = "ellgen";
  j["version"] = kVersion;
  j["command"] = command;
  j["model"] = s.model.name;
  j["op"] = op_name(s.spec.kind);
  if (s.spec.kind == OpKind::Fj || s.spec.kind == OpKind::FjBetaA) j["j"] = s.spec.j;
  if (s.spec.kind == OpKind::Loop) j["table"] = s.spec.table.name;
  if (s.spec.has_beta()) j["beta"] = to_text(s.spec.beta);
  j["trunc"] = o.trunc;
  j["mode"] = o.mode;
  j["seed"] = o.seed;
  j["notes"] = s.notes;
  return j;
}

template <class Series>
void fill_table(const Series& series, const FixedPointModel& m, json& rows, std::ostringstream& text) {
  for (const auto& [idx, coeff] : series.terms()) {
    const std::string q = to_text(Rat(idx) / Rat(series.den()));
    for (const auto& [mono, c] : coeff.terms()) {
      std::string b = monomial_text(*m.base, mono);
      if (b.empty()) b = "1";
      rows.push_back({{"q", q}, {"base", b}, {"coefficient", to_text(c)}});
      text << "q^(" << q << ")\t" << b << "\t" << to_text(c) << "\n";
    }
  }
}

int cmd_expand(const Options& o) {
  const Setup s = setup(o);
  const Rat T = parse_rat(o.trunc);
  json rep = header(o, s, "expand");
  json rows = json::array();
  std::ostringstream text;
  text << "# model " << s.model.name << "  op " << op_name(s.spec.kind) << "  trunc " << o.trunc << "  mode " << o.mode << "\n";
  for (const auto& n : s.notes) text << "# " << n << "\n";
  std::string canonical;
  if (parse_mode(o.mode) == Mode::Exact) {
    const auto series = genus_symbolic(s.model, s.spec, T, o.component);
    fill_table(series, s.model, rows, text);
    canonical = series.to_string();
  } else {
    const Complex t = parse_complex(o.t);
    rep["t"] = complex_text(t);
    const auto series = genus_numeric(s.model, s.spec, t, T, o.component);
    fill_table(series, s.model, rows, text);
    canonical = series.to_string();
  }
  if (rows.empty()) text << "(all coefficients zero)\n";
  text << "series: " << canonical << "\n";
  rep["table"] = rows;
  rep["series"] = canonical;
  emit(o, rep, text.str());
  return 0;
}

std::vector<Sample> samples_for(const Options& o) {
  const int count = o.samples > 0 ? o.samples : 10;
  if (o.seed < 0) return default_samples(count);
  std::mt19937_64 rng(static_cast<unsigned long>(o.seed));
  std::uniform_real_distribution<double> re(0.0, 1.0), small(0.01, 0.05), tre(-0.5, 0.5), tim(0.8, 2.0);
  std::vector<Sample> out;
  for (int i = 0; i < count; ++i) out.push_back({Complex(re(rng), small(rng)), Complex(tre(rng), tim(rng))});
  return out;
}

json residual_json(const JacobiCheckReport& r) {
  json arr = json::array();
  for (const auto& x : r.residuals)
    arr.push_back({{"transform", x.transform}, {"degree", x.base_degree}, {"t", complex_text(x.t)}, {"tau", complex_text(x.tau)}, {"residual", x.value}});
  return {{"index", to_text(r.index)}, {"weight", r.weight}, {"max_residual", r.max_residual}, {"pass", r.pass}, {"notes", r.notes}, {"residuals", arr}};
}

json rigidity_json(const RigidityVerdict& v) {
  json entries = json::array();
  for (const auto& e : v.entries)
    entries.push_back({{"q", to_text(e.q_exponent)}, {"base_degree", e.base_degree}, {"laurent", e.laurent}, {"spread", e.spread},
                       {"nonconstant", e.nonconstant}, {"constant", e.constant}, {"polynomial", e.polynomial}});
  return {{"mode", mode_name(v.mode)}, {"constant", v.constant}, {"fit_residual", v.fit_residual}, {"window", v.window},
          {"sample_count", v.samples.size()}, {"entries", entries}};
}

int cmd_verify(const Options& o) {
  const Setup s = setup(o);
  const Rat T = parse_rat(o.trunc);
  RigidityOptions ro;
  ro.mode = parse_mode(o.mode);
  ro.samples = o.mode == "numeric" ? o.samples : 0;
  ro.maxdeg = o.maxdeg;
  ro.tol = o.tol;
  std::vector<std::string> suites = o.suites.empty() ? std::vector<std::string>{"anomaly", "rigidity", "jacobi", "vanishing", "zeros"} : o.suites;

  json rep = header(o, s, "verify");
  json checks = json::object();
  std::ostringstream text;
  text << "# model " << s.model.name << "  op " << op_name(s.spec.kind) << "  trunc " << o.trunc << "  mode " << o.mode << "\n";
  for (const auto& n : s.notes) text << "# " << n << "\n";
  bool all = true;
  auto verdict = [&](const std::string& name, bool pass, const std::string& detail) {
    all = all && pass;
    text << (pass ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
  };

  const AnomalyReport an = anomaly_n(s.model, s.spec);
  for (const auto& suite : suites) {
    try {
      if (suite == "anomaly") {
        json per = json::array();
        std::string ns;
        for (std::size_t i = 0; i < an.n.size(); ++i) {
          per.push_back({{"component", an.components[i]}, {"n", to_text(an.n[i])}, {"square_residual", to_text(an.square_residual[i])},
                         {"weighted_residual", to_text(an.weighted_residual[i])}});
          ns += (i ? "," : "") + to_text(an.n[i]);
        }
        checks["anomaly"] = {{"components", per}, {"n", an.global ? json(to_text(*an.global)) : json("INCONSISTENT")}, {"pass", an.consistent()}};
        verdict("anomaly", an.consistent(), "n per component = " + ns + (an.consistent() ? "" : " (inconsistent)"));
      } else if (suite == "rigidity") {
        const auto v = check_rigidity(s.model, s.spec, T, ro);
        checks["rigidity"] = rigidity_json(v);
        std::string detail = v.constant ? "CONSTANT" : "NOT CONSTANT";
        for (const auto& e : v.entries)
          if (!e.constant) {
            detail += "; q^(" + to_text(e.q_exponent) + ") degree " + std::to_string(e.base_degree) + ": " + e.laurent;
            break;
          }
        verdict("rigidity", v.constant, detail);
      } else if (suite == "jacobi") {
        if (!an.consistent()) {
          checks["jacobi"] = {{"pass", false}, {"error", "anomaly inconsistent; no index to test"}};
          verdict("jacobi", false, "anomaly inconsistent; no index to test");
          continue;
        }
        const int step = s.spec.has_beta() ? 2 * (s.spec.N > 0 ? s.spec.N : 2) : 2;
        const auto smp = samples_for(o);
        const auto q = check_quasi_periodicity(s.model, s.spec, *an.global, {{step, 0}, {0, step}, {step, step}}, smp, o.tol);
        std::ostringstream d;
        d << "quasi max " << q.max_residual;
        if (s.spec.kind == OpKind::Loop && s.spec.table.level_one_j == 0) {
          checks["jacobi"] = {{"quasi_periodicity", residual_json(q)}, {"modular", "skipped: needs a level-one table"}, {"pass", q.pass}};
          verdict("jacobi", q.pass, d.str() + "; modular skipped (table has no closed form)");
          continue;
        }
        const Eigen::Matrix2i A = parse_matrix(o.A);
        const auto mw = check_modular_weight(s.model, s.spec, A, *an.global, smp, o.tol);
        checks["jacobi"] = {{"quasi_periodicity", residual_json(q)}, {"modular", residual_json(mw)}, {"pass", q.pass && mw.pass}};
        d << ", modular max " << mw.max_residual;
        for (const auto& n : mw.notes) d << "; " << n;
        verdict("jacobi", q.pass && mw.pass, d.str());
      } else if (suite == "vanishing") {
        const auto v = check_vanishing(s.model, s.spec, T, ro);
        checks["vanishing"] = {{"verdict", v.verdict}, {"n", v.n ? json(to_text(*v.n)) : json(nullptr)}, {"largest", v.largest},
                               {"detail", v.detail}, {"pass", v.pass}};
        verdict("vanishing", v.pass, v.verdict + (v.detail.empty() ? "" : " (" + v.detail + ")"));
      } else if (suite == "zeros") {
        const Complex tau(0.0, 1.0);
        const Complex corner = Complex(-0.93, 0.0) - 0.91 * tau + Complex(0.0, 0.003);
        auto F = [&](Complex t) { return genus_direct(s.model, s.spec, t, tau).constant_term(); };
        double size = 0;
        for (int k = 0; k < 8; ++k) size = std::max(size, std::abs(F(corner + Complex(0.25 * k, 0.0) + 0.3 * tau)));
        if (size < 1e-12) {
          checks["zeros"] = {{"pass", true}, {"detail", "F is identically zero; contour check excluded"}};
          verdict("zeros", true, "F identically zero, skipped");
          continue;
        }
        const auto z = count_zeros(F, corner, 2.0, 2.0 * tau);
        const bool expect_none = an.consistent() && *an.global == 0;
        const bool pass = !expect_none || z.count == 0;
        checks["zeros"] = {{"count", z.count}, {"raw", z.raw}, {"residual", z.residual}, {"pass", pass}};
        verdict("zeros", pass, "count " + std::to_string(z.count) + " over the (2Z)^2 cell at tau = i");
      } else {
        throw DomainError("unknown suite '" + suite + "'");
      }
    } catch (const DomainError& e) {
      throw;
    } catch (const Error& e) {
      checks[suite] = {{"pass", false}, {"error", e.what()}};
      verdict(suite, false, std::string("error: ") + e.what());
    }
  }
  rep["checks"] = checks;
  rep["pass"] = all;
  emit(o, rep, text.str());
  return all ? 0 : 1;
}

int cmd_theta(const std::string& kind_s, const std::string& v_s, const std::string& tau_s, bool formal, const std::string& trunc,
              const Options& o) {
  const ThetaKind kind = parse_theta_kind(kind_s);
  json rep{{"tool", "ellgen"}, {"version", kVersion}, {"command", "theta"}, {"kind", kind_name(kind)}};
  std::ostringstream text;
  if (formal) {
    const auto f = theta_qexp(kind, ThetaArg{1, NilPoly<Rat>(point_algebra()), 0}, SymbolicZ{}, parse_rat(trunc));
    const char* unit[4] = {"", "i*", "-", "-i*"};
    const std::string series = f.series.map_coeffs([](const NilPoly<ZFrac>& x) { return x.constant_term(); }).to_string();
    rep["prefactor"] = unit[f.pre.i_power % 4];
    rep["series"] = series;
    text << unit[f.pre.i_power % 4] << "(" << series << ")\n";
  } else {
    const Complex v = parse_complex(v_s), tau = parse_complex(tau_s);
    if (!(tau.imag() > 0)) throw DomainError("tau must have positive imaginary part");
    const Complex val = theta_numeric(kind, v, tau);
    rep["v"] = complex_text(v);
    rep["tau"] = complex_text(tau);
    rep["value"] = complex_text(val);
    text << complex_text(val) << "\n";
  }
  emit(o, rep, text.str());
  return 0;
}

void add_model_options(CLI::App* c, Options& o) {
  c->add_option("--model", o.model, "model file or builtin:<name>");
  c->add_option("--op", o.op, "witten, loop, f1, f1beta, fj, fjA, or r1/r2/r3 (loop with a level-one table)");
  c->add_option("--j", o.j, "theta class for fj / fjA");
  c->add_option("--beta", o.beta, "beta for the beta variants (default 1/N)");
  c->add_option("--N", o.N, "N for the beta variants");
  c->add_option("--A", o.A, "SL2 element 'a,b;c,d' or a word in S, T, t");
  c->add_option("--table", o.table, "character table for loop: r1, r2, r3, trivial or a file");
  c->add_option("--anomaly", o.anomaly, "q-shift m_Lambda of the loop character");
  c->add_option("--trunc", o.trunc, "q-truncation order");
  c->add_option("--mode", o.mode, "exact or numeric");
  c->add_option("--tol", o.tol, "numeric tolerance");
  c->add_option("--out", o.out, "write the report here instead of stdout");
  c->add_flag("--json", o.as_json, "machine-readable report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic genera of circle actions: q-expansions and verification"};
  app.require_subcommand(1);
  Options o;

  auto* expand = app.add_subcommand("expand", "q-expansion of a genus series");
  add_model_options(expand, o);
  expand->add_option("--t", o.t, "complex t for numeric mode");
  expand->add_option("--component", o.component, "restrict to one fixed component");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_model_options(verify, o);
  verify->add_option("--suite", o.suites, "anomaly, rigidity, jacobi, vanishing, zeros (repeatable)")->delimiter(',');
  verify->add_option("--samples", o.samples, "sample count (rigidity interpolation in numeric mode, Jacobi samples)");
  verify->add_option("--maxdeg", o.maxdeg, "z-degree window for interpolation");
  verify->add_option("--seed", o.seed, "draw random Jacobi samples from this seed");

  std::string kind = "theta", v = "0", tau = "i", ttrunc = "10";
  bool formal = false;
  auto* theta = app.add_subcommand("theta", "evaluate or expand a theta function");
  theta->add_option("--kind", kind, "theta, theta1, theta2, theta3");
  theta->add_option("--v", v, "complex argument");
  theta->add_option("--tau", tau, "complex modulus, e.g. i or 0.5+1i");
  theta->add_flag("--formal", formal, "print the q-expansion in z instead of a value");
  theta->add_option("--trunc", ttrunc, "q-truncation for --formal");
  theta->add_option("--out", o.out, "write here instead of stdout");
  theta->add_flag("--json", o.as_json, "machine-readable report");

  CLI11_PARSE(app, argc, argv);
  try {
    if (expand->parsed()) return cmd_expand(o);
    if (verify->parsed()) return cmd_verify(o);
    if (theta->parsed()) return cmd_theta(kind, v, tau, formal, ttrunc, o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
