#include "ellgen/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ellgen {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw DomainError("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw DomainError("expected an integer, got '" + s + "'");
  return v;
}

// generators "h:2, a:4"
std::vector<Algebra::Var> parse_vars(const std::string& s) {
  std::vector<Algebra::Var> out;
  if (trim(s).empty()) return out;
  for (const auto& item : split(s, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("generator '" + item + "' needs a degree, as in h:2");
    out.push_back({trim(item.substr(0, colon)), to_int(trim(item.substr(colon + 1)))});
  }
  return out;
}

std::string vars_text(const std::vector<Algebra::Var>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? ", " : "") + vars[i].name + ":" + std::to_string(vars[i].degree);
  return out;
}

class PolyParser {
 public:
  PolyParser(const std::string& text, const AlgebraPtr& alg) : s_(text), alg_(alg) {}

  NilPoly<Rat> run() {
    skip();
    if (pos_ == s_.size()) throw DomainError("empty polynomial");
    NilPoly<Rat> acc(alg_);
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (!first) {
        if (s_[pos_] == '+') sign = 1;
        else if (s_[pos_] == '-') sign = -1;
        else throw DomainError("expected '+' or '-' at '" + s_.substr(pos_) + "'");
        ++pos_;
        skip();
      }
      while (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        if (s_[pos_] == '-') sign = -sign;
        ++pos_;
        skip();
      }
      acc += term().scaled(Rat(sign));
      first = false;
    }
    return acc;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  NilPoly<Rat> term() {
    Rat coef = 1;
    Monomial mono(alg_->size(), 0);
    while (true) {
      skip();
      if (pos_ == s_.size()) throw DomainError("polynomial ends after an operator");
      const char ch = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
        coef *= parse_rat(s_.substr(start, pos_ - start));
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        const int i = alg_->index_of(name);
        if (i < 0) throw DomainError("unknown generator '" + name + "'");
        int power = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          const std::size_t ps = pos_;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
          if (ps == pos_) throw DomainError("exponent expected after '^'");
          power = std::stoi(s_.substr(ps, pos_ - ps));
        }
        mono[static_cast<std::size_t>(i)] += power;
      } else if (ch == '(') {
        throw DomainError("parentheses are not supported in polynomials");
      } else {
        throw DomainError("unexpected character '" + std::string(1, ch) + "'");
      }
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    NilPoly<Rat> p(alg_);
    p.add_term(mono, coef);
    return p;
  }

  std::string s_;
  AlgebraPtr alg_;
  std::size_t pos_ = 0;
};

std::string fiber_monomial_text(const std::vector<Algebra::Var>& vars, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

Monomial parse_fiber_monomial(const std::string& s, const std::vector<Algebra::Var>& vars) {
  Monomial m(vars.size(), 0);
  if (trim(s) == "1") return m;
  for (const auto& f : split(s, '*')) {
    const auto caret = f.find('^');
    const std::string name = trim(f.substr(0, caret));
    const int p = caret == std::string::npos ? 1 : to_int(trim(f.substr(caret + 1)));
    std::size_t i = 0;
    while (i < vars.size() && vars[i].name != name) ++i;
    if (i == vars.size()) throw DomainError("'" + name + "' is not a fibre generator of this component");
    m[i] += p;
  }
  return m;
}

struct PendingComponent {
  std::string name;
  int line = 0;
  std::vector<Algebra::Var> fiber;
  int fiber_dim = 0;
  std::vector<std::pair<int, std::string>> lines;  // (line number, text) for deferred parsing
};

}  // namespace

NilPoly<Rat> parse_poly(const std::string& text, const AlgebraPtr& alg) { return PolyParser(text, alg).run(); }

FixedPointModel parse_model(const std::string& text) {
  FixedPointModel m;
  std::vector<Algebra::Var> base_vars;
  int base_trunc = -1;
  bool have_k = false;
  std::vector<PendingComponent> comps;
  enum class Section { Header, Base, Component } section = Section::Header;

  std::istringstream is(text);
  std::string raw;
  int lineno = 0, content_lines = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    ++content_lines;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw DomainError("unterminated section header");
        const std::string head = trim(line.substr(1, line.size() - 2));
        if (head == "base") {
          section = Section::Base;
        } else if (head.rfind("component", 0) == 0) {
          section = Section::Component;
          comps.push_back({trim(head.substr(9)), lineno, {}, 0, {}});
          if (comps.back().name.empty()) throw DomainError("component needs a name");
        } else {
          throw DomainError("unknown section '" + head + "'");
        }
        continue;
      }
      const auto sp = line.find_first_of(" \t");
      const std::string key = line.substr(0, sp);
      const std::string val = sp == std::string::npos ? "" : trim(line.substr(sp));
      switch (section) {
        case Section::Header:
          if (key == "model") m.name = val;
          else if (key == "note") m.note = val;
          else if (key == "k") {
            m.k = to_int(val);
            have_k = true;
          } else if (key == "level") m.level = to_int(val);
          else throw DomainError("unknown header key '" + key + "'");
          break;
        case Section::Base:
          if (key == "generators") base_vars = parse_vars(val);
          else if (key == "truncation") base_trunc = to_int(val);
          else throw DomainError("unknown base key '" + key + "'");
          break;
        case Section::Component: {
          auto& c = comps.back();
          if (key == "fiber") c.fiber = parse_vars(val);
          else if (key == "fiber_dim") c.fiber_dim = to_int(val);
          else c.lines.emplace_back(lineno, line);
          break;
        }
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (content_lines == 0) throw ParseError(lineno == 0 ? 1 : lineno, "empty model file");
  if (m.name.empty()) throw ParseError(1, "missing 'model <name>' line");
  if (!have_k) throw ParseError(1, "missing 'k <complex fibre dimension>' line");
  if (base_trunc < 0) base_trunc = 0;
  try {
    m.base = base_vars.empty() && base_trunc == 0 ? point_algebra() : make_algebra(base_vars, base_trunc);
  } catch (const Error& e) {
    throw ParseError(1, std::string("base algebra: ") + e.what());
  }
  if (comps.empty()) throw ParseError(lineno, "model has no [component] sections");

  for (const auto& pc : comps) {
    FixedComponent c;
    try {
      c = make_component(pc.name, m.base, pc.fiber, pc.fiber_dim);
    } catch (const Error& e) {
      throw ParseError(pc.line, e.what());
    }
    if (!pc.fiber.empty() || pc.fiber_dim != 0) c.push = PushForward{pc.fiber_dim, {}};
    for (const auto& [ln, line] : pc.lines) {
      try {
        const auto sp = line.find_first_of(" \t");
        const std::string key = line.substr(0, sp);
        const std::string val = sp == std::string::npos ? "" : trim(line.substr(sp));
        if (key == "tangent") {
          c.tangent_roots.push_back(parse_poly(val, c.algebra));
        } else if (key == "normal" || key == "V" || key == "W") {
          const auto colon = val.find(':');
          if (colon == std::string::npos) throw DomainError("bundle line needs 'weight: roots'");
          TwistBundle b;
          b.weight = to_int(trim(val.substr(0, colon)));
          for (const auto& r : split(val.substr(colon + 1), ',')) b.roots.push_back(parse_poly(r, c.algebra));
          if (b.roots.empty()) throw DomainError("bundle needs at least one root");
          (key == "normal" ? c.normal : key == "V" ? c.V : c.W).push_back(std::move(b));
        } else if (key == "c1") {
          c.c1 = parse_poly(val, c.algebra);
        } else if (key == "lc") {
          c.lc = to_int(val);
        } else if (key == "push") {
          const auto arrow = val.find("->");
          if (arrow == std::string::npos) throw DomainError("push line needs 'monomial -> class'");
          const Monomial fm = parse_fiber_monomial(trim(val.substr(0, arrow)), pc.fiber);
          if (!c.push.table.emplace(fm, parse_poly(trim(val.substr(arrow + 2)), m.base)).second)
            throw DomainError("duplicate pushforward entry");
        } else {
          throw DomainError("unknown component key '" + key + "'");
        }
      } catch (const Error& e) {
        throw ParseError(ln, e.what());
      }
    }
    m.components.push_back(std::move(c));
  }
  const auto problems = validate_model(m);
  if (!problems.empty()) throw ParseError(comps.front().line, "invalid model: " + problems.front());
  return m;
}

std::string serialize_model(const FixedPointModel& m) {
  std::ostringstream os;
  os << "model " << m.name << "\n";
  if (!m.note.empty()) os << "note " << m.note << "\n";
  os << "k " << m.k << "\n";
  os << "level " << m.level << "\n\n";
  os << "[base]\n";
  os << "generators " << vars_text(m.base->vars()) << "\n";
  os << "truncation " << m.base->trunc_degree() << "\n";
  for (const auto& c : m.components) {
    os << "\n[component " << c.name << "]\n";
    if (!c.fiber_vars.empty()) os << "fiber " << vars_text(c.fiber_vars) << "\n";
    if (c.fiber_dim != 0) os << "fiber_dim " << c.fiber_dim << "\n";
    for (const auto& y : c.tangent_roots) os << "tangent " << y.to_string() << "\n";
    auto bundles = [&](const char* key, const std::vector<TwistBundle>& parts) {
      for (const auto& b : parts) {
        os << key << " " << b.weight << ":";
        for (std::size_t i = 0; i < b.roots.size(); ++i) os << (i ? ", " : " ") << b.roots[i].to_string();
        os << "\n";
      }
    };
    bundles("normal", c.normal);
    bundles("V", c.V);
    bundles("W", c.W);
    if (!c.c1.is_zero()) os << "c1 " << c.c1.to_string() << "\n";
    if (c.lc != 0) os << "lc " << c.lc << "\n";
    if (!(c.fiber_vars.empty() && c.fiber_dim == 0))
      for (const auto& [fm, cls] : c.push.table) os << "push " << fiber_monomial_text(c.fiber_vars, fm) << " -> " << cls.to_string() << "\n";
  }
  return os.str();
}

FixedPointModel load_model(const std::string& where) {
  if (where.rfind("builtin:", 0) == 0) return builtin_model(where.substr(8));
  std::ifstream in(where);
  if (!in) throw Error("cannot open model file '" + where + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

CharacterTable parse_table(const std::string& text, const std::string& name) {
  CharacterTable t;
  t.name = name;
  Rat trunc = -1;
  std::map<std::vector<int>, std::vector<std::pair<Rat, Rat>>> raw;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    line = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (line.empty()) continue;
    try {
      if (line.rfind("trunc", 0) == 0) {
        trunc = parse_rat(trim(line.substr(5)));
        continue;
      }
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw DomainError("table line needs 'weights : exponent coefficient'");
      std::vector<int> key;
      for (const auto& w : split(line.substr(0, colon), ',')) key.push_back(to_int(w));
      std::istringstream rest(line.substr(colon + 1));
      std::string e, c, extra;
      if (!(rest >> e >> c) || (rest >> extra)) throw DomainError("expected 'exponent coefficient' after ':'");
      raw[key].emplace_back(parse_rat(e), parse_rat(c));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (trunc < 0) throw ParseError(1, "table needs a 'trunc T' line");
  if (raw.empty()) throw ParseError(lineno, "table has no entries");
  std::size_t len = raw.begin()->first.size();
  for (const auto& [key, terms] : raw) {
    if (key.size() != len) throw ParseError(lineno, "weight vectors of different lengths");
    QSeries<Rat> s = QSeries<Rat>::zero(trunc);
    for (const auto& [e, c] : terms) {
      if (e >= trunc) throw ParseError(lineno, "exponent " + to_text(e) + " is not below trunc");
      s = s + QSeries<Rat>::monomial(e, c).truncated(trunc);
    }
    t.entries.emplace(key, s);
  }
  return t;
}

CharacterTable load_table(const std::string& where, int l, const Rat& trunc) {
  if (where == "r1") return level_one_table(1, l, trunc);
  if (where == "r2") return level_one_table(2, l, trunc);
  if (where == "r3") return level_one_table(3, l, trunc);
  if (where == "trivial") return trivial_table(l);
  std::ifstream in(where);
  if (!in) throw Error("cannot open table file '" + where + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str(), where);
}

}  // namespace ellgen
