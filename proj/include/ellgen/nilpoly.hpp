#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ellgen/rational.hpp"

namespace ellgen {

/// Even-degree generators with a total-degree truncation D. Models H^{even}
/// of a fixed component or of the base, with relations only through D.
class Algebra {
 public:
  struct Var {
    std::string name;
    int degree;
    friend bool operator==(const Var&, const Var&) = default;
  };

  Algebra(std::vector<Var> vars, int trunc_degree);

  const std::vector<Var>& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  int trunc_degree() const { return trunc_; }
  /// -1 if absent.
  int index_of(const std::string& name) const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.trunc_ == b.trunc_ && a.vars_ == b.vars_;
  }

 private:
  std::vector<Var> vars_;
  int trunc_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline AlgebraPtr make_algebra(std::vector<Algebra::Var> vars, int trunc_degree) {
  return std::make_shared<const Algebra>(std::move(vars), trunc_degree);
}

/// The algebra with no generators (cohomology of a point).
AlgebraPtr point_algebra();

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

using Monomial = std::vector<int>;

int monomial_degree(const Algebra& alg, const Monomial& m);
std::string monomial_text(const Algebra& alg, const Monomial& m);

/// Element of a truncated graded-commutative algebra with coefficients in K.
template <class K>
class NilPoly {
 public:
  using Terms = std::map<Monomial, K>;

  NilPoly() = default;
  explicit NilPoly(AlgebraPtr alg) : alg_(std::move(alg)) {}
  NilPoly(AlgebraPtr alg, const K& c) : alg_(std::move(alg)) { add_term(Monomial(alg_->size(), 0), c); }

  static NilPoly variable(const AlgebraPtr& alg, const std::string& name) {
    const int i = alg->index_of(name);
    if (i < 0) throw DomainError("unknown generator '" + name + "'");
    Monomial m(alg->size(), 0);
    m[i] = 1;
    NilPoly p(alg);
    p.add_term(m, K(1));
    return p;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  K constant_term() const {
    if (!alg_) return K(0);
    auto it = terms_.find(Monomial(alg_->size(), 0));
    return it == terms_.end() ? K(0) : it->second;
  }

  K coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K(0) : it->second;
  }

  /// Adds c*m, silently dropping monomials above the truncation degree.
  void add_term(const Monomial& m, const K& c) {
    if (ring::zero(c)) return;
    if (monomial_degree(*alg_, m) > alg_->trunc_degree()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (ring::zero(it->second)) terms_.erase(it);
    }
  }

  NilPoly& operator+=(const NilPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  NilPoly& operator-=(const NilPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, K(-c));
    return *this;
  }
  friend NilPoly operator+(NilPoly a, const NilPoly& b) { return a += b; }
  friend NilPoly operator-(NilPoly a, const NilPoly& b) { return a -= b; }
  friend NilPoly operator-(const NilPoly& a) {
    NilPoly r(a.alg_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, K(-c));
    return r;
  }

  friend NilPoly operator*(const NilPoly& a, const NilPoly& b) {
    a.check_same(b);
    NilPoly r(a.alg_ ? a.alg_ : b.alg_);
    Monomial m;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        m = ma;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.add_term(m, K(ca * cb));
      }
    return r;
  }
  NilPoly& operator*=(const NilPoly& o) { return *this = *this * o; }

  NilPoly scaled(const K& s) const {
    NilPoly r(alg_);
    for (const auto& [m, c] : terms_) r.add_term(m, K(c * s));
    return r;
  }

  friend bool operator==(const NilPoly& a, const NilPoly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    if (!same_algebra(a.alg_, b.alg_)) return false;
    return (a - b).is_zero();
  }

  /// Degree-p homogeneous component. p must be even.
  NilPoly grade_part(int p) const {
    if (p % 2 != 0) throw DomainError("grade_part: odd degree " + std::to_string(p));
    NilPoly r(alg_);
    for (const auto& [m, c] : terms_)
      if (monomial_degree(*alg_, m) == p) r.terms_.emplace(m, c);
    return r;
  }

  /// Psi_lambda: a degree-2p term is multiplied by lambda^p.
  NilPoly psi_scale(const K& lambda) const {
    NilPoly r(alg_);
    for (const auto& [m, c] : terms_) {
      K f = c;
      const int half = monomial_degree(*alg_, m) / 2;
      for (int i = 0; i < half; ++i) f = K(f * lambda);
      r.add_term(m, f);
    }
    return r;
  }

  /// sum x^j / j!, finite by nilpotency. Requires zero constant term.
  NilPoly exp() const {
    if (!ring::zero(constant_term())) throw DomainError("nil_exp: argument has a nonzero constant term");
    NilPoly result(alg_, K(1));
    NilPoly power(alg_, K(1));
    for (int j = 1; !power.is_zero(); ++j) {
      power = (power * *this).scaled(from_rat<K>(Rat(1) / Rat(j)));
      result += power;
    }
    return result;
  }

  /// Inverse for elements whose constant term is a unit of K.
  NilPoly inverse() const {
    const K c0 = constant_term();
    const K c0_inv = ring::inv(c0);
    NilPoly eps = scaled(c0_inv);
    eps -= NilPoly(alg_, K(1));  // nilpotent part
    NilPoly result(alg_, K(1));
    NilPoly power(alg_, K(1));
    const NilPoly neg_eps = -eps;
    while (true) {
      power *= neg_eps;
      if (power.is_zero()) break;
      result += power;
    }
    return result.scaled(c0_inv);
  }

  int max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(*alg_, m));
    return d;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using R = decltype(f(std::declval<const K&>()));
    NilPoly<R> r(alg_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      const std::string mono = monomial_text(*alg_, m);
      if (mono.empty()) {
        out += to_text(c);
      } else {
        out += to_text(c) + "*" + mono;
      }
    }
    return out;
  }

 private:
  void check_same(const NilPoly& o) const {
    if (alg_ && o.alg_ && !same_algebra(alg_, o.alg_)) throw IncompatibleRing("NilPoly operands belong to different algebras");
  }
  void adopt(const NilPoly& o) {
    check_same(o);
    if (!alg_) alg_ = o.alg_;
  }

  AlgebraPtr alg_;
  Terms terms_;
};

template <class K>
bool is_zero(const NilPoly<K>& p) {
  return p.is_zero();
}
template <class K>
NilPoly<K> one_like(const NilPoly<K>& p) {
  return NilPoly<K>(p.algebra(), K(1));
}
template <class K>
NilPoly<K> zero_like(const NilPoly<K>& p) {
  return NilPoly<K>(p.algebra());
}
template <class K>
NilPoly<K> inverse(const NilPoly<K>& p) {
  return p.inverse();
}
template <class K>
std::string to_text(const NilPoly<K>& p) {
  const std::string s = p.to_string();
  return p.terms().size() > 1 ? "(" + s + ")" : s;
}

template <class K>
NilPoly<K> scale_rat(const NilPoly<K>& p, const Rat& r) {
  return p.scaled(from_rat<K>(r));
}

/// Free-function spellings of the graded operations.
template <class K>
NilPoly<K> nil_mul(const NilPoly<K>& a, const NilPoly<K>& b) {
  return a * b;
}
template <class K>
NilPoly<K> nil_exp(const NilPoly<K>& x) {
  return x.exp();
}
template <class K>
NilPoly<K> psi_scale(const NilPoly<K>& a, const K& lambda) {
  return a.psi_scale(lambda);
}
template <class K>
NilPoly<K> grade_part(const NilPoly<K>& a, int p) {
  return a.grade_part(p);
}

/// Re-express `p` (coefficients converted by `conv`) in another coefficient field.
template <class K2, class K1, class F>
NilPoly<K2> convert_coeffs(const NilPoly<K1>& p, F&& conv) {
  NilPoly<K2> r(p.algebra());
  for (const auto& [m, c] : p.terms()) r.add_term(m, conv(c));
  return r;
}

}  // namespace ellgen
