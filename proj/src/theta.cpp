#include "ellgen/theta.hpp"

#include <algorithm>
#include <cmath>

namespace ellgen {

namespace {

const Complex kI(0.0, 1.0);

Complex qpow(Complex tau, double e) { return std::exp(Complex(0.0, 2.0 * kPi * e) * tau); }

void require_upper_half(Complex tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half-plane");
}

// Number of product factors needed so that |q|^{n - off} * growth < 1e-17.
long factor_count(Complex tau, double growth, double offset) {
  const double aq = std::exp(-2.0 * kPi * tau.imag());
  const double need = (std::log(1e-17) - std::log(std::max(growth, 1.0))) / std::log(aq) + offset + 1.0;
  const long n = static_cast<long>(std::ceil(std::max(need, 1.0)));
  if (n > 200000) throw DomainError("theta product needs too many factors; Im tau is too small");
  return n;
}

bool is_cos_type(ThetaKind k) { return k == ThetaKind::Theta1; }
bool is_half_type(ThetaKind k) { return k == ThetaKind::Theta2 || k == ThetaKind::Theta3; }
int product_sign(ThetaKind k) { return (k == ThetaKind::Theta || k == ThetaKind::Theta2) ? -1 : 1; }

}  // namespace

std::string kind_name(ThetaKind k) {
  switch (k) {
    case ThetaKind::Theta: return "theta";
    case ThetaKind::Theta1: return "theta1";
    case ThetaKind::Theta2: return "theta2";
    case ThetaKind::Theta3: return "theta3";
  }
  return "?";
}

ThetaKind parse_theta_kind(const std::string& s) {
  if (s == "theta") return ThetaKind::Theta;
  if (s == "theta1") return ThetaKind::Theta1;
  if (s == "theta2") return ThetaKind::Theta2;
  if (s == "theta3") return ThetaKind::Theta3;
  throw DomainError("unknown theta kind '" + s + "'");
}

Complex theta_numeric(ThetaKind kind, Complex v, Complex tau) {
  require_upper_half(tau);
  const Complex q = qpow(tau, 1.0);
  const Complex w = std::exp(Complex(0.0, 2.0 * kPi) * v);
  const double growth = std::max(std::abs(w), 1.0 / std::abs(w));
  const double off = is_half_type(kind) ? 0.5 : 0.0;
  const long N = factor_count(tau, growth, off);
  const double sgn = product_sign(kind);
  Complex prod(1.0, 0.0);
  Complex qn = is_half_type(kind) ? qpow(tau, 0.5) : q;  // q^{n - off} at n = 1
  for (long n = 1; n <= N; ++n) {
    const Complex qn_full = std::pow(q, static_cast<double>(n));
    prod *= (1.0 - qn_full) * (1.0 + sgn * qn * w) * (1.0 + sgn * qn / w);
    qn *= q;
  }
  if (is_half_type(kind)) return prod;
  const Complex e = std::exp(Complex(0.0, kPi) * v);
  const Complex lead = is_cos_type(kind) ? e + 1.0 / e : (e - 1.0 / e) / kI;
  return qpow(tau, 1.0 / 8.0) * lead * prod;
}

Complex theta_prime_zero(Complex tau) {
  require_upper_half(tau);
  const Complex q = qpow(tau, 1.0);
  const long N = factor_count(tau, 1.0, 0.0);
  Complex c(1.0, 0.0), qn = q;
  for (long n = 1; n <= N; ++n, qn *= q) c *= 1.0 - qn;
  return 2.0 * kPi * qpow(tau, 1.0 / 8.0) * c * c * c;
}

NilPoly<Complex> theta_numeric(ThetaKind kind, Complex v0, const NilPoly<Complex>& X, Complex tau) {
  require_upper_half(tau);
  if (!X.algebra()) throw DomainError("theta_numeric: argument has no algebra");
  if (std::abs(X.constant_term()) != 0.0) throw DomainError("theta_numeric: nilpotent part has a constant term");
  const AlgebraPtr& alg = X.algebra();
  const NilPoly<Complex> half = X.scaled(Complex(0.5, 0.0));
  const Complex e0 = std::exp(Complex(0.0, kPi) * v0);
  const NilPoly<Complex> E = half.exp().scaled(e0);
  const NilPoly<Complex> Einv = (-half).exp().scaled(1.0 / e0);
  const NilPoly<Complex> w = E * E, winv = Einv * Einv;
  const Complex w0 = e0 * e0;
  const double growth = std::max(std::abs(w0), 1.0 / std::abs(w0));
  const double off = is_half_type(kind) ? 0.5 : 0.0;
  const long N = factor_count(tau, growth, off);
  const Complex q = qpow(tau, 1.0);
  const double sgn = product_sign(kind);
  const NilPoly<Complex> one(alg, Complex(1.0, 0.0));
  NilPoly<Complex> prod = one;
  Complex qn = is_half_type(kind) ? qpow(tau, 0.5) : q;
  Complex c(1.0, 0.0), qc = q;
  for (long n = 1; n <= N; ++n) {
    c *= 1.0 - qc;
    qc *= q;
    prod = prod * (one + w.scaled(sgn * qn)) * (one + winv.scaled(sgn * qn));
    qn *= q;
  }
  prod = prod.scaled(c);
  if (is_half_type(kind)) return prod;
  const NilPoly<Complex> lead = is_cos_type(kind) ? E + Einv : (E - Einv).scaled(1.0 / kI);
  return (lead * prod).scaled(qpow(tau, 1.0 / 8.0));
}

NilPoly<Complex> theta_over_arg_numeric(const NilPoly<Complex>& Y, Complex tau) {
  require_upper_half(tau);
  if (std::abs(Y.constant_term()) != 0.0) throw DomainError("theta_over_arg_numeric: argument has a constant term");
  const AlgebraPtr& alg = Y.algebra();
  const NilPoly<Complex> one(alg, Complex(1.0, 0.0));
  const NilPoly<Complex> w = Y.exp(), winv = (-Y).exp();
  const long N = factor_count(tau, 1.0, 0.0);
  const Complex q = qpow(tau, 1.0);
  NilPoly<Complex> prod = one;
  Complex qn = q, c(1.0, 0.0);
  for (long n = 1; n <= N; ++n, qn *= q) {
    c *= 1.0 - qn;
    prod = prod * (one - w.scaled(qn)) * (one - winv.scaled(qn));
  }
  // theta(Y/2 pi i) = -i q^{1/8} c (e^{Y/2} - e^{-Y/2}) prod
  return (sinhc_half(Y) * prod).scaled(-kI * qpow(tau, 1.0 / 8.0) * c);
}

double check_elliptic_shift(ThetaKind kind, Complex v, Complex tau, int a, int b) {
  if (kind != ThetaKind::Theta && kind != ThetaKind::Theta1)
    throw DomainError("check_elliptic_shift covers theta and theta1");
  if (a == 0 && b == 0) return 0.0;
  const double sign = ((kind == ThetaKind::Theta ? a + b : b) % 2 == 0) ? 1.0 : -1.0;
  const Complex factor = sign * std::exp(Complex(0.0, -kPi * a * a) * tau) * std::exp(Complex(0.0, -2.0 * kPi * a) * v);
  const Complex lhs = theta_numeric(kind, v + static_cast<double>(a) * tau + static_cast<double>(b), tau);
  const Complex rhs = factor * theta_numeric(kind, v, tau);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

namespace {

// One generator: theta_kind(g(v, tau)) = factor * theta_target(v, tau).
ModularAction generator_action(ThetaKind kind, char g, Complex v, Complex tau) {
  ModularAction r{kind, Complex(1.0, 0.0), v, tau};
  switch (g) {
    case 'S': {
      const Complex root = std::sqrt(tau / kI);
      const Complex gauss = std::exp(kI * kPi * v * v / tau);
      r.v_image = v / tau;
      r.tau_image = -1.0 / tau;
      r.factor = root * gauss;
      if (kind == ThetaKind::Theta) r.factor *= -kI;
      if (kind == ThetaKind::Theta1) r.target = ThetaKind::Theta2;
      if (kind == ThetaKind::Theta2) r.target = ThetaKind::Theta1;
      break;
    }
    case 'T':
    case 't': {
      const double dir = g == 'T' ? 1.0 : -1.0;
      r.tau_image = tau + dir;
      if (kind == ThetaKind::Theta || kind == ThetaKind::Theta1) r.factor = std::exp(Complex(0.0, dir * kPi / 4.0));
      if (kind == ThetaKind::Theta2) r.target = ThetaKind::Theta3;
      if (kind == ThetaKind::Theta3) r.target = ThetaKind::Theta2;
      break;
    }
    default:
      throw DomainError(std::string("unknown modular generator '") + g + "'");
  }
  return r;
}

ThetaKind generator_target(ThetaKind kind, char g) { return generator_action(kind, g, Complex(0.1, 0.0), Complex(0.0, 1.0)).target; }

}  // namespace

ModularAction modular_action(ThetaKind kind, const std::string& word, Complex v, Complex tau) {
  if (word.empty()) return {kind, Complex(1.0, 0.0), v, tau};
  const char g = word[0];
  const ModularAction rest = modular_action(generator_target(kind, g), word.substr(1), v, tau);
  const ModularAction head = generator_action(kind, g, rest.v_image, rest.tau_image);
  return {rest.target, head.factor * rest.factor, head.v_image, head.tau_image};
}

double check_modular(ThetaKind kind, Complex v, Complex tau, const std::string& word) {
  const ModularAction act = modular_action(kind, word, v, tau);
  const Complex lhs = theta_numeric(kind, act.v_image, act.tau_image);
  const Complex rhs = act.factor * theta_numeric(act.target, v, tau);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

Eigen::Matrix2i word_matrix(const std::string& word) {
  Eigen::Matrix2i m = Eigen::Matrix2i::Identity();
  for (char g : word) {
    Eigen::Matrix2i x;
    if (g == 'S') x << 0, -1, 1, 0;
    else if (g == 'T') x << 1, 1, 0, 1;
    else if (g == 't') x << 1, -1, 0, 1;
    else throw DomainError(std::string("unknown modular generator '") + g + "'");
    m = m * x;
  }
  return m;
}

Complex Prefactor::value() const {
  Complex r = std::pow(Complex(0.0, 2.0 * kPi), two_pi_i);
  static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return r * ipow[((i_power % 4) + 4) % 4];
}

std::pair<ZFrac, int> SymbolicZ::phase(const Rat& beta) const {
  const Rat twice = beta * 2;
  if (denominator_of(twice) != 1) throw DomainError("exact mode supports theta shifts in (1/2)Z only; use numeric mode");
  const long s = static_cast<long>(numerator_of(twice));
  return {ZFrac(1), static_cast<int>(((s % 4) + 4) % 4)};
}

Complex evaluate_formal(const Formal<ZFrac>& f, Complex t, Complex tau) {
  const Complex scale = f.pre.value();
  return scale * f.series.evaluate(tau, [&](const NilPoly<ZFrac>& c) { return c.constant_term().evaluate_at_t(t); });
}

Complex evaluate_formal(const Formal<Complex>& f, Complex tau) {
  return f.pre.value() * f.series.evaluate(tau, [](const NilPoly<Complex>& c) { return c.constant_term(); });
}

Eigen::MatrixXd Lattice::gram_double() const {
  const Eigen::Index l = static_cast<Eigen::Index>(gram.size());
  Eigen::MatrixXd g(l, l);
  for (Eigen::Index i = 0; i < l; ++i) {
    if (static_cast<Eigen::Index>(gram[static_cast<std::size_t>(i)].size()) != l) throw DomainError("gram matrix is not square");
    for (Eigen::Index j = 0; j < l; ++j) g(i, j) = to_double(gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return g;
}

LatticeThetaResult lattice_theta(const Lattice& lat, const std::vector<Rat>& lambda_bar, int m, const Eigen::VectorXcd& z,
                                 Complex tau, Complex u, double tol) {
  require_upper_half(tau);
  if (m <= 0) throw DomainError("lattice_theta: level must be positive");
  const Eigen::MatrixXd G = lat.gram_double();
  const Eigen::Index l = G.rows();
  for (std::size_t i = 0; i < lat.gram.size(); ++i)
    for (std::size_t j = 0; j < lat.gram.size(); ++j)
      if (lat.gram[i][j] != lat.gram[j][i]) throw DomainError("gram matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw DomainError("gram matrix is not positive definite");
  if (static_cast<Eigen::Index>(lambda_bar.size()) != l || z.size() != l) throw DomainError("lattice_theta: dimension mismatch");
  Eigen::VectorXd shift(l);
  for (Eigen::Index i = 0; i < l; ++i) shift(i) = to_double(lambda_bar[static_cast<std::size_t>(i)] / Rat(m));
  const Eigen::VectorXd diag_inv = G.inverse().diagonal();
  const Eigen::VectorXcd Gz = G.cast<Complex>() * z;

  Complex sum(0.0, 0.0);
  long points = 0;
  double radius = 2.0, inner = -1.0, bound = 0.0;
  while (true) {
    // points with inner < (gamma, gamma) <= radius, in a deterministic order
    std::vector<long> lo(static_cast<std::size_t>(l)), hi(static_cast<std::size_t>(l));
    for (Eigen::Index i = 0; i < l; ++i) {
      const double r = std::sqrt(radius * diag_inv(i));
      lo[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(-r - shift(i)));
      hi[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil(r - shift(i)));
    }
    std::vector<long> n(lo);
    Complex shell(0.0, 0.0);
    long count = 0;
    while (true) {
      Eigen::VectorXd g(l);
      for (Eigen::Index i = 0; i < l; ++i) g(i) = static_cast<double>(n[static_cast<std::size_t>(i)]) + shift(i);
      const double norm = g.dot(G * g);
      if (norm > inner && norm <= radius) {
        const Complex pairing = (g.cast<Complex>().transpose() * Gz)(0);
        const Complex term = std::exp(Complex(0.0, kPi * m) * tau * norm + Complex(0.0, 2.0 * kPi * m) * pairing);
        shell += term;
        ++count;
      }
      std::size_t k = 0;
      while (k < n.size() && ++n[k] > hi[k]) n[k] = lo[k], ++k;
      if (k == n.size()) break;
    }
    sum += shell;
    points += count;
    // terms beyond the current radius: |term| <= e^{-pi m Im(tau) N + 2 pi m |gamma| |Im Gz|}
    double growth = 0.0, box = 1.0;
    for (Eigen::Index i = 0; i < l; ++i) {
      const double r = std::sqrt(2.0 * radius * diag_inv(i)) + std::abs(shift(i));
      growth += 2.0 * kPi * m * r * std::abs(Gz(i).imag());
      box *= 2.0 * r + 1.0;
    }
    bound = box * std::exp(-kPi * m * tau.imag() * radius + growth);
    if (bound < tol / 10.0) break;
    if (radius > 1e6) throw DomainError("lattice_theta: cutoff did not converge");
    inner = radius;
    radius *= 2.0;
  }
  return {std::exp(Complex(0.0, 2.0 * kPi * m) * u) * sum, bound, points};
}

Rat char_anomaly(const CharAnomalyInput& in) {
  const int s = in.level + in.dual_coxeter;
  if (s == 0) throw DomainError("char_anomaly: level + dual Coxeter number vanishes");
  return in.norm_lambda_plus_2rho_lambda / Rat(2 * s) - Rat(in.level) * Rat(in.dim_g) / Rat(24 * s);
}

}  // namespace ellgen
