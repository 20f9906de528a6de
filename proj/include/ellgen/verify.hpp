#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ellgen/genus.hpp"

namespace ellgen {

// ------------------------------------------------------------- anomaly

struct AnomalyReport {
  std::vector<std::string> components;
  std::vector<Rat> n;
  // Largest coefficient left over in each identity, per component.
  std::vector<Rat> square_residual;    // sum of squared roots (degree 4)
  std::vector<Rat> weighted_residual;  // sum of weight * root (degree 2)
  std::optional<Rat> global;           // empty when inconsistent

  bool consistent() const { return global.has_value(); }
};

/// Per-component anomaly n from the rotation numbers, plus the two
/// cohomological identities that must hold for n to be a global constant.
/// Loop: n = m sum n_v^2 - sum m^2. Others: n = sum n_v^2 + sum r^2 - sum m^2
/// (Witten ignores V and W).
AnomalyReport anomaly_n(const FixedPointModel& model, const OperatorSpec& spec);

// ------------------------------------------------------------- rigidity

enum class Mode { Exact, Numeric };
std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct CoefficientFit {
  Rat q_exponent;
  Monomial base;       // base-algebra monomial
  int base_degree = 0;
  std::string laurent;     // fitted or exact Laurent polynomial in z
  int spread = 0;          // max - min exponent, in half units
  double nonconstant = 0;  // largest non-constant coefficient (0 when exact)
  bool constant = true;
  bool polynomial = true;  // false when the exact coefficient keeps a pole
};

struct RigidityVerdict {
  Mode mode = Mode::Exact;
  std::vector<CoefficientFit> entries;
  std::vector<double> samples;  // real t values, numeric mode
  int window = 0;               // half-unit degree window, numeric mode
  double fit_residual = 0;
  bool constant = true;
};

struct RigidityOptions {
  Mode mode = Mode::Exact;
  int samples = 0;  // 0: 2 * window + 1 in half units, rounded up to an odd count
  int maxdeg = 0;   // z-degree window; 0: default from the weights
  double tol = 1e-8;
};

/// Default z-degree window: (max |weight|) * (trunc + 1) + k.
int default_maxdeg(const FixedPointModel& model, const Rat& trunc);

RigidityVerdict check_rigidity(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, const RigidityOptions& opt);

// ------------------------------------------------------------- Jacobi

struct Residual {
  std::string transform;
  int base_degree = 0;
  Complex t, tau;
  double value = 0;
};

struct JacobiCheckReport {
  Rat index;   // n / 2
  int weight;  // without the base-degree contribution
  std::vector<Residual> residuals;
  std::vector<std::string> notes;
  double max_residual = 0;
  bool pass = true;
};

struct Sample {
  Complex t, tau;
};

/// Fixed reproducible sample set: t = 0.1 + 0.07 j (mod 1) with a small
/// imaginary offset, tau cycling through i, 1/2 + i, 2i.
std::vector<Sample> default_samples(int count);

/// F(t + a tau + b, tau) against e^{-pi i n (a^2 tau + 2 a t)} F(t, tau).
/// (a, b) must lie in (2Z)^2, or (2NZ)^2 for the beta variant.
JacobiCheckReport check_quasi_periodicity(const FixedPointModel& model, const OperatorSpec& spec, const Rat& n,
                                          const std::vector<std::pair<int, int>>& shifts, const std::vector<Sample>& samples,
                                          double tol, int only_component = -1);

/// Which j the level-one family lands on after acting by A, starting from j.
int theta_class_after(int j, const Eigen::Matrix2i& A);

/// F(A(t, tau)) against (c tau + d)^weight e^{pi i n c t^2 / (c tau + d)} Psi_{c tau + d} F'(t, tau),
/// where F' is the operator with j replaced by its image under A (and the
/// A-twisted series for beta). weight < 0 selects k - r (k for beta).
/// For A = 1 mod 2N in the beta case, also compares F'(t, tau) with F.
/// Both checks hold term by term, so a single component may be selected.
JacobiCheckReport check_modular_weight(const FixedPointModel& model, const OperatorSpec& spec, const Eigen::Matrix2i& A, const Rat& n,
                                       const std::vector<Sample>& samples, double tol, int weight = -1, int only_component = -1);

/// Parse an SL2 matrix "a,b;c,d" or a word in S, T, t.
Eigen::Matrix2i parse_matrix(const std::string& text);

// ------------------------------------------------------------- vanishing

struct VanishingVerdict {
  std::string verdict;  // VANISHES, NONZERO, RIGID, NOT_RIGID, INCONSISTENT, NO_CLAIM
  std::optional<Rat> n;
  std::optional<RigidityVerdict> rigidity;
  double largest = 0;
  bool pass = false;
  std::string detail;
};

VanishingVerdict check_vanishing(const FixedPointModel& model, const OperatorSpec& spec, const Rat& trunc, const RigidityOptions& opt);

// ------------------------------------------------------------- zeros

struct ZeroCount {
  int count = 0;
  double raw = 0;  // real part of the contour integral
  double residual = 0;
};

/// Number of zeros minus poles of f in the parallelogram
/// corner + [0,1] period1 + [0,1] period2, by adaptive quadrature of f'/f.
ZeroCount count_zeros(const std::function<Complex(Complex)>& f, Complex corner, Complex period1, Complex period2, double tol = 1e-9);

}  // namespace ellgen
