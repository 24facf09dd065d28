#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "srg/signal.hpp"

namespace srg {

/// Proper rational transfer function num(s) / den(s).
///
/// Coefficients are stored in ascending powers of s: {1, 2} is 1 + 2s.
/// Trailing (highest-order) zero coefficients are dropped on construction.
class RationalTF {
 public:
  RationalTF(std::vector<double> num, std::vector<double> den);

  /// Pure gain k.
  static RationalTF gain(double k) { return RationalTF({k}, {1.0}); }

  const std::vector<double>& num() const noexcept { return num_; }
  const std::vector<double>& den() const noexcept { return den_; }

  /// num(s) / den(s) by Horner's rule. No pole check.
  cplx operator()(cplx s) const;

  bool strictly_proper() const noexcept { return num_.size() < den_.size(); }

  /// Limit of G(j omega) as omega -> infinity.
  double high_frequency_gain() const noexcept;

  friend bool operator==(const RationalTF&, const RationalTF&) = default;

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

/// G(j omega). Throws PoleOnAxis if den(j omega) vanishes.
cplx tf_eval(const RationalTF& g, double omega);

/// |omega| of a pole on the imaginary axis, if den has one. Roots come from
/// the companion matrix; |Re p| <= 1e-7 max(1, |p|) counts as on the axis.
std::optional<double> imaginary_axis_pole(const RationalTF& g);

/// Exact LTI action on the periodic grid: y(n) = G(j n omega0) u(n).
PeriodicSignal lti_apply(const RationalTF& g, const PeriodicSignal& u);

/// Memoryless nonlinearity y(t) = phi(u(t)).
class StaticNL {
 public:
  enum class Kind { saturation, deadzone, relu, custom };

  /// Unit saturation: -1, u, 1.
  static StaticNL saturation();
  /// Unit dead zone: u + 1, 0, u - 1.
  static StaticNL deadzone();
  /// max(0, u).
  static StaticNL relu();
  /// Piecewise-linear interpolation of (x, y) breakpoints, extended linearly
  /// past both ends. The slope bounds are recorded, not verified.
  static StaticNL custom(std::vector<std::pair<double, double>> table, double slope_min, double slope_max);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  double slope_min() const noexcept { return slope_min_; }
  double slope_max() const noexcept { return slope_max_; }
  const std::vector<std::pair<double, double>>& table() const noexcept { return table_; }

  double operator()(double u) const;

  friend bool operator==(const StaticNL&, const StaticNL&) = default;

 private:
  StaticNL(Kind kind, double slope_min, double slope_max) : kind_(kind), slope_min_(slope_min), slope_max_(slope_max) {}

  Kind kind_;
  double slope_min_;
  double slope_max_;
  std::vector<std::pair<double, double>> table_;
};

/// Samplewise phi(u). Throws InvalidArgument if u has imaginary parts.
PeriodicSignal static_apply(const StaticNL& phi, const PeriodicSignal& u);

/// Analytic describing function of the unit saturation.
double df_saturation(double a);

/// Fundamental coefficient of phi(a sin) over that of a sin, from an n-point FFT.
cplx df_numeric(const StaticNL& phi, double a, std::size_t n = 16384);

/// Amplitude-dependent gain Psi(a) of a static nonlinearity. Uses the closed
/// form for the saturation and the FFT route otherwise.
class DescribingFn {
 public:
  explicit DescribingFn(StaticNL source, std::size_t samples = 16384)
      : source_(std::move(source)), samples_(samples) {}

  const StaticNL& source() const noexcept { return source_; }
  cplx operator()(double a) const;

 private:
  StaticNL source_;
  std::size_t samples_;
};

/// Anything the sampler can push a signal through.
using Operator = std::variant<RationalTF, StaticNL>;

PeriodicSignal apply(const Operator& op, const PeriodicSignal& u);

/// Short human-readable description, e.g. "tf num=[1] den=[1,1]".
std::string describe(const Operator& op);

}  // namespace srg
