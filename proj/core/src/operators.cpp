#include "srg/operators.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "srg/error.hpp"

namespace srg {
namespace {

void trim_high_zeros(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

cplx horner(const std::vector<double>& c, cplx s) {
  cplx acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

// Scale of |den(j omega)| used to decide whether it vanishes.
double magnitude_scale(const std::vector<double>& c, double omega) {
  double acc = 0.0;
  double p = 1.0;
  for (double v : c) {
    acc += std::abs(v) * p;
    p *= std::abs(omega);
  }
  return acc;
}

}  // namespace

PoleOnAxis::PoleOnAxis(double omega)
    : Error(fmt::format("transfer function has a pole on the imaginary axis at omega = {}", omega)), omega_(omega) {}

RationalTF::RationalTF(std::vector<double> num, std::vector<double> den) : num_(std::move(num)), den_(std::move(den)) {
  for (double v : num_) {
    if (!std::isfinite(v)) throw InvalidArgument("numerator coefficients must be finite");
  }
  for (double v : den_) {
    if (!std::isfinite(v)) throw InvalidArgument("denominator coefficients must be finite");
  }
  trim_high_zeros(num_);
  trim_high_zeros(den_);
  if (den_.empty()) throw InvalidArgument("denominator is identically zero");
  if (num_.size() > den_.size()) {
    throw InvalidArgument(fmt::format("transfer function is improper: deg num = {} > deg den = {}", num_.size() - 1,
                                      den_.size() - 1));
  }
}

cplx RationalTF::operator()(cplx s) const { return horner(num_, s) / horner(den_, s); }

double RationalTF::high_frequency_gain() const noexcept {
  if (strictly_proper()) return 0.0;
  return num_.back() / den_.back();
}

std::optional<double> imaginary_axis_pole(const RationalTF& g) {
  const auto& d = g.den();
  const auto degree = static_cast<Eigen::Index>(d.size()) - 1;
  if (degree < 1) return std::nullopt;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (Eigen::Index i = 0; i < degree; ++i) {
    companion(0, i) = -d[static_cast<std::size_t>(degree - 1 - i)] / d.back();
    if (i + 1 < degree) companion(i + 1, i) = 1.0;
  }
  const Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues();
  std::optional<double> found;
  for (const auto& p : roots) {
    if (std::abs(p.real()) <= 1e-7 * std::max(1.0, std::abs(p))) {
      const double omega = std::abs(p.imag());
      if (!found || omega < *found) found = omega;
    }
  }
  return found;
}

cplx tf_eval(const RationalTF& g, double omega) {
  const cplx s{0.0, omega};
  const cplx d = horner(g.den(), s);
  if (std::abs(d) <= 1e-14 * magnitude_scale(g.den(), omega)) throw PoleOnAxis(omega);
  return horner(g.num(), s) / d;
}

PeriodicSignal lti_apply(const RationalTF& g, const PeriodicSignal& u) {
  Spectrum s = to_spectrum(u);
  for (int n = s.min_harmonic(); n <= s.max_harmonic(); ++n) {
    s.set(n, tf_eval(g, n * u.omega0()) * s.at(n));
  }
  return from_spectrum(s);
}

StaticNL StaticNL::saturation() { return StaticNL(Kind::saturation, 0.0, 1.0); }

StaticNL StaticNL::deadzone() { return StaticNL(Kind::deadzone, 0.0, 1.0); }

StaticNL StaticNL::relu() { return StaticNL(Kind::relu, 0.0, 1.0); }

StaticNL StaticNL::custom(std::vector<std::pair<double, double>> table, double slope_min, double slope_max) {
  if (table.size() < 2) throw InvalidArgument("custom nonlinearity needs at least two breakpoints");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!std::isfinite(table[i].first) || !std::isfinite(table[i].second)) {
      throw InvalidArgument("custom nonlinearity breakpoints must be finite");
    }
    if (i > 0 && !(table[i].first > table[i - 1].first)) {
      throw InvalidArgument("custom nonlinearity breakpoints must be strictly increasing in x");
    }
  }
  if (!(slope_min <= slope_max)) throw InvalidArgument("custom nonlinearity needs slope_min <= slope_max");
  StaticNL nl(Kind::custom, slope_min, slope_max);
  nl.table_ = std::move(table);
  return nl;
}

std::string StaticNL::name() const {
  switch (kind_) {
    case Kind::saturation: return "saturation";
    case Kind::deadzone: return "deadzone";
    case Kind::relu: return "relu";
    case Kind::custom: return "custom";
  }
  return "unknown";
}

double StaticNL::operator()(double u) const {
  switch (kind_) {
    case Kind::saturation: return std::clamp(u, -1.0, 1.0);
    case Kind::deadzone: return u > 1.0 ? u - 1.0 : (u < -1.0 ? u + 1.0 : 0.0);
    case Kind::relu: return u > 0.0 ? u : 0.0;
    case Kind::custom: break;
  }
  // Segment index: first breakpoint strictly greater than u, clamped so the
  // end segments extend linearly.
  auto it = std::upper_bound(table_.begin(), table_.end(), u,
                             [](double v, const std::pair<double, double>& p) { return v < p.first; });
  std::size_t hi = static_cast<std::size_t>(it - table_.begin());
  hi = std::clamp<std::size_t>(hi, 1, table_.size() - 1);
  const auto& [x0, y0] = table_[hi - 1];
  const auto& [x1, y1] = table_[hi];
  return y0 + (y1 - y0) * (u - x0) / (x1 - x0);
}

PeriodicSignal static_apply(const StaticNL& phi, const PeriodicSignal& u) {
  if (!u.is_real()) throw InvalidArgument(fmt::format("{} needs a real-valued input signal", phi.name()));
  std::vector<cplx> out(u.size());
  const auto in = u.samples();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = phi(in[k].real());
  return PeriodicSignal(u.omega0(), std::move(out));
}

double df_saturation(double a) {
  if (!(a > 0.0)) throw InvalidArgument(fmt::format("describing function amplitude must be positive, got {}", a));
  if (a <= 1.0) return 1.0;
  const double r = 1.0 / a;
  return (2.0 / std::numbers::pi) * (std::asin(r) + r * std::sqrt(1.0 - r * r));
}

cplx df_numeric(const StaticNL& phi, double a, std::size_t n) {
  if (!(a > 0.0)) throw InvalidArgument(fmt::format("describing function amplitude must be positive, got {}", a));
  if (n < 1024) throw InvalidArgument("describing function needs at least 1024 samples");
  const PeriodicSignal u = make_input(Sinusoid{a}, 1.0, n);
  const Spectrum y = to_spectrum(static_apply(phi, u));
  // Fundamental of a sin(t) is a / (2j), so the ratio is y(1) * 2j / a.
  return y.at(1) * cplx(0.0, 2.0) / a;
}

cplx DescribingFn::operator()(double a) const {
  if (source_.kind() == StaticNL::Kind::saturation) return df_saturation(a);
  return df_numeric(source_, a, samples_);
}

PeriodicSignal apply(const Operator& op, const PeriodicSignal& u) {
  if (const auto* g = std::get_if<RationalTF>(&op)) return lti_apply(*g, u);
  return static_apply(std::get<StaticNL>(op), u);
}

std::string describe(const Operator& op) {
  if (const auto* g = std::get_if<RationalTF>(&op)) {
    return fmt::format("tf num=[{}] den=[{}]", fmt::join(g->num(), ","), fmt::join(g->den(), ","));
  }
  return "nl " + std::get<StaticNL>(op).name();
}

}  // namespace srg
