#include "srg/sampler.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "srg/error.hpp"

namespace srg {
namespace {

constexpr double kExcludedPairTol = 1e-12;

struct PairStats {
  double input_energy = 0.0;
  double output_energy = 0.0;
  double angle = 0.0;
};

// Gain and angle from coefficient (or sample) vectors of du and dy. Any
// common positive weight (dt, T) cancels.
PairStats pair_stats(std::span<const cplx> du, std::span<const cplx> dy) {
  PairStats s;
  for (const auto& v : du) s.input_energy += std::norm(v);
  for (const auto& v : dy) s.output_energy += std::norm(v);
  if (s.output_energy == 0.0 || s.input_energy == 0.0) return s;
  const double nu = std::sqrt(s.input_energy);
  const double ny = std::sqrt(s.output_energy);
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < du.size(); ++i) {
    const cplx a = du[i] / nu;
    const cplx b = dy[i] / ny;
    diff += std::norm(a - b);
    sum += std::norm(a + b);
  }
  s.angle = 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
  return s;
}

PeriodicSignal truncate_signal(const PeriodicSignal& y, int harmonics) {
  return from_spectrum(harmonic_truncate(to_spectrum(y), harmonics));
}

PeriodicSignal tone(double omega, std::size_t n) {
  std::vector<cplx> samples(n);
  const double dphase = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) samples[k] = std::polar(1.0, dphase * static_cast<double>(k));
  return PeriodicSignal(omega, std::move(samples));
}

}  // namespace

std::string Provenance::to_string() const {
  std::string out = family;
  if (!params.empty()) out += fmt::format(":{}", fmt::join(params, ";"));
  if (seed != 0) out += fmt::format("@{}", seed);
  return out;
}

SrgPoint SrgPoint::from_polar(double gain, double theta, Provenance prov) {
  return SrgPoint{std::polar(gain, theta), gain, theta, std::move(prov)};
}

SrgPoint z_of_pair(const Operator& r, const PeriodicSignal& u1, const PeriodicSignal& u2, std::optional<int> harmonics,
                   Provenance prov) {
  const PeriodicSignal du = u1 - u2;
  const double scale = std::max(norm(u1), norm(u2));
  const double ndu = norm(du);
  if (!(ndu > kExcludedPairTol * scale)) throw ExcludedPair("z_R(u1, u2) is undefined for u1 = u2");

  PeriodicSignal y1 = apply(r, u1);
  PeriodicSignal y2 = apply(r, u2);
  if (harmonics) {
    y1 = truncate_signal(y1, *harmonics);
    y2 = truncate_signal(y2, *harmonics);
  }
  const PeriodicSignal dy = y1 - y2;
  const double ndy = norm(dy);
  const double theta = ndy == 0.0 ? 0.0 : angle_between(du, dy);
  return SrgPoint::from_polar(ndy / ndu, theta, std::move(prov));
}

SrgPoint z_linear(const Operator& r, const PeriodicSignal& v, Provenance prov) {
  if (norm(v) == 0.0) throw ExcludedPair("z_R(v) is undefined for v = 0");
  return z_of_pair(r, v, PeriodicSignal::zeros(v.omega0(), v.size()), std::nullopt, std::move(prov));
}

std::vector<double> LinearRange::values() const {
  if (count == 0) throw InvalidArgument("grid needs at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw InvalidArgument(fmt::format("grid range {}:{} is not ordered", lo, hi));
  }
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<BiasedPair> biased_sine_pairs(const LinearRange& bias, const LinearRange& amplitude) {
  std::vector<std::pair<double, double>> family;
  for (double k : bias.values()) {
    for (double a : amplitude.values()) family.emplace_back(k, a);
  }
  std::vector<BiasedPair> pairs;
  pairs.reserve(family.size() * (family.size() - 1) / 2);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      pairs.push_back({family[i].first, family[i].second, family[j].first, family[j].second});
    }
  }
  return pairs;
}

SrgCloud sample_static_nl(const StaticNL& phi, std::span<const BiasedPair> grid, std::optional<int> harmonics,
                          std::size_t samples) {
  if (harmonics && *harmonics < 1) throw InvalidArgument("harmonic cap must be >= 1");

  SrgCloud cloud;
  cloud.op = describe(phi);
  cloud.spec = SamplingSpec{"biased_sinusoid", fmt::format("{} pairs", grid.size()), harmonics, samples, 0};

  // Coefficient window kept per input: |n| <= cap, or the full spectrum.
  const int half = static_cast<int>(samples / 2);
  const int cap = harmonics ? std::min(*harmonics, half - 1) : half;

  struct Cached {
    std::vector<cplx> u, y;
    double energy = 0.0;
  };
  std::map<std::pair<double, double>, Cached> cache;
  auto window = [&](const Spectrum& s) {
    std::vector<cplx> out;
    for (int n = std::max(-cap, s.min_harmonic()); n <= std::min(cap, s.max_harmonic()); ++n) out.push_back(s.at(n));
    return out;
  };
  auto lookup = [&](double k, double a) -> const Cached& {
    auto [it, inserted] = cache.try_emplace({k, a});
    if (inserted) {
      const PeriodicSignal u = make_input(BiasedSinusoid{k, a}, 1.0, samples);
      Spectrum ys = to_spectrum(static_apply(phi, u));
      if (harmonics) ys = harmonic_truncate(ys, *harmonics);
      it->second.u = window(to_spectrum(u));
      it->second.y = window(ys);
      it->second.energy = norm(u) * norm(u);
    }
    return it->second;
  };

  cloud.points.reserve(grid.size());
  std::vector<cplx> du, dy;
  for (const auto& p : grid) {
    const Cached& c1 = lookup(p.k1, p.a1);
    const Cached& c2 = lookup(p.k2, p.a2);
    du.resize(c1.u.size());
    dy.resize(c1.y.size());
    for (std::size_t i = 0; i < du.size(); ++i) du[i] = c1.u[i] - c2.u[i];
    for (std::size_t i = 0; i < dy.size(); ++i) dy[i] = c1.y[i] - c2.y[i];
    const PairStats s = pair_stats(du, dy);
    // Spectral energies lack the factor T of norm(u)^2.
    const double period = 2.0 * std::numbers::pi;
    const double scale = std::max(c1.energy, c2.energy) / period;
    if (!(std::sqrt(s.input_energy) > kExcludedPairTol * std::sqrt(scale))) {
      ++cloud.skipped;
      continue;
    }
    cloud.points.push_back(SrgPoint::from_polar(std::sqrt(s.output_energy / s.input_energy), s.angle,
                                                Provenance{"bsin", {p.k1, p.a1, p.k2, p.a2}, 0}));
  }
  return cloud;
}

SrgCloud sample_lti(const RationalTF& g, const LtiSampleSpec& spec) {
  if (!(spec.omega_lo > 0.0) || !(spec.omega_hi >= spec.omega_lo) || !std::isfinite(spec.omega_hi)) {
    throw InvalidArgument(fmt::format("frequency range {}:{} must be positive and ordered", spec.omega_lo,
                                      spec.omega_hi));
  }
  if (spec.max_harmonic < 0 || static_cast<std::size_t>(spec.max_harmonic) >= spec.samples / 2) {
    throw InvalidArgument(fmt::format("max harmonic {} does not fit N = {}", spec.max_harmonic, spec.samples));
  }

  if (const auto pole = imaginary_axis_pole(g)) throw PoleOnAxis(*pole);

  SrgCloud cloud;
  cloud.op = describe(g);
  cloud.spec = SamplingSpec{"lti", fmt::format("omega {}:{}; {} tones; {} multisines; harmonics 0..{}", spec.omega_lo,
                                               spec.omega_hi, spec.tones, spec.multisines, spec.max_harmonic),
                            std::nullopt, spec.samples, spec.seed};

  const Operator op = g;
  cloud.points.push_back(z_linear(op, make_input(BiasedSinusoid{1.0, 0.0}, 1.0, spec.samples), {"dc", {0.0}, 0}));

  const double log_lo = std::log(spec.omega_lo);
  const double log_hi = std::log(spec.omega_hi);
  for (std::size_t i = 0; i < spec.tones; ++i) {
    const double t = spec.tones == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(spec.tones - 1);
    const double omega = std::exp(log_lo + t * (log_hi - log_lo));
    cloud.points.push_back(z_linear(op, tone(omega, spec.samples), {"tone", {omega}, 0}));
  }

  SeededRng rng(spec.seed);
  for (std::size_t i = 0; i < spec.multisines; ++i) {
    const double omega0 = std::exp(rng.uniform(log_lo, log_hi));
    std::vector<int> harmonics;
    for (int h = 0; h <= spec.max_harmonic; ++h) {
      if (rng.uniform() < 0.5) harmonics.push_back(h);
    }
    if (harmonics.empty()) harmonics.push_back(static_cast<int>(rng.below(spec.max_harmonic + 1)));
    const std::uint64_t seed = rng.below(std::numeric_limits<std::uint64_t>::max()) + 1;

    std::vector<double> params{omega0};
    params.insert(params.end(), harmonics.begin(), harmonics.end());
    const PeriodicSignal v = make_input(Multisine{harmonics, seed, false}, omega0, spec.samples);
    cloud.points.push_back(z_linear(op, v, {"multisine", std::move(params), seed}));
  }
  return cloud;
}

SrgCloud sample_df(const StaticNL& phi, std::span<const std::pair<double, double>> amplitudes) {
  SrgCloud cloud;
  cloud.op = "df " + phi.name();
  cloud.spec = SamplingSpec{"describing_function", fmt::format("{} amplitude pairs", amplitudes.size()), 1, 0, 0};
  const DescribingFn psi(phi);
  for (const auto& [a1, a2] : amplitudes) {
    if (!(a1 > 0.0) || !(a2 > 0.0)) throw InvalidArgument("describing function amplitudes must be positive");
    if (a1 == a2) {
      ++cloud.skipped;
      continue;
    }
    cplx z = (psi(a1) * a1 - psi(a2) * a2) / (a1 - a2);
    if (z.imag() < 0.0) z = std::conj(z);
    cloud.points.push_back(SrgPoint::from_polar(std::abs(z), std::arg(z), {"df", {a1, a2}, 0}));
  }
  return cloud;
}

std::vector<std::pair<double, double>> amplitude_pairs(const LinearRange& amplitude) {
  const auto a = amplitude.values();
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) out.emplace_back(a[i], a[j]);
  }
  return out;
}

}  // namespace srg
