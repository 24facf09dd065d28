#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srg/operators.hpp"
#include "srg/signal.hpp"

namespace srg {

/// Where an SRG point came from: input family, its parameters, and seed.
struct Provenance {
  std::string family;
  std::vector<double> params;
  std::uint64_t seed = 0;

  /// Compact form used in the CSV "prov" column, e.g. "bsin:0.5;1;0;2".
  std::string to_string() const;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// One sample z_R(u1, u2) = gain * exp(i theta), stored as the upper-half
/// representative (theta in [0, pi]).
struct SrgPoint {
  cplx z;
  double gain = 0.0;
  double theta = 0.0;
  Provenance prov;

  static SrgPoint from_polar(double gain, double theta, Provenance prov = {});

  friend bool operator==(const SrgPoint&, const SrgPoint&) = default;
};

/// How a cloud was produced; echoed into every output file.
struct SamplingSpec {
  std::string family;
  std::string grid;
  std::optional<int> harmonics;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SamplingSpec&, const SamplingSpec&) = default;
};

struct SrgCloud {
  std::vector<SrgPoint> points;
  std::string op;
  SamplingSpec spec;
  /// Pairs dropped because u1 = u2 (or a1 = a2 for describing functions).
  std::size_t skipped = 0;

  friend bool operator==(const SrgCloud&, const SrgCloud&) = default;
};

/// z_R(u1, u2). With `harmonics` set, both outputs are truncated to
/// |n| <= harmonics before differencing. A zero output difference gives z = 0.
SrgPoint z_of_pair(const Operator& r, const PeriodicSignal& u1, const PeriodicSignal& u2,
                   std::optional<int> harmonics = std::nullopt, Provenance prov = {});

/// z_R(v) = z_R(v, 0), the single-argument form for linear operators.
SrgPoint z_linear(const Operator& r, const PeriodicSignal& v, Provenance prov = {});

/// Inclusive evenly spaced grid lo, ..., hi with `count` points.
struct LinearRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 1;

  std::vector<double> values() const;
};

/// Input pair u1 = k1 + a1 sin, u2 = k2 + a2 sin.
struct BiasedPair {
  double k1 = 0.0;
  double a1 = 0.0;
  double k2 = 0.0;
  double a2 = 0.0;
};

inline constexpr LinearRange kDefaultBiasRange{-3.0, 3.0, 25};
inline constexpr LinearRange kDefaultAmplitudeRange{0.16, 4.0, 25};
inline constexpr int kDefaultHarmonics = 10;

/// Every unordered pair of distinct members of the family {k + a sin : k in
/// bias, a in amplitude}.
std::vector<BiasedPair> biased_sine_pairs(const LinearRange& bias, const LinearRange& amplitude);

/// SRG cloud of a static nonlinearity over biased-sinusoid pairs.
///
/// Each distinct input is pushed through phi once; pair points are then
/// assembled from the cached spectra through Parseval, which matches
/// z_of_pair up to rounding. Pairs with u1 = u2 are skipped and counted.
SrgCloud sample_static_nl(const StaticNL& phi, std::span<const BiasedPair> grid,
                          std::optional<int> harmonics = kDefaultHarmonics, std::size_t samples = kDefaultSamples);

struct LtiSampleSpec {
  double omega_lo = 1e-2;
  double omega_hi = 1e2;
  /// Single-tone inputs, log-spaced over [omega_lo, omega_hi], plus one DC input.
  std::size_t tones = 64;
  /// Seeded random multisines; each picks omega0 log-uniformly in range and a
  /// random nonempty subset of harmonics 0..max_harmonic.
  std::size_t multisines = 1000;
  int max_harmonic = 4;
  std::size_t samples = 64;
  std::uint64_t seed = 20210317;
};

/// SRG cloud of an LTI operator from z_linear over tones and multisines.
SrgCloud sample_lti(const RationalTF& g, const LtiSampleSpec& spec = {});

/// SRG of the describing-function operator a sin -> Psi(a) a sin:
/// z = (Psi(a1) a1 - Psi(a2) a2) / (a1 - a2). Pairs with a1 = a2 are skipped.
SrgCloud sample_df(const StaticNL& phi, std::span<const std::pair<double, double>> amplitudes);

/// All unordered pairs (a1, a2), a1 < a2, from an amplitude grid.
std::vector<std::pair<double, double>> amplitude_pairs(const LinearRange& amplitude);

}  // namespace srg
