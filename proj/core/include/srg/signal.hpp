#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace srg {

using cplx = std::complex<double>;

/// Default number of samples per period.
inline constexpr std::size_t kDefaultSamples = 4096;

/// One period of a uniformly sampled complex signal.
///
/// Sample k sits at t_k = k * T / N with T = 2*pi / omega0. The sample count
/// is a power of two no smaller than 8 so that spectra can be taken with a
/// radix-2 FFT.
class PeriodicSignal {
 public:
  PeriodicSignal(double omega0, std::vector<cplx> samples);

  /// All-zero signal on the given grid.
  static PeriodicSignal zeros(double omega0, std::size_t n);

  double omega0() const noexcept { return omega0_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double period() const noexcept;
  double dt() const noexcept;
  double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt(); }

  std::span<const cplx> samples() const noexcept { return samples_; }
  const cplx& operator[](std::size_t k) const noexcept { return samples_[k]; }

  /// True when every imaginary part is below tol in magnitude.
  bool is_real(double tol = 1e-12) const noexcept;

  bool same_grid(const PeriodicSignal& other) const noexcept;

  friend PeriodicSignal operator+(const PeriodicSignal& a, const PeriodicSignal& b);
  friend PeriodicSignal operator-(const PeriodicSignal& a, const PeriodicSignal& b);
  friend PeriodicSignal operator*(cplx c, const PeriodicSignal& a);
  friend bool operator==(const PeriodicSignal&, const PeriodicSignal&) = default;

 private:
  double omega0_;
  std::vector<cplx> samples_;
};

/// Complex Fourier coefficients of a PeriodicSignal.
///
/// Convention: x(t) = sum_n c(n) exp(j n omega0 t), so c(n) = (1/N) sum_k x_k
/// exp(-2 pi j n k / N). A unit sine has |c(1)| = 1/2. Harmonics run over
/// n = -N/2 .. N/2-1.
class Spectrum {
 public:
  /// `coeffs` holds c(-N/2), ..., c(N/2-1) in that order.
  Spectrum(double omega0, std::vector<cplx> coeffs);

  double omega0() const noexcept { return omega0_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  int min_harmonic() const noexcept { return -static_cast<int>(coeffs_.size() / 2); }
  int max_harmonic() const noexcept { return static_cast<int>(coeffs_.size() / 2) - 1; }

  cplx at(int n) const;
  void set(int n, cplx value);

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::size_t index(int n) const;

  double omega0_;
  std::vector<cplx> coeffs_;
};

/// <x|y> = dt * sum_k x_k conj(y_k), integrated over one period.
cplx inner_product(const PeriodicSignal& x, const PeriodicSignal& y);

double norm(const PeriodicSignal& x);

/// acos(Re<x|y> / (|x||y|)), in [0, pi].
double angle_between(const PeriodicSignal& x, const PeriodicSignal& y);

Spectrum to_spectrum(const PeriodicSignal& x);
PeriodicSignal from_spectrum(const Spectrum& s);

/// Zeroes every coefficient with |n| > h.
Spectrum harmonic_truncate(const Spectrum& s, int h);

/// T * sum_n a(n) conj(b(n)); equals inner_product of the time signals.
cplx spectral_inner_product(const Spectrum& a, const Spectrum& b);

// Input families.

/// a * sin(omega0 t).
struct Sinusoid {
  double amplitude = 1.0;
};

/// k + a * sin(omega0 t).
struct BiasedSinusoid {
  double bias = 0.0;
  double amplitude = 1.0;
};

/// Sum over `harmonics` of A_n exp(j (n omega0 t + phi_n)) with A_n uniform in
/// (0, 1] and phi_n uniform in [0, 2 pi), drawn from `seed`. With `real` set,
/// each term is A_n sin(n omega0 t + phi_n) instead.
struct Multisine {
  std::vector<int> harmonics;
  std::uint64_t seed = 0;
  bool real = false;
};

using InputKind = std::variant<Sinusoid, BiasedSinusoid, Multisine>;

PeriodicSignal make_input(const InputKind& kind, double omega0, std::size_t n = kDefaultSamples);

/// Deterministic generator used everywhere a seed appears. std::mt19937_64 is
/// fully specified by the standard; the distributions are not, so the
/// conversions to double live here.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace srg
