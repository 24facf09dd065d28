#include "srg/signal.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "srg/error.hpp"

namespace srg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW plans are created once per (size, direction) and executed through the
// new-array interface, which is safe to call concurrently. Plan creation is
// not, hence the mutex.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<cplx> fft(std::span<const cplx> in, int sign) {
  std::vector<cplx> src(in.begin(), in.end());
  std::vector<cplx> out(in.size());
  fftw_plan plan = PlanCache::instance().get(in.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

void require_same_grid(const PeriodicSignal& x, const PeriodicSignal& y) {
  if (!x.same_grid(y)) {
    throw IncompatibleSignals("signals differ in omega0 or sample count (" + std::to_string(x.omega0()) + "/" +
                              std::to_string(x.size()) + " vs " + std::to_string(y.omega0()) + "/" +
                              std::to_string(y.size()) + ")");
  }
}

void validate_grid(double omega0, std::size_t n) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw InvalidArgument("omega0 must be positive and finite, got " + std::to_string(omega0));
  }
  if (n < 8 || !std::has_single_bit(n)) {
    throw InvalidArgument("sample count must be a power of two >= 8, got " + std::to_string(n));
  }
}

// Sum of |x_k|^2 without the dt factor.
double raw_energy(std::span<const cplx> x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return acc;
}

}  // namespace

PeriodicSignal::PeriodicSignal(double omega0, std::vector<cplx> samples)
    : omega0_(omega0), samples_(std::move(samples)) {
  validate_grid(omega0_, samples_.size());
}

PeriodicSignal PeriodicSignal::zeros(double omega0, std::size_t n) {
  return PeriodicSignal(omega0, std::vector<cplx>(n));
}

double PeriodicSignal::period() const noexcept { return kTwoPi / omega0_; }

double PeriodicSignal::dt() const noexcept { return period() / static_cast<double>(samples_.size()); }

bool PeriodicSignal::is_real(double tol) const noexcept {
  for (const auto& v : samples_) {
    if (std::abs(v.imag()) > tol) return false;
  }
  return true;
}

bool PeriodicSignal::same_grid(const PeriodicSignal& other) const noexcept {
  return omega0_ == other.omega0_ && samples_.size() == other.samples_.size();
}

PeriodicSignal operator+(const PeriodicSignal& a, const PeriodicSignal& b) {
  require_same_grid(a, b);
  std::vector<cplx> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.samples_[k] + b.samples_[k];
  return PeriodicSignal(a.omega0_, std::move(out));
}

PeriodicSignal operator-(const PeriodicSignal& a, const PeriodicSignal& b) {
  require_same_grid(a, b);
  std::vector<cplx> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.samples_[k] - b.samples_[k];
  return PeriodicSignal(a.omega0_, std::move(out));
}

PeriodicSignal operator*(cplx c, const PeriodicSignal& a) {
  std::vector<cplx> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * a.samples_[k];
  return PeriodicSignal(a.omega0_, std::move(out));
}

Spectrum::Spectrum(double omega0, std::vector<cplx> coeffs) : omega0_(omega0), coeffs_(std::move(coeffs)) {
  validate_grid(omega0_, coeffs_.size());
}

std::size_t Spectrum::index(int n) const {
  if (n < min_harmonic() || n > max_harmonic()) {
    throw InvalidArgument("harmonic " + std::to_string(n) + " outside spectrum range");
  }
  return static_cast<std::size_t>(n - min_harmonic());
}

cplx Spectrum::at(int n) const { return coeffs_[index(n)]; }

void Spectrum::set(int n, cplx value) { coeffs_[index(n)] = value; }

cplx inner_product(const PeriodicSignal& x, const PeriodicSignal& y) {
  require_same_grid(x, y);
  cplx acc{0.0, 0.0};
  const auto xs = x.samples();
  const auto ys = y.samples();
  for (std::size_t k = 0; k < xs.size(); ++k) acc += xs[k] * std::conj(ys[k]);
  return acc * x.dt();
}

double norm(const PeriodicSignal& x) { return std::sqrt(raw_energy(x.samples()) * x.dt()); }

double angle_between(const PeriodicSignal& x, const PeriodicSignal& y) {
  require_same_grid(x, y);
  const double nx = std::sqrt(raw_energy(x.samples()));
  const double ny = std::sqrt(raw_energy(y.samples()));
  if (nx == 0.0 || ny == 0.0) throw DegenerateAngle("angle with a zero-norm signal is undefined");
  // 2 atan2(|x^ - y^|, |x^ + y^|) equals acos(Re<x|y>/|x||y|) but keeps full
  // precision near 0 and pi, where acos loses half the digits.
  double diff = 0.0;
  double sum = 0.0;
  const auto xs = x.samples();
  const auto ys = y.samples();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const cplx a = xs[k] / nx;
    const cplx b = ys[k] / ny;
    diff += std::norm(a - b);
    sum += std::norm(a + b);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

Spectrum to_spectrum(const PeriodicSignal& x) {
  const std::size_t n = x.size();
  const auto raw = fft(x.samples(), FFTW_FORWARD);
  std::vector<cplx> coeffs(n);
  const double scale = 1.0 / static_cast<double>(n);
  // coeffs[i] holds harmonic i - n/2, which lives at FFT bin (i + n/2) mod n.
  for (std::size_t i = 0; i < n; ++i) coeffs[i] = raw[(i + n / 2) % n] * scale;
  return Spectrum(x.omega0(), std::move(coeffs));
}

PeriodicSignal from_spectrum(const Spectrum& s) {
  const std::size_t n = s.size();
  std::vector<cplx> bins(n);
  const auto coeffs = s.coeffs();
  for (std::size_t i = 0; i < n; ++i) bins[(i + n / 2) % n] = coeffs[i];
  return PeriodicSignal(s.omega0(), fft(bins, FFTW_BACKWARD));
}

Spectrum harmonic_truncate(const Spectrum& s, int h) {
  if (h < 1) throw InvalidArgument("harmonic cap must be >= 1, got " + std::to_string(h));
  std::vector<cplx> coeffs(s.coeffs().begin(), s.coeffs().end());
  for (int n = s.min_harmonic(); n <= s.max_harmonic(); ++n) {
    if (std::abs(n) > h) coeffs[static_cast<std::size_t>(n - s.min_harmonic())] = 0.0;
  }
  return Spectrum(s.omega0(), std::move(coeffs));
}

cplx spectral_inner_product(const Spectrum& a, const Spectrum& b) {
  if (a.omega0() != b.omega0() || a.size() != b.size()) {
    throw IncompatibleSignals("spectra differ in omega0 or size");
  }
  cplx acc{0.0, 0.0};
  const auto as = a.coeffs();
  const auto bs = b.coeffs();
  for (std::size_t i = 0; i < as.size(); ++i) acc += as[i] * std::conj(bs[i]);
  return acc * (kTwoPi / a.omega0());
}

PeriodicSignal make_input(const InputKind& kind, double omega0, std::size_t n) {
  validate_grid(omega0, n);
  std::vector<cplx> samples(n);
  const double dphase = kTwoPi / static_cast<double>(n);

  if (const auto* s = std::get_if<Sinusoid>(&kind)) {
    if (!std::isfinite(s->amplitude)) throw InvalidArgument("sinusoid amplitude must be finite");
    for (std::size_t k = 0; k < n; ++k) samples[k] = s->amplitude * std::sin(dphase * static_cast<double>(k));
  } else if (const auto* b = std::get_if<BiasedSinusoid>(&kind)) {
    if (!std::isfinite(b->amplitude) || !std::isfinite(b->bias)) {
      throw InvalidArgument("biased sinusoid parameters must be finite");
    }
    for (std::size_t k = 0; k < n; ++k) {
      samples[k] = b->bias + b->amplitude * std::sin(dphase * static_cast<double>(k));
    }
  } else {
    const auto& m = std::get<Multisine>(kind);
    if (m.harmonics.empty()) throw InvalidArgument("multisine needs at least one harmonic");
    const int limit = static_cast<int>(n / 2);
    SeededRng rng(m.seed);
    for (int h : m.harmonics) {
      if (std::abs(h) >= limit) {
        throw InvalidArgument("multisine harmonic " + std::to_string(h) + " aliases at N = " + std::to_string(n));
      }
      const double amp = 1.0 - rng.uniform();  // (0, 1]
      const double phase = rng.uniform(0.0, kTwoPi);
      for (std::size_t k = 0; k < n; ++k) {
        const double arg = dphase * static_cast<double>(h) * static_cast<double>(k) + phase;
        samples[k] += m.real ? cplx(amp * std::sin(arg), 0.0) : std::polar(amp, arg);
      }
    }
  }
  return PeriodicSignal(omega0, std::move(samples));
}

double SeededRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace srg
