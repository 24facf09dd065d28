#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srg/error.hpp"
#include "srg/operators.hpp"
#include "srg/signal.hpp"

using namespace srg;

namespace {

constexpr double kPi = std::numbers::pi;

PeriodicSignal harmonic(int n, double omega0, std::size_t samples) {
  std::vector<cplx> x(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    x[k] = std::polar(1.0, 2.0 * kPi * n * static_cast<double>(k) / static_cast<double>(samples));
  }
  return PeriodicSignal(omega0, std::move(x));
}

PeriodicSignal random_signal(std::mt19937_64& rng, double omega0, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<cplx> x(n);
  for (auto& v : x) v = {d(rng), d(rng)};
  return PeriodicSignal(omega0, std::move(x));
}

// Direct O(N^2) DFT with the c(n) = (1/N) sum x_k e^{-2 pi j n k / N} convention.
cplx dft_coeff(const PeriodicSignal& x, int n) {
  cplx acc = 0.0;
  const double N = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * std::polar(1.0, -2.0 * kPi * n * static_cast<double>(k) / N);
  return acc / N;
}

}  // namespace

TEST(PeriodicSignal, RejectsBadGrids) {
  EXPECT_THROW(PeriodicSignal(1.0, std::vector<cplx>(12)), InvalidArgument);
  EXPECT_THROW(PeriodicSignal(1.0, std::vector<cplx>(4)), InvalidArgument);
  EXPECT_THROW(PeriodicSignal(0.0, std::vector<cplx>(8)), InvalidArgument);
  EXPECT_THROW(PeriodicSignal(INFINITY, std::vector<cplx>(8)), InvalidArgument);
  EXPECT_NO_THROW(PeriodicSignal(2.0, std::vector<cplx>(8)));
}

TEST(InnerProduct, UnitExponentialHasSquaredNormT) {
  const auto x = harmonic(1, 3.0, 64);
  const cplx ip = inner_product(x, x);
  EXPECT_NEAR(ip.real(), x.period(), 1e-12);
  EXPECT_EQ(ip.imag(), 0.0);
}

TEST(InnerProduct, HarmonicsAreOrthogonal) {
  const auto x = harmonic(1, 1.0, 64);
  const auto y = harmonic(2, 1.0, 64);
  EXPECT_LT(std::abs(inner_product(x, y)), 1e-12);
}

TEST(InnerProduct, ConjugateSymmetric) {
  std::mt19937_64 rng(7);
  const auto x = random_signal(rng, 1.5, 128);
  const auto y = random_signal(rng, 1.5, 128);
  EXPECT_LT(std::abs(inner_product(y, x) - std::conj(inner_product(x, y))), 1e-12);
}

TEST(InnerProduct, MismatchedGridsThrow) {
  EXPECT_THROW(inner_product(PeriodicSignal::zeros(1.0, 64), PeriodicSignal::zeros(1.0, 128)), IncompatibleSignals);
  EXPECT_THROW(inner_product(PeriodicSignal::zeros(1.0, 64), PeriodicSignal::zeros(2.0, 64)), IncompatibleSignals);
}

TEST(InnerProduct, ParsevalWithClippedSine) {
  const auto x = make_input(Sinusoid{1.0}, 2.0, 4096);
  const auto y = static_apply(StaticNL::saturation(), make_input(Sinusoid{2.0}, 2.0, 4096));
  // Oracle: T * sum_n c_x(n) conj(c_y(n)) from a direct DFT restricted to the
  // fundamental, since x is a single harmonic.
  const cplx expected = x.period() * (dft_coeff(x, 1) * std::conj(dft_coeff(y, 1)) +
                                       dft_coeff(x, -1) * std::conj(dft_coeff(y, -1)));
  const cplx time = inner_product(x, y);
  const cplx spec = spectral_inner_product(to_spectrum(x), to_spectrum(y));
  EXPECT_LT(std::abs(time - spec), 1e-12 * std::abs(time));
  EXPECT_LT(std::abs(time - expected), 1e-9 * std::abs(time));
}

TEST(InnerProduct, LinearInFirstAntilinearInSecond) {
  std::mt19937_64 rng(11);
  const auto x = random_signal(rng, 1.0, 256);
  const auto y = random_signal(rng, 1.0, 256);
  const auto w = random_signal(rng, 1.0, 256);
  const cplx a{0.3, -1.7};
  const cplx lhs = inner_product(a * x + y, w);
  const cplx rhs = a * inner_product(x, w) + inner_product(y, w);
  EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(rhs) + 1e-12);
  const cplx anti = inner_product(w, a * x);
  EXPECT_LT(std::abs(anti - std::conj(a) * inner_product(w, x)), 1e-12 * std::abs(anti) + 1e-12);
}

TEST(InnerProduct, CauchySchwarz) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_signal(rng, 1.0, 64);
    const auto y = i % 2 == 0 ? random_signal(rng, 1.0, 64) : cplx{-2.0, 0.0} * x;
    EXPECT_LE(std::abs(inner_product(x, y).real()), norm(x) * norm(y) + 1e-12);
  }
}

TEST(Norm, ZeroSignal) { EXPECT_EQ(norm(PeriodicSignal::zeros(1.0, 64)), 0.0); }

TEST(Norm, ScaledSine) {
  const double a = 2.5, omega0 = 3.0;
  const auto x = make_input(Sinusoid{a}, omega0, 1024);
  EXPECT_NEAR(norm(x), a * std::sqrt(x.period() / 2.0), 1e-9);
}

TEST(Norm, Homogeneous) {
  std::mt19937_64 rng(5);
  const auto x = random_signal(rng, 1.0, 512);
  const cplx c{-0.4, 2.2};
  EXPECT_NEAR(norm(c * x), std::abs(c) * norm(x), 1e-12 * norm(x) * std::abs(c));
}

TEST(Angle, SelfAndOpposite) {
  std::mt19937_64 rng(1);
  const auto x = random_signal(rng, 1.0, 256);
  EXPECT_EQ(angle_between(x, x), 0.0);
  EXPECT_NEAR(angle_between(x, cplx{-1.0, 0.0} * x), kPi, 1e-15);
}

TEST(Angle, SineAndCosineAreOrthogonal) {
  const std::size_t n = 1024;
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = std::cos(2.0 * kPi * static_cast<double>(k) / n);
  EXPECT_NEAR(angle_between(make_input(Sinusoid{1.0}, 1.0, n), PeriodicSignal(1.0, c)), kPi / 2, 1e-9);
}

TEST(Angle, ZeroSignalThrows) {
  EXPECT_THROW(angle_between(PeriodicSignal::zeros(1.0, 8), make_input(Sinusoid{1.0}, 1.0, 8)), DegenerateAngle);
}

TEST(Spectrum, RoundTrip) {
  std::mt19937_64 rng(9);
  const auto x = random_signal(rng, 2.0, 1024);
  const auto back = from_spectrum(to_spectrum(x));
  double err = 0.0, mag = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    err = std::max(err, std::abs(back[k] - x[k]));
    mag = std::max(mag, std::abs(x[k]));
  }
  EXPECT_LT(err, 1e-12 * mag);
}

TEST(Spectrum, MatchesDirectDft) {
  std::mt19937_64 rng(13);
  const auto x = random_signal(rng, 1.0, 64);
  const auto s = to_spectrum(x);
  for (int n = s.min_harmonic(); n <= s.max_harmonic(); ++n) EXPECT_LT(std::abs(s.at(n) - dft_coeff(x, n)), 1e-13);
}

TEST(Spectrum, SingleHarmonicHasOneNonzeroCoefficient) {
  const auto s = to_spectrum(harmonic(5, 1.0, 256));
  int nonzero = 0;
  for (int n = s.min_harmonic(); n <= s.max_harmonic(); ++n) nonzero += std::abs(s.at(n)) > 1e-12;
  EXPECT_EQ(nonzero, 1);
  EXPECT_NEAR(std::abs(s.at(5)), 1.0, 1e-12);
}

TEST(Spectrum, RealSignalIsHermitian) {
  const auto y = static_apply(StaticNL::saturation(), make_input(BiasedSinusoid{0.4, 2.0}, 1.0, 512));
  const auto s = to_spectrum(y);
  for (int n = 1; n < s.max_harmonic(); ++n) EXPECT_LT(std::abs(s.at(-n) - std::conj(s.at(n))), 1e-12);
}

TEST(Spectrum, SquareWaveFundamental) {
  const std::size_t n = 4096;
  std::vector<cplx> sq(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sin(2.0 * kPi * static_cast<double>(k) / n);
    sq[k] = s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
  }
  // Fourier series of the unit square wave: (4/pi) sin t, so |c(1)| = 2/pi.
  EXPECT_NEAR(std::abs(to_spectrum(PeriodicSignal(1.0, sq)).at(1)), 4.0 / kPi * 0.5, 1e-3);
}

TEST(HarmonicTruncate, LargeCapIsIdentity) {
  std::mt19937_64 rng(2);
  const auto s = to_spectrum(random_signal(rng, 1.0, 64));
  EXPECT_EQ(harmonic_truncate(s, 32), s);
  EXPECT_EQ(harmonic_truncate(s, 1000), s);
}

TEST(HarmonicTruncate, DropsHigherHarmonics) {
  const auto s = harmonic_truncate(to_spectrum(harmonic(3, 1.0, 64)), 2);
  for (int n = s.min_harmonic(); n <= s.max_harmonic(); ++n) {
    if (std::abs(n) > 2) EXPECT_EQ(s.at(n), cplx(0.0)) << n;
    else EXPECT_LT(std::abs(s.at(n)), 1e-15) << n;  // FFT rounding of absent harmonics
  }
  EXPECT_THROW(harmonic_truncate(s, 0), InvalidArgument);
}

TEST(HarmonicTruncate, KeepsDescribingFunctionFundamental) {
  const double a = 2.0;
  const auto y = static_apply(StaticNL::saturation(), make_input(Sinusoid{a}, 1.0, 4096));
  const auto s = harmonic_truncate(to_spectrum(y), 1);
  // a sin t = (a/2j) e^{jt} - ..., so the fundamental of sat(a sin) is Psi(a) a / (2j).
  const cplx expected = df_saturation(a) * a / cplx(0.0, 2.0);
  EXPECT_LT(std::abs(s.at(1) - expected), 1e-6);
  EXPECT_LT(std::abs(s.at(-1) - std::conj(expected)), 1e-6);
  EXPECT_LT(std::abs(s.at(0)), 1e-15);
  EXPECT_EQ(s.at(2), cplx(0.0));
  EXPECT_EQ(s.at(3), cplx(0.0));
}

TEST(MakeInput, Sinusoid) {
  const auto x = make_input(Sinusoid{1.0}, 2.0, 64);
  for (std::size_t k = 0; k < 64; ++k) {
    EXPECT_NEAR(x[k].real(), std::sin(2.0 * x.time(k)), 1e-12);
    EXPECT_EQ(x[k].imag(), 0.0);
  }
}

TEST(MakeInput, ZeroAmplitudeBiasedSineIsConstant) {
  const auto x = make_input(BiasedSinusoid{2.0, 0.0}, 1.0, 32);
  for (auto v : x.samples()) EXPECT_EQ(v, cplx(2.0));
}

TEST(MakeInput, MultisineIsReproducible) {
  const Multisine m{{1, 3, 4}, 12345, false};
  EXPECT_EQ(make_input(m, 1.0, 256), make_input(m, 1.0, 256));
  EXPECT_NE(make_input(m, 1.0, 256), make_input(Multisine{{1, 3, 4}, 12346, false}, 1.0, 256));
  const auto s = to_spectrum(make_input(m, 1.0, 256));
  for (int n = s.min_harmonic(); n <= s.max_harmonic(); ++n) {
    const bool used = n == 1 || n == 3 || n == 4;
    if (used) {
      EXPECT_GT(std::abs(s.at(n)), 0.0);
      EXPECT_LE(std::abs(s.at(n)), 1.0 + 1e-12);
    } else {
      EXPECT_LT(std::abs(s.at(n)), 1e-12);
    }
  }
}

TEST(MakeInput, RealMultisineIsReal) {
  EXPECT_TRUE(make_input(Multisine{{1, 2}, 5, true}, 1.0, 128).is_real());
}

TEST(MakeInput, InvalidParameters) {
  EXPECT_THROW(make_input(Multisine{{}, 1, false}, 1.0, 64), InvalidArgument);
  EXPECT_THROW(make_input(Multisine{{32}, 1, false}, 1.0, 64), InvalidArgument);
  EXPECT_THROW(make_input(Sinusoid{NAN}, 1.0, 64), InvalidArgument);
}

TEST(SeededRng, Deterministic) {
  SeededRng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
