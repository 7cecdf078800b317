#include "doctest.h"

#include "binpr/autocorr.hpp"
#include "binpr/denoise.hpp"
#include "binpr/errors.hpp"
#include "binpr/harness.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace binpr;

namespace {

std::vector<double> values(const MagnitudeMeasurements &b) {
  return {b.values().begin(), b.values().end()};
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Round(Re F⁻¹(b̃²)) computed with the long-double oracle DFT.
std::vector<std::int64_t> oracle_step1(const std::vector<double> &noisy) {
  oracle::Vec sq(noisy.size());
  for (std::size_t k = 0; k < noisy.size(); ++k) sq[k] = noisy[k] * noisy[k];
  const auto a = oracle::idft(sq);
  std::vector<std::int64_t> out;
  for (const auto &v : a) out.push_back(static_cast<std::int64_t>(std::llround(v.real())));
  return out;
}

} // namespace

TEST_CASE("noise injection") {
  Rng rng(60);
  const auto x = random_binary(50, 5, rng);
  const auto b = magnitude(DftPlan::classic(50), x.to_complex());

  SUBCASE("infinite SNR is a no-op") {
    const auto bt = add_noise(b, x, NoiseSpec{});
    CHECK(values(bt) == values(b));
  }
  SUBCASE("the SNR is met exactly") {
    for (double snr : {40.0, 16.0, 0.0, -6.0}) {
      NoiseSpec spec;
      spec.snr_db = snr;
      spec.seed = 3;
      const auto bt = add_noise(b, x, spec);
      CHECK(bt.noisy());
      std::vector<double> eta(b.size());
      for (std::size_t k = 0; k < b.size(); ++k) eta[k] = bt[k] - b[k];
      const double got = 10.0 * std::log10(5.0 / std::pow(norm2(eta), 2));
      CHECK(std::abs(got - snr) < 1e-12);
    }
  }
  SUBCASE("measurement-referenced noise") {
    NoiseSpec spec;
    spec.snr_db = 20.0;
    spec.reference = NoiseReference::measurements;
    const auto bt = add_noise(b, x, spec);
    std::vector<double> eta(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) eta[k] = bt[k] - b[k];
    CHECK(norm2(eta) == doctest::Approx(norm2(b.values()) * 0.1).epsilon(1e-12));
  }
  SUBCASE("a fixed seed reproduces the noise") {
    NoiseSpec spec;
    spec.snr_db = 10.0;
    spec.seed = 99;
    CHECK(values(add_noise(b, x, spec)) == values(add_noise(b, x, spec)));
    NoiseSpec other = spec;
    other.seed = 100;
    CHECK(values(add_noise(b, x, spec)) != values(add_noise(b, x, other)));
  }
  SUBCASE("complex noise cannot be added to magnitudes") {
    NoiseSpec spec;
    spec.snr_db = 10.0;
    spec.kind = NoiseKind::complex_gaussian;
    CHECK_THROWS_AS(add_noise(b, x, spec), ParameterError);
    const auto eta = sample_noise(8, 2.0, NoiseKind::complex_gaussian, 1);
    double s = 0.0;
    for (const auto &v : eta) s += std::norm(v);
    CHECK(std::sqrt(s) == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("step 1 of the rounding scheme") {
  Rng rng(61);
  SUBCASE("noiseless data recovers the autocorrelation and the magnitudes") {
    for (std::size_t s : {1, 4, 9}) {
      const auto x = random_binary(50, s, rng);
      const auto b = magnitude(DftPlan::classic(50), x.to_complex());
      const auto a = rounded_periodic_autocorrelation(b);
      CHECK(a == periodic_autocorrelation_counts(x));
      const auto bh = magnitudes_from_periodic(a);
      CHECK(oracle::max_abs_diff(values(bh), values(b)) < 1e-9);
    }
  }
  SUBCASE("noise under 1/(8s) in sup norm is removed exactly") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 500; ++t) {
      const std::size_t s = 1 + t % 10;
      const auto x = random_binary(50, s, rng);
      const auto b = magnitude(DftPlan::classic(50), x.to_complex());
      std::vector<double> noisy = values(b);
      for (auto &v : noisy) v += 0.999 / (8.0 * static_cast<double>(s)) * u(rng);
      const MagnitudeMeasurements bt(noisy, b.scheme(), true);
      const auto a = rounded_periodic_autocorrelation(bt);
      CHECK(a == periodic_autocorrelation_counts(x));
      CHECK(a == oracle_step1(noisy));
    }
  }
  SUBCASE("oversampled, N = 50, M = 99, noiseless") {
    for (std::size_t s : {1, 3, 5, 10}) {
      const auto x = random_binary(50, s, rng);
      const auto b = magnitude(DftPlan(50, 99), x.to_complex());
      const auto a = rounded_regular_autocorrelation(b, 50);
      CHECK(a == regular_autocorrelation_counts(x));
      const auto bh = magnitudes_from_regular(a, 99);
      CHECK(oracle::max_abs_diff(values(bh), values(b)) < 1e-8);
    }
  }
  SUBCASE("magnitudes stay accurate at exact spectral zeros") {
    // Three consecutive ones sum cube roots of unity at k = M/3 and k = N/3.
    std::vector<std::uint8_t> bits(50, 0);
    bits[0] = bits[1] = bits[2] = 1;
    const BinarySignal x(bits);
    const auto b = magnitude(DftPlan(50, 99), x.to_complex());
    const auto bh = magnitudes_from_regular(rounded_regular_autocorrelation(b, 50), 99);
    CHECK(bh[33] < 1e-12);
    CHECK(oracle::max_abs_diff(values(bh), values(b)) < 1e-12);

    bits.resize(48);
    const BinarySignal y(bits);
    const auto c = magnitude(DftPlan::classic(48), y.to_complex());
    const auto ch = magnitudes_from_periodic(rounded_periodic_autocorrelation(c));
    CHECK(ch[16] < 1e-12);
    CHECK(oracle::max_abs_diff(values(ch), values(c)) < 1e-12);
  }
  SUBCASE("too few oversampled measurements") {
    const auto b = magnitude(DftPlan(50, 98), ComplexSignal::ones(50));
    CHECK_THROWS_AS(rounded_regular_autocorrelation(b, 50), DimensionError);
  }
}

TEST_CASE("denoising pipelines on degenerate input") {
  AdmmParams params;
  params.max_iters = 200;
  const MagnitudeMeasurements zero(std::vector<double>(20, 0.0), SamplingScheme::classic(20));
  const MagnitudeMeasurements zero_over(std::vector<double>(39, 0.0),
                                        SamplingScheme::oversampled(20, 39));
  CHECK(rounding_scheme(zero, 20, params).recovered.support_count() == 0);
  CHECK(naive_scheme(zero, 20, params).recovered.support_count() == 0);
  CHECK(rounding_scheme_oversampled(zero_over, 20, params).recovered.support_count() == 0);
  CHECK(naive_scheme(zero_over, 20, params).recovered.support_count() == 0);
  CHECK(rounding_scheme(zero, 20, params).success);

  const auto short_over = magnitude(DftPlan(20, 30), ComplexSignal::ones(20));
  CHECK_THROWS_AS(rounding_scheme_oversampled(short_over, 20, params), DimensionError);
  CHECK_THROWS_AS(rounding_scheme(short_over, 20, params), SchemeError);
}

TEST_CASE("rounding and naive schemes coincide on noiseless data") {
  Rng rng(62);
  AdmmParams params;
  params.max_iters = 1500;
  for (int t = 0; t < 8; ++t) {
    const auto x = random_binary(50, 1 + t % 5, rng);
    const auto b = magnitude(DftPlan::classic(50), x.to_complex());
    params.seed = rng();
    const auto r = rounding_scheme(b, 50, params, &b);
    const auto n = naive_scheme(b, 50, params, &b);
    CHECK(r.recovered == n.recovered);
    CHECK(r.success == n.success);
    CHECK(r.autocorr_estimate == periodic_autocorrelation_counts(x));
    CHECK(n.autocorr_estimate.empty());
    // Fed the rounding scheme's b̂, the naive pipeline is the same computation.
    const auto bh = magnitudes_from_periodic(rounded_periodic_autocorrelation(b));
    const auto same = naive_scheme(bh, 50, params, &b);
    CHECK(same.recovered == r.recovered);
    CHECK(same.iters == r.iters);
    CHECK(same.residual == r.residual);
  }
}

TEST_CASE("success is judged against the clean reference") {
  Rng rng(63);
  AdmmParams params;
  const auto x = random_binary(50, 2, rng);
  const auto b = magnitude(DftPlan::classic(50), x.to_complex());
  NoiseSpec spec;
  spec.snr_db = 30.0;
  spec.seed = 1;
  const auto bt = add_noise(b, x, spec);
  const auto out = rounding_scheme(bt, 50, params, &b, 20);
  CHECK(out.residual == doctest::Approx(magnitude_residual(b, out.recovered.to_complex())));
  CHECK(out.success == (out.residual < params.success_tol));
  CHECK(out.success);
  CHECK(out.scheme == DenoiseScheme::rounding);
  CHECK(run_scheme(DenoiseScheme::rounding, bt, 50, params, &b, 20).recovered == out.recovered);
}

TEST_CASE("scheme names") {
  for (auto s : {DenoiseScheme::rounding, DenoiseScheme::naive, DenoiseScheme::rounding_oversampled,
                 DenoiseScheme::naive_oversampled}) {
    CHECK(parse_scheme(to_string(s)) == s);
  }
  CHECK_THROWS_AS(parse_scheme("magic"), ParameterError);
}

TEST_CASE("noise bound checks") {
  SUBCASE("zero noise") {
    const auto x = BinarySignal::parse("1101000000");
    const std::vector<Complex> eta(10);
    const auto c = check_bound(x, eta);
    CHECK(c.deviation < 1e-12);
    CHECK(c.conclusion);
    CHECK(c.sparsity_hypothesis);
    CHECK(c.length_hypothesis);
    CHECK_FALSE(c.violated());
  }
  SUBCASE("threshold value") {
    CHECK(snr_threshold_db(1) == doctest::Approx(18.0618).epsilon(1e-5));
    CHECK(snr_threshold_db(5) == doctest::Approx(10 * std::log10(64.0) + 30 * std::log10(5.0)));
    CHECK(snr_threshold_db(5) == doctest::Approx(39.03).epsilon(1e-3));
  }
  SUBCASE("deviation matches a direct evaluation") {
    std::mt19937_64 rng(64);
    const auto bits = oracle::random_bits(16, rng);
    const BinarySignal x(std::vector<std::uint8_t>(bits.begin(), bits.end()));
    const auto eta = oracle::random_complex(16, rng);
    std::vector<Complex> small(eta.size());
    for (std::size_t k = 0; k < eta.size(); ++k) small[k] = 0.01 * eta[k];
    const auto fx = oracle::dft(oracle::from_bits(bits), 16);
    oracle::Vec sq(16);
    for (std::size_t k = 0; k < 16; ++k) {
      const Complex bt = std::abs(fx[k]) + small[k];
      sq[k] = bt * bt;
    }
    const auto a = oracle::idft(sq);
    const auto counts = oracle::pair_counts(bits);
    double dev = 0.0;
    for (std::size_t k = 0; k < 16; ++k) dev = std::max(dev, std::abs(a[k] - static_cast<double>(counts[k])));
    CHECK(check_bound(x, small).deviation == doctest::Approx(dev).epsilon(1e-9));
  }
  SUBCASE("random instances at 0.9 of the sparsity bound") {
    Rng rng(65);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t violations = 0, concluded = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 8 + t % 57;
      const std::size_t s = 1 + rng() % n;
      const auto x = random_binary(n, s, rng);
      std::vector<Complex> eta(n);
      for (auto &e : eta) e = std::polar(u(rng), 6.283185307179586 * u(rng));
      double inf = 0.0;
      for (const auto &e : eta) inf = std::max(inf, std::abs(e));
      for (auto &e : eta) e *= 0.9 / (8.0 * static_cast<double>(s)) / inf;
      const auto c = check_bound(x, eta);
      CHECK(c.sparsity_hypothesis);
      violations += c.violated() ? 1 : 0;
      concluded += c.conclusion ? 1 : 0;
    }
    CHECK(violations == 0);
    CHECK(concluded == static_cast<std::size_t>(trials));
  }
  SUBCASE("the SNR hypothesis implies the conclusion") {
    Rng rng(66);
    std::size_t hyp = 0;
    for (int t = 0; t < 500; ++t) {
      const std::size_t s = 1 + t % 3;
      const auto x = random_binary(30, s, rng);
      const double snr = snr_threshold_db(s) + 0.01 + (t % 7);
      const auto eta = sample_noise(30, std::sqrt(static_cast<double>(s) * std::pow(10.0, -snr / 10.0)),
                                    NoiseKind::complex_gaussian, rng());
      const auto c = check_bound(x, eta);
      hyp += c.snr_hypothesis ? 1 : 0;
      CHECK_FALSE(c.violated());
    }
    CHECK(hyp == 500);
  }
  SUBCASE("step-1 exactness whenever the deviation is under one half") {
    Rng rng(67);
    std::normal_distribution<double> g;
    for (int t = 0; t < 300; ++t) {
      const std::size_t s = 1 + t % 8;
      const auto x = random_binary(40, s, rng);
      const auto b = magnitude(DftPlan::classic(40), x.to_complex());
      std::vector<Complex> eta(40);
      std::vector<double> noisy = values(b);
      const double scale = 0.02 * (1 + t % 10);
      for (std::size_t k = 0; k < 40; ++k) {
        eta[k] = scale * g(rng);
        noisy[k] += eta[k].real();
      }
      const auto c = check_bound(x, eta);
      const auto a = rounded_periodic_autocorrelation(MagnitudeMeasurements(noisy, b.scheme(), true));
      if (c.conclusion) CHECK(a == periodic_autocorrelation_counts(x));
    }
  }
}

TEST_CASE("step-1 recovery is monotone over a small grid") {
  ExperimentGrid grid;
  grid.n = 50;
  grid.supports = {1, 2, 3, 4, 5};
  grid.snr_db = {40, 32, 24, 16, 8, 0};
  grid.trials = 100;
  grid.schemes = {DenoiseScheme::rounding};
  grid.step1_only = true;
  grid.seed = 11;
  grid.threads = 1;
  const auto r = run_grid(grid);
  const double slack = 0.02;
  for (std::size_t i = 0; i < grid.supports.size(); ++i) {
    for (std::size_t j = 0; j < grid.snr_db.size(); ++j) {
      const double here = r.cell(DenoiseScheme::rounding, grid.supports[i], grid.snr_db[j]).rate();
      if (i + 1 < grid.supports.size()) {
        CHECK(r.cell(DenoiseScheme::rounding, grid.supports[i + 1], grid.snr_db[j]).rate() <=
              here + slack);
      }
      if (j + 1 < grid.snr_db.size()) {
        CHECK(r.cell(DenoiseScheme::rounding, grid.supports[i], grid.snr_db[j + 1]).rate() <=
              here + slack);
      }
    }
  }
}
