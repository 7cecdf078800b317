#include "binpr/denoise.hpp"

#include "binpr/autocorr.hpp"
#include "binpr/errors.hpp"
#include "binpr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef BINPR_HAVE_QUADMATH
#include <quadmath.h>
#endif

namespace binpr {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

DenoiseOutcome finish(DenoiseScheme scheme, const SolveResult &solved,
                      const MagnitudeMeasurements &b_noisy,
                      const MagnitudeMeasurements *reference,
                      const AdmmParams &params) {
  DenoiseOutcome out{scheme, round_to_binary(solved.x_star), false, 0.0,
                     solved.iters_used, {}};
  const MagnitudeMeasurements &ref = reference ? *reference : b_noisy;
  out.residual = magnitude_residual(ref, out.recovered.to_complex());
  out.success = out.residual < params.success_tol;
  return out;
}

SolveResult solve(const MagnitudeMeasurements &b, std::size_t n,
                  const AdmmParams &params, std::size_t restarts) {
  return restarts <= 1 ? admm_solve(b, n, params)
                       : admm_solve_multistart(b, n, params, restarts);
}

void require_kind(const MagnitudeMeasurements &b, SamplingScheme::Kind kind,
                  const char *what) {
  if (b.scheme().kind != kind) {
    throw SchemeError(std::string(what) + ": unsupported scheme " + b.scheme().describe());
  }
}

#ifdef BINPR_HAVE_QUADMATH
using Wide = __float128;
Wide wide_cos(Wide v) { return cosq(v); }
Wide wide_pi() { return acosq(-1); }
Wide wide_sqrt(Wide v) { return sqrtq(v); }
#else
using Wide = long double;
Wide wide_cos(Wide v) { return std::cos(v); }
Wide wide_pi() { return std::numbers::pi_v<long double>; }
Wide wide_sqrt(Wide v) { return std::sqrt(v); }
#endif

// √(Σ_j w_j cos(2πjk/M)) for k < M. Near spectral zeros the square root turns
// rounding error ε in the sum into √ε, so the sum runs in extended precision
// with exact integer argument reduction.
std::vector<double> root_cosine_sums(std::span<const std::int64_t> weights, std::size_t m) {
  const Wide step = 2 * wide_pi() / static_cast<Wide>(m);
  std::vector<Wide> cosines(m);
  for (std::size_t j = 0; j < m; ++j) cosines[j] = wide_cos(step * static_cast<Wide>(j));
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    Wide sum = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      sum += static_cast<Wide>(weights[j]) * cosines[(j * k) % m];
    }
    out[k] = sum > 0 ? static_cast<double>(wide_sqrt(sum)) : 0.0;
  }
  return out;
}

} // namespace

std::vector<Complex> sample_noise(std::size_t length, double target_norm,
                                  NoiseKind kind, std::uint64_t seed) {
  if (!(target_norm >= 0.0) || !std::isfinite(target_norm)) {
    throw ParameterError("sample_noise: target norm must be finite and >= 0");
  }
  std::vector<Complex> eta(length);
  if (target_norm == 0.0 || length == 0) return eta;
  Rng rng(seed);
  std::normal_distribution<double> normal;
  double s = 0.0;
  // A zero draw has probability zero, but redraw rather than divide by it.
  while (s == 0.0) {
    for (auto &e : eta) {
      const double re = normal(rng);
      const double im = kind == NoiseKind::complex_gaussian ? normal(rng) : 0.0;
      e = {re, im};
    }
    s = 0.0;
    for (const auto &e : eta) s += std::norm(e);
  }
  const double scale = target_norm / std::sqrt(s);
  for (auto &e : eta) e *= scale;
  return eta;
}

double noise_norm(const BinarySignal &x, const MagnitudeMeasurements &b,
                  const NoiseSpec &spec) {
  if (std::isnan(spec.snr_db)) throw ParameterError("noise: SNR is NaN");
  if (spec.snr_db == std::numeric_limits<double>::infinity()) return 0.0;
  const double ref = spec.reference == NoiseReference::signal
                         ? std::sqrt(static_cast<double>(x.support_count()))
                         : norm2(b.values());
  return ref * std::pow(10.0, -spec.snr_db / 20.0);
}

MagnitudeMeasurements add_noise(const MagnitudeMeasurements &b,
                                const BinarySignal &x_true, const NoiseSpec &spec) {
  if (spec.kind != NoiseKind::real_gaussian) {
    throw ParameterError("add_noise: magnitudes only carry real noise");
  }
  if (x_true.size() != b.signal_length()) {
    throw DimensionError("add_noise: x_true does not match the measurements");
  }
  const double target = noise_norm(x_true, b, spec);
  if (target == 0.0) return b;
  const auto eta = sample_noise(b.size(), target, spec.kind, spec.seed);
  std::vector<double> noisy(b.values().begin(), b.values().end());
  for (std::size_t k = 0; k < noisy.size(); ++k) noisy[k] += eta[k].real();
  return MagnitudeMeasurements(std::move(noisy), b.scheme(), true);
}

std::string to_string(DenoiseScheme scheme) {
  switch (scheme) {
  case DenoiseScheme::rounding: return "rounding";
  case DenoiseScheme::naive: return "naive";
  case DenoiseScheme::rounding_oversampled: return "rounding_oversampled";
  case DenoiseScheme::naive_oversampled: return "naive_oversampled";
  }
  return "?";
}

DenoiseScheme parse_scheme(std::string_view name) {
  for (auto s : {DenoiseScheme::rounding, DenoiseScheme::naive,
                 DenoiseScheme::rounding_oversampled, DenoiseScheme::naive_oversampled}) {
    if (to_string(s) == name) return s;
  }
  throw ParameterError("unknown scheme '" + std::string(name) + "'");
}

std::vector<std::int64_t> rounded_periodic_autocorrelation(const MagnitudeMeasurements &b) {
  return round_real_parts(autocorr_from_magnitudes(b).values());
}

std::vector<std::int64_t> rounded_regular_autocorrelation(const MagnitudeMeasurements &b,
                                                          std::size_t n) {
  const auto aut = regular_autocorr_from_oversampled(b, n, RegressionModel::real_symmetric);
  std::vector<std::int64_t> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = round_half_away(aut.at(static_cast<long long>(j)).real());
  }
  return out;
}

MagnitudeMeasurements magnitudes_from_periodic(std::span<const std::int64_t> aut) {
  const std::size_t n = aut.size();
  if (n == 0) throw DimensionError("magnitudes_from_periodic: empty input");
  // Real part of the DFT; the imaginary part vanishes for a symmetric sequence.
  std::vector<std::int64_t> weights(aut.begin(), aut.end());
  return MagnitudeMeasurements(root_cosine_sums(weights, n), SamplingScheme::classic(n));
}

MagnitudeMeasurements magnitudes_from_regular(std::span<const std::int64_t> aut,
                                              std::size_t m) {
  const std::size_t n = aut.size();
  if (n == 0) throw DimensionError("magnitudes_from_regular: empty input");
  // |F_M x|²_k = a_0 + 2 Σ_{l≥1} a_l cos(2πlk/M) for a real, even Aut.
  std::vector<std::int64_t> weights(aut.begin(), aut.end());
  for (std::size_t j = 1; j < n; ++j) weights[j] *= 2;
  return MagnitudeMeasurements(root_cosine_sums(weights, m), SamplingScheme::oversampled(n, m));
}

DenoiseOutcome rounding_scheme(const MagnitudeMeasurements &b_noisy, std::size_t n,
                               const AdmmParams &params,
                               const MagnitudeMeasurements *reference,
                               std::size_t restarts) {
  require_kind(b_noisy, SamplingScheme::Kind::classic, "rounding_scheme");
  if (n != b_noisy.signal_length()) throw DimensionError("rounding_scheme: N mismatch");
  auto aut = rounded_periodic_autocorrelation(b_noisy);
  const auto b_hat = magnitudes_from_periodic(aut);
  auto out = finish(DenoiseScheme::rounding, solve(b_hat, n, params, restarts), b_noisy,
                    reference, params);
  out.autocorr_estimate = std::move(aut);
  return out;
}

DenoiseOutcome naive_scheme(const MagnitudeMeasurements &b_noisy, std::size_t n,
                            const AdmmParams &params,
                            const MagnitudeMeasurements *reference,
                            std::size_t restarts) {
  if (!b_noisy.scheme().is_fourier()) {
    throw SchemeError("naive_scheme: needs classic or oversampled measurements");
  }
  const auto scheme = b_noisy.scheme().kind == SamplingScheme::Kind::classic
                          ? DenoiseScheme::naive
                          : DenoiseScheme::naive_oversampled;
  return finish(scheme, solve(b_noisy, n, params, restarts), b_noisy, reference, params);
}

DenoiseOutcome rounding_scheme_oversampled(const MagnitudeMeasurements &b_noisy,
                                           std::size_t n, const AdmmParams &params,
                                           const MagnitudeMeasurements *reference,
                                           std::size_t restarts) {
  require_kind(b_noisy, SamplingScheme::Kind::oversampled, "rounding_scheme_oversampled");
  auto aut = rounded_regular_autocorrelation(b_noisy, n);
  const auto b_hat = magnitudes_from_regular(aut, b_noisy.size());
  auto out = finish(DenoiseScheme::rounding_oversampled, solve(b_hat, n, params, restarts),
                    b_noisy, reference, params);
  out.autocorr_estimate = std::move(aut);
  return out;
}

DenoiseOutcome run_scheme(DenoiseScheme scheme, const MagnitudeMeasurements &b_noisy,
                          std::size_t n, const AdmmParams &params,
                          const MagnitudeMeasurements *reference, std::size_t restarts) {
  switch (scheme) {
  case DenoiseScheme::rounding:
    return rounding_scheme(b_noisy, n, params, reference, restarts);
  case DenoiseScheme::rounding_oversampled:
    return rounding_scheme_oversampled(b_noisy, n, params, reference, restarts);
  case DenoiseScheme::naive:
  case DenoiseScheme::naive_oversampled:
    return naive_scheme(b_noisy, n, params, reference, restarts);
  }
  throw ParameterError("run_scheme: unknown scheme");
}

double snr_threshold_db(std::size_t support) {
  if (support == 0) throw ParameterError("snr_threshold_db: support must be >= 1");
  return 10.0 * std::log10(64.0) + 30.0 * std::log10(static_cast<double>(support));
}

BoundCheck check_bound(const BinarySignal &x, std::span<const Complex> eta) {
  const std::size_t n = x.size();
  if (eta.size() != n) throw DimensionError("check_bound: eta must have length N");
  const auto fx = DftPlan::classic(n).apply(x.to_complex().samples());

  std::vector<Complex> sq(n);
  double b_inf = 0.0;
  double eta_sq = 0.0;
  BoundCheck out;
  for (std::size_t k = 0; k < n; ++k) {
    const double bk = std::abs(fx[k]);
    const Complex bt = bk + eta[k];
    sq[k] = bt * bt;
    b_inf = std::max(b_inf, bk);
    out.eta_inf = std::max(out.eta_inf, std::abs(eta[k]));
    eta_sq += std::norm(eta[k]);
  }
  const auto approx = inverse_dft(sq);
  const auto exact = periodic_autocorrelation_counts(x);
  for (std::size_t j = 0; j < n; ++j) {
    out.deviation = std::max(out.deviation,
                             std::abs(approx[j] - static_cast<double>(exact[j])));
  }
  out.conclusion = out.deviation < 0.5;

  const double s = static_cast<double>(x.support_count());
  if (s == 0.0) return out; // every bound assumes x ≠ 0
  constexpr double eps = 0.5;
  out.general_hypothesis = out.eta_inf < std::min({eps / (4.0 * b_inf), eps / 2.0, 1.0});
  out.sparsity_hypothesis = out.eta_inf < 1.0 / (8.0 * s);
  out.length_hypothesis = out.eta_inf < 1.0 / (8.0 * static_cast<double>(n));
  const double snr = eta_sq == 0.0 ? std::numeric_limits<double>::infinity()
                                   : 10.0 * std::log10(s / eta_sq);
  out.snr_hypothesis = snr > snr_threshold_db(x.support_count());
  return out;
}

} // namespace binpr
