#include "binpr/autocorr.hpp"

#include "binpr/errors.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <numbers>

namespace binpr {

PeriodicAutocorrelation::PeriodicAutocorrelation(std::vector<Complex> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("PeriodicAutocorrelation: empty");
}

RegularAutocorrelation::RegularAutocorrelation(std::vector<Complex> values)
    : values_(std::move(values)) {
  if (values_.empty() || values_.size() % 2 == 0) {
    throw DimensionError("RegularAutocorrelation: length must be 2N-1");
  }
}

const Complex &RegularAutocorrelation::at(long long lag) const {
  if (lag < -max_lag() || lag > max_lag()) {
    throw DimensionError("RegularAutocorrelation: lag out of range");
  }
  return values_[static_cast<std::size_t>(lag + max_lag())];
}

AutPolynomial AutPolynomial::from(const RegularAutocorrelation &aut) {
  return {std::vector<Complex>(aut.values().begin(), aut.values().end())};
}

Complex AutPolynomial::evaluate(Complex z) const {
  Complex acc{};
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

PeriodicAutocorrelation periodic_autocorrelation(const ComplexSignal &x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n, Complex{});
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += x[(k + j) % n] * std::conj(x[k]);
    out[j] = acc;
  }
  return PeriodicAutocorrelation(std::move(out));
}

RegularAutocorrelation regular_autocorrelation(const ComplexSignal &x) {
  const auto n = static_cast<long long>(x.size());
  std::vector<Complex> out(static_cast<std::size_t>(2 * n - 1), Complex{});
  for (long long j = -(n - 1); j <= n - 1; ++j) {
    Complex acc{};
    for (long long k = 0; k < n; ++k) {
      const long long idx = k + j;
      if (idx < 0 || idx >= n) continue;
      acc += x[static_cast<std::size_t>(idx)] *
             std::conj(x[static_cast<std::size_t>(k)]);
    }
    out[static_cast<std::size_t>(j + n - 1)] = acc;
  }
  return RegularAutocorrelation(std::move(out));
}

std::vector<std::int64_t> periodic_autocorrelation_counts(const BinarySignal &x) {
  const std::size_t n = x.size();
  std::vector<std::int64_t> out(n, 0);
  if (n <= 64) {
    const std::uint64_t u = x.mask();
    const std::uint64_t full = n == 64 ? ~0ull : ((1ull << n) - 1);
    for (std::size_t k = 0; k < n; ++k) {
      // rotated_k has bit i set iff x_{(i+k) mod N} = 1
      const std::uint64_t rotated =
          k == 0 ? u : (((u >> k) | (u << (n - k))) & full);
      out[k] = std::popcount(u & rotated);
    }
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) out[k] += x[i] & x[(i + k) % n];
  }
  return out;
}

std::vector<std::int64_t> regular_autocorrelation_counts(const BinarySignal &x) {
  const std::size_t n = x.size();
  std::vector<std::int64_t> out(n, 0);
  if (n <= 64) {
    const std::uint64_t u = x.mask();
    for (std::size_t k = 0; k < n; ++k) out[k] = std::popcount(u & (u >> k));
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) out[k] += x[i] & x[i + k];
  }
  return out;
}

PeriodicAutocorrelation autocorr_from_magnitudes(const MagnitudeMeasurements &b) {
  if (b.scheme().kind != SamplingScheme::Kind::classic) {
    throw SchemeError("autocorr_from_magnitudes: requires classic measurements");
  }
  std::vector<Complex> power(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) power[k] = b[k] * b[k];
  const auto aut = inverse_dft(power);
  return PeriodicAutocorrelation(
      std::vector<Complex>(aut.samples().begin(), aut.samples().end()));
}

RegularAutocorrelation regular_autocorr_from_oversampled(
    const MagnitudeMeasurements &b, std::size_t n, RegressionModel model) {
  const std::size_t m = b.size();
  if (n == 0) throw DimensionError("regular_autocorr_from_oversampled: N = 0");
  if (m < 2 * n - 1) {
    throw DimensionError("regular_autocorr_from_oversampled: need M >= 2N-1, "
                         "system is underdetermined");
  }
  const bool hermitian = model == RegressionModel::hermitian;
  const std::size_t unknowns = hermitian ? 2 * n - 1 : n;

  // s_k = a_0 + Σ_{l≥1} 2 (p_l cos θ_{lk} + q_l sin θ_{lk}), θ_{lk} = 2πlk/M,
  // where Aut_l = p_l + i q_l and Aut_{−l} = conj(Aut_l).
  Eigen::MatrixXd design(static_cast<Eigen::Index>(m),
                         static_cast<Eigen::Index>(unknowns));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    design(row, 0) = 1.0;
    for (std::size_t l = 1; l < n; ++l) {
      const double theta = 2.0 * std::numbers::pi *
                           static_cast<double>((l * k) % m) /
                           static_cast<double>(m);
      design(row, static_cast<Eigen::Index>(l)) = 2.0 * std::cos(theta);
      if (hermitian) {
        design(row, static_cast<Eigen::Index>(n - 1 + l)) = 2.0 * std::sin(theta);
      }
    }
    rhs(row) = b[k] * b[k];
  }
  const Eigen::MatrixXd normal = design.transpose() * design;
  const Eigen::VectorXd theta = normal.ldlt().solve(design.transpose() * rhs);

  std::vector<Complex> lags(2 * n - 1);
  lags[n - 1] = theta(0);
  for (std::size_t l = 1; l < n; ++l) {
    const double re = theta(static_cast<Eigen::Index>(l));
    const double im = hermitian ? theta(static_cast<Eigen::Index>(n - 1 + l)) : 0.0;
    lags[n - 1 + l] = Complex{re, im};
    lags[n - 1 - l] = Complex{re, -im};
  }
  return RegularAutocorrelation(std::move(lags));
}

std::vector<double> squared_magnitudes_from(const RegularAutocorrelation &aut,
                                            std::size_t m) {
  if (m == 0) throw DimensionError("squared_magnitudes_from: M = 0");
  const auto poly = AutPolynomial::from(aut);
  const double shift = static_cast<double>(aut.signal_length() - 1);
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(m);
    const Complex z = std::polar(1.0, -phase);
    out[k] = (std::polar(1.0, phase * shift) * poly.evaluate(z)).real();
  }
  return out;
}

std::int64_t round_half_away(double v) {
  return static_cast<std::int64_t>(std::round(v));
}

std::vector<std::int64_t> round_real_parts(std::span<const Complex> values) {
  std::vector<std::int64_t> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    out[k] = round_half_away(values[k].real());
  }
  return out;
}

} // namespace binpr
