#pragma once

// Periodic and regular autocorrelation, their spectral identities, and
// recovery of autocorrelations from (possibly noisy) magnitude data.

#include "binpr/signal.hpp"
#include "binpr/transforms.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace binpr {

/// (Aut_p x)_j = Σ_k x_{(k+j) mod N} conj(x_k), j = 0..N−1.
class PeriodicAutocorrelation {
public:
  explicit PeriodicAutocorrelation(std::vector<Complex> values);

  std::size_t size() const noexcept { return values_.size(); }
  const Complex &operator[](std::size_t lag) const { return values_[lag]; }
  std::span<const Complex> values() const noexcept { return values_; }

private:
  std::vector<Complex> values_;
};

/// (Aut x)_j for j = −(N−1)..N−1 with zero padding outside 0..N−1.
class RegularAutocorrelation {
public:
  /// `values` is ordered from lag −(N−1) to lag N−1 (length 2N−1).
  explicit RegularAutocorrelation(std::vector<Complex> values);

  std::size_t signal_length() const noexcept { return (values_.size() + 1) / 2; }
  long long max_lag() const noexcept {
    return static_cast<long long>(signal_length()) - 1;
  }
  const Complex &at(long long lag) const;
  std::span<const Complex> values() const noexcept { return values_; }

private:
  std::vector<Complex> values_;
};

/// A_x(z) = z^{N−1} Σ_{n=−(N−1)}^{N−1} (Aut x)_n zⁿ; coefficient i multiplies z^i.
struct AutPolynomial {
  std::vector<Complex> coefficients; ///< degree ≤ 2N−2

  static AutPolynomial from(const RegularAutocorrelation &aut);
  Complex evaluate(Complex z) const;
};

PeriodicAutocorrelation periodic_autocorrelation(const ComplexSignal &x);
RegularAutocorrelation regular_autocorrelation(const ComplexSignal &x);

/// Exact pair counts: entry k is the number of pairs of ones at wrap-around
/// distance k (entry 0 is the support size).
std::vector<std::int64_t> periodic_autocorrelation_counts(const BinarySignal &x);
/// Exact non-cyclic pair counts for lags 0..N−1 (negative lags mirror them).
std::vector<std::int64_t> regular_autocorrelation_counts(const BinarySignal &x);

/// F⁻¹(b ⊙ b); equals Aut_p(x) when b = |F x|. Requires a classic scheme.
PeriodicAutocorrelation autocorr_from_magnitudes(const MagnitudeMeasurements &b);

enum class RegressionModel {
  hermitian,      ///< complex lags with conj symmetry: 2N−1 real unknowns
  real_symmetric, ///< real, even lags: N real unknowns
};

/// Least-squares fit of the regular autocorrelation to b² from M ≥ 2N−1
/// oversampled magnitudes, via the normal equations in the conjugate-symmetric
/// parameterization. Throws DimensionError when M < 2N−1.
RegularAutocorrelation
regular_autocorr_from_oversampled(const MagnitudeMeasurements &b, std::size_t n,
                                  RegressionModel model = RegressionModel::hermitian);

/// |(F_M x)_k|² = e^{2πik(N−1)/M} A(e^{−2πik/M}), evaluated from an
/// autocorrelation. Returned values are real parts (imaginary residue dropped).
std::vector<double> squared_magnitudes_from(const RegularAutocorrelation &aut,
                                            std::size_t m);

/// Nearest integer with halves rounded away from zero.
std::int64_t round_half_away(double v);
std::vector<std::int64_t> round_real_parts(std::span<const Complex> values);

} // namespace binpr
