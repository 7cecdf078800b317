#pragma once

// Measurement operators: classic and oversampled DFT, STFT and FROG traces.

#include "binpr/signal.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace binpr {

/// F_{N→M}: the M×N matrix with entries ω^{nk}, ω = exp(−2πi/M).
class DftPlan {
public:
  /// Requires input_length >= 1 and output_length >= 1.
  DftPlan(std::size_t input_length, std::size_t output_length);
  static DftPlan classic(std::size_t n) { return DftPlan(n, n); }

  std::size_t input_length() const noexcept { return n_; }
  std::size_t output_length() const noexcept { return m_; }
  Complex root() const;
  /// Matrix entry (row, col) = ω^{row·col}.
  Complex entry(std::size_t row, std::size_t col) const;

  /// F x. Uses a zero-padded FFT when M >= N, direct evaluation otherwise.
  std::vector<Complex> apply(std::span<const Complex> x) const;
  /// F x by the O(MN) matrix product.
  std::vector<Complex> apply_direct(std::span<const Complex> x) const;
  /// F* z (length N).
  std::vector<Complex> adjoint(std::span<const Complex> z) const;

private:
  std::size_t n_;
  std::size_t m_;
};

ComplexSignal dft(const DftPlan &plan, const ComplexSignal &x);
/// Inverse of the classic N-point DFT: (1/N) F* v.
ComplexSignal inverse_dft(std::span<const Complex> v);

struct SamplingScheme {
  enum class Kind { classic, oversampled, stft, frog };
  Kind kind = Kind::classic;
  std::size_t signal_length = 0;
  std::size_t output_length = 0; ///< M for classic/oversampled
  std::size_t window_length = 0; ///< W for STFT
  std::size_t hop = 0;           ///< L for STFT and FROG

  static SamplingScheme classic(std::size_t n);
  static SamplingScheme oversampled(std::size_t n, std::size_t m);
  static SamplingScheme stft(std::size_t n, std::size_t w, std::size_t l);
  static SamplingScheme frog(std::size_t n, std::size_t l);

  bool is_fourier() const noexcept {
    return kind == Kind::classic || kind == Kind::oversampled;
  }
  std::string describe() const;
  friend bool operator==(const SamplingScheme &, const SamplingScheme &) = default;
};

/// Fourier magnitude data b (or noisy b̃) for a classic/oversampled scheme.
///
/// Clean measurements are nonnegative. Noisy ones keep whatever sign the
/// additive noise produced; downstream consumers square them.
class MagnitudeMeasurements {
public:
  MagnitudeMeasurements(std::vector<double> values, SamplingScheme scheme,
                        bool noisy = false);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }
  const SamplingScheme &scheme() const noexcept { return scheme_; }
  std::size_t signal_length() const noexcept { return scheme_.signal_length; }
  bool noisy() const noexcept { return noisy_; }

private:
  std::vector<double> values_;
  SamplingScheme scheme_;
  bool noisy_;
};

/// Row-major real matrix.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double &at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

struct StftMeasurements {
  Grid grid; ///< R × N magnitudes, R = ceil((N+W−1)/L)
  ComplexSignal window;
  std::size_t hop;
};

struct FrogMeasurements {
  Grid grid; ///< ceil(N/L) × N squared magnitudes
  std::size_t hop;
};

MagnitudeMeasurements magnitude(const DftPlan &plan, const ComplexSignal &x);

/// grid[m][n] = |Σ_k x_k w_{mL−k} e^{−2πikn/N}| with w zero outside 0..W−1.
StftMeasurements stft_magnitude(const ComplexSignal &x,
                                const ComplexSignal &window, std::size_t hop);

/// grid[m][n] = |Σ_k x_k x_{(k+mL) mod N} e^{−2πikn/N}|².
FrogMeasurements frog_trace(const ComplexSignal &x, std::size_t hop);

} // namespace binpr
