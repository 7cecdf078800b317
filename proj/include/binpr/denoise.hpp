#pragma once

// Noise injection at a prescribed SNR, the rounding and naive denoising
// pipelines, and executable checks of the autocorrelation error bounds.

#include "binpr/signal.hpp"
#include "binpr/solver.hpp"
#include "binpr/transforms.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace binpr {

enum class NoiseKind { real_gaussian, complex_gaussian };

/// What ‖η‖₂ is measured against.
enum class NoiseReference {
  /// ‖η‖₂ = ‖x‖₂ · 10^{−snr/20}
  signal,
  /// ‖η‖₂ = ‖b‖₂ · 10^{−snr/20}, i.e. the signal norm in unitary Fourier units.
  measurements,
};

struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity(); ///< +inf: no noise
  NoiseKind kind = NoiseKind::real_gaussian;
  std::uint64_t seed = 0;
  NoiseReference reference = NoiseReference::signal;
};

/// Draws i.i.d. standard normal entries (complex: independent real and
/// imaginary parts) and rescales them so ‖η‖₂ = target_norm exactly.
std::vector<Complex> sample_noise(std::size_t length, double target_norm,
                                  NoiseKind kind, std::uint64_t seed);

/// ‖η‖₂ prescribed by `spec` for ground truth x and clean data b.
double noise_norm(const BinarySignal &x, const MagnitudeMeasurements &b,
                  const NoiseSpec &spec);

/// b̃ = b + η with real Gaussian η. Entries of b̃ may come out negative.
/// Throws ParameterError for complex noise, which real magnitudes cannot hold.
MagnitudeMeasurements add_noise(const MagnitudeMeasurements &b,
                                const BinarySignal &x_true, const NoiseSpec &spec);

enum class DenoiseScheme { rounding, naive, rounding_oversampled, naive_oversampled };

std::string to_string(DenoiseScheme scheme);
/// Throws ParameterError for unknown names.
DenoiseScheme parse_scheme(std::string_view name);

struct DenoiseOutcome {
  DenoiseScheme scheme;
  BinarySignal recovered;
  bool success = false;
  double residual = 0.0; ///< ‖|F_M recovered| − reference‖₂
  int iters = 0;
  /// Integer autocorrelation estimate from step 1 (rounding schemes only):
  /// periodic lags 0..N−1, or regular lags 0..N−1 when oversampled.
  std::vector<std::int64_t> autocorr_estimate;
};

/// Step 1 of the rounding scheme: round(Re F⁻¹(b̃ ⊙ b̃)).
std::vector<std::int64_t> rounded_periodic_autocorrelation(const MagnitudeMeasurements &b);
/// Step 1 of the oversampled rounding scheme: regression then rounding of the
/// regular lags 0..N−1.
std::vector<std::int64_t> rounded_regular_autocorrelation(const MagnitudeMeasurements &b,
                                                          std::size_t n);

/// b̂ = sqrt(max(Re F(â), 0)) for periodic integer lags â.
MagnitudeMeasurements magnitudes_from_periodic(std::span<const std::int64_t> aut);
/// b̂_k = sqrt(max(Re e^{2πik(N−1)/M} B(e^{−2πik/M}), 0)) for regular lags 0..N−1.
MagnitudeMeasurements magnitudes_from_regular(std::span<const std::int64_t> aut,
                                              std::size_t m);

/// `reference` is the clean b used by the success test; when absent the
/// noisy input is used instead.
DenoiseOutcome rounding_scheme(const MagnitudeMeasurements &b_noisy, std::size_t n,
                               const AdmmParams &params,
                               const MagnitudeMeasurements *reference = nullptr,
                               std::size_t restarts = 1);
DenoiseOutcome naive_scheme(const MagnitudeMeasurements &b_noisy, std::size_t n,
                            const AdmmParams &params,
                            const MagnitudeMeasurements *reference = nullptr,
                            std::size_t restarts = 1);
DenoiseOutcome rounding_scheme_oversampled(const MagnitudeMeasurements &b_noisy,
                                           std::size_t n, const AdmmParams &params,
                                           const MagnitudeMeasurements *reference = nullptr,
                                           std::size_t restarts = 1);

DenoiseOutcome run_scheme(DenoiseScheme scheme, const MagnitudeMeasurements &b_noisy,
                          std::size_t n, const AdmmParams &params,
                          const MagnitudeMeasurements *reference = nullptr,
                          std::size_t restarts = 1);

/// Hypotheses of the noise bounds evaluated on a concrete (x, η), together
/// with the directly computed deviation ‖F⁻¹(b̃ ⊙ b̃) − Aut_p(x)‖∞.
struct BoundCheck {
  double eta_inf = 0.0;
  double deviation = 0.0;
  bool conclusion = false; ///< deviation < ½
  bool general_hypothesis = false;  ///< ‖η‖∞ < min{ε/(4‖b‖∞), ε/2, 1}, ε = ½
  bool sparsity_hypothesis = false; ///< ‖η‖∞ < 1/(8‖x‖₀)
  bool length_hypothesis = false;   ///< ‖η‖∞ < 1/(8N)
  bool snr_hypothesis = false;      ///< SNR_dB > 10log₁₀64 + 30log₁₀‖x‖₀

  /// Some hypothesis holds while the conclusion fails.
  bool violated() const {
    return !conclusion && (general_hypothesis || sparsity_hypothesis ||
                           length_hypothesis || snr_hypothesis);
  }
};

/// η may be complex; b̃ ⊙ b̃ is then the complex entrywise square.
BoundCheck check_bound(const BinarySignal &x, std::span<const Complex> eta);

/// 10 log₁₀ 64 + 30 log₁₀ s
double snr_threshold_db(std::size_t support);

} // namespace binpr
