#pragma once

// Monte-Carlo success-rate grids over sparsity × SNR and the ρ₁ × ρ₂ study.

#include "binpr/denoise.hpp"
#include "binpr/rng.hpp"
#include "binpr/solver.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace binpr {

struct ExperimentGrid {
  std::size_t n = 50;
  /// Output length for the oversampled schemes; 0 means 2N − 1.
  std::size_t m = 0;
  std::vector<std::size_t> supports{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> snr_db{36, 32, 28, 24, 20, 16, 12, 8, 4, 0};
  std::size_t trials = 1000;
  std::vector<DenoiseScheme> schemes{DenoiseScheme::rounding, DenoiseScheme::naive};
  std::uint64_t seed = 0;
  AdmmParams params;
  std::size_t restarts = 1;
  std::size_t threads = 0; ///< 0: hardware concurrency
  NoiseReference noise_reference = NoiseReference::signal;
  /// Evaluate only step 1 of the rounding schemes (no solver runs); a trial
  /// then succeeds when the rounded autocorrelation is exact.
  bool step1_only = false;

  std::size_t oversampled_length() const { return m == 0 ? 2 * n - 1 : m; }
  /// Throws ParameterError on empty lists, zero trials or invalid supports.
  void validate() const;
};

struct TrialRow {
  DenoiseScheme scheme;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t support = 0;
  double snr_db = 0.0;
  std::size_t trial = 0;
  bool success = false;
  double residual = 0.0;
  int iters = 0;
  bool autocorr_exact = false; ///< rounding schemes: step 1 hit the true lags
};

struct CellRate {
  DenoiseScheme scheme;
  std::size_t support = 0;
  double snr_db = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  std::size_t autocorr_exact = 0;

  double rate() const { return trials ? double(successes) / double(trials) : 0.0; }
  double autocorr_rate() const {
    return trials ? double(autocorr_exact) / double(trials) : 0.0;
  }
};

struct GridResult {
  /// Ordered by scheme, then support, then SNR, in grid order.
  std::vector<CellRate> cells;
  /// Ordered by support, SNR, trial, then scheme.
  std::vector<TrialRow> rows;

  /// Throws ParameterError when the cell is not part of the grid.
  const CellRate &cell(DenoiseScheme scheme, std::size_t support, double snr_db) const;
};

/// Uniformly random x ∈ {0,1}^N with exactly `support` ones.
BinarySignal random_binary(std::size_t n, std::size_t support, Rng &rng);

/// Seed of trial `trial` in cell (support, snr). Schemes are deliberately not
/// part of the hash so all schemes of a cell see the same x, η and z⁰.
std::uint64_t trial_seed(std::uint64_t master, std::size_t support, double snr_db,
                         std::size_t trial);

GridResult run_grid(const ExperimentGrid &grid);

struct ParamStudyResult {
  std::vector<double> rho1;
  std::vector<double> rho2;
  /// Row-major rho1 × rho2 success rates per scheme.
  std::map<DenoiseScheme, std::vector<double>> rates;

  double rate(DenoiseScheme scheme, std::size_t i, std::size_t j) const {
    return rates.at(scheme)[i * rho2.size() + j];
  }
};

/// Sweeps (ρ₁, ρ₂) over a single cell: `cell` must hold exactly one support
/// and one SNR. Every grid point reuses the same trial seeds.
ParamStudyResult run_param_study(const std::vector<double> &rho1,
                                 const std::vector<double> &rho2,
                                 const ExperimentGrid &cell);

/// BINPR_THREADS when set to a positive integer, `requested` otherwise.
std::size_t threads_from_env(std::size_t requested);

} // namespace binpr
