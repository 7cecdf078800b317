#include "binpr/harness.hpp"

#include "binpr/autocorr.hpp"
#include "binpr/errors.hpp"
#include "binpr/parallel.hpp"
#include "binpr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace binpr {

namespace {

bool oversampled(DenoiseScheme s) {
  return s == DenoiseScheme::rounding_oversampled || s == DenoiseScheme::naive_oversampled;
}

bool rounding(DenoiseScheme s) {
  return s == DenoiseScheme::rounding || s == DenoiseScheme::rounding_oversampled;
}

constexpr std::uint64_t kSignalStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kSolverStream = 3;

// All schemes of one trial: the same x, the same η (per measurement length)
// and the same ADMM initial phases.
std::vector<TrialRow> run_trial(const ExperimentGrid &grid, std::size_t support,
                                double snr, std::size_t trial) {
  const std::uint64_t seed = trial_seed(grid.seed, support, snr, trial);
  Rng rng(derive_seed(seed, {kSignalStream}));
  const BinarySignal x = random_binary(grid.n, support, rng);

  AdmmParams params = grid.params;
  params.seed = derive_seed(seed, {kSolverStream});
  NoiseSpec noise;
  noise.snr_db = snr;
  noise.seed = derive_seed(seed, {kNoiseStream});
  noise.reference = grid.noise_reference;

  std::vector<TrialRow> rows;
  for (DenoiseScheme scheme : grid.schemes) {
    const std::size_t m = oversampled(scheme) ? grid.oversampled_length() : grid.n;
    const auto clean = magnitude(DftPlan(grid.n, m), x.to_complex());
    const auto noisy = add_noise(clean, x, noise);

    TrialRow row{scheme, grid.n, m, support, snr, trial, false, 0.0, 0, false};
    if (rounding(scheme)) {
      const auto estimate = scheme == DenoiseScheme::rounding
                                ? rounded_periodic_autocorrelation(noisy)
                                : rounded_regular_autocorrelation(noisy, grid.n);
      const auto exact = scheme == DenoiseScheme::rounding
                             ? periodic_autocorrelation_counts(x)
                             : regular_autocorrelation_counts(x);
      row.autocorr_exact = estimate == exact;
    }
    if (grid.step1_only) {
      row.success = row.autocorr_exact;
    } else {
      try {
        const auto out = run_scheme(scheme, noisy, grid.n, params, &clean, grid.restarts);
        row.success = out.success;
        row.residual = out.residual;
        row.iters = out.iters;
      } catch (const DivergenceError &) {
        row.residual = std::numeric_limits<double>::infinity();
        row.iters = params.max_iters;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace

void ExperimentGrid::validate() const {
  if (n == 0) throw ParameterError("grid: N must be >= 1");
  if (supports.empty() || snr_db.empty() || schemes.empty()) {
    throw ParameterError("grid: supports, SNR list and schemes must be nonempty");
  }
  if (trials == 0) throw ParameterError("grid: trials must be >= 1");
  if (restarts == 0) throw ParameterError("grid: restarts must be >= 1");
  for (std::size_t s : supports) {
    if (s > n) throw ParameterError("grid: support exceeds N");
  }
  for (double snr : snr_db) {
    if (std::isnan(snr)) throw ParameterError("grid: SNR is NaN");
  }
  const bool any_oversampled = std::any_of(schemes.begin(), schemes.end(), oversampled);
  if (any_oversampled && oversampled_length() < 2 * n - 1) {
    throw ParameterError("grid: oversampled schemes need M >= 2N - 1");
  }
  params.validate();
}

const CellRate &GridResult::cell(DenoiseScheme scheme, std::size_t support,
                                 double snr_db) const {
  for (const auto &c : cells) {
    if (c.scheme == scheme && c.support == support && c.snr_db == snr_db) return c;
  }
  throw ParameterError("grid: no such cell");
}

BinarySignal random_binary(std::size_t n, std::size_t support, Rng &rng) {
  if (support > n) throw ParameterError("random_binary: support exceeds N");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher–Yates: the first `support` slots are a uniform subset.
  for (std::size_t i = 0; i < support; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::vector<std::uint8_t> bits(n, 0);
  for (std::size_t i = 0; i < support; ++i) bits[idx[i]] = 1;
  return BinarySignal(std::move(bits));
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t support, double snr_db,
                         std::size_t trial) {
  return derive_seed(master, {support, seed_label(snr_db), trial});
}

GridResult run_grid(const ExperimentGrid &grid) {
  grid.validate();
  const std::size_t n_snr = grid.snr_db.size();
  const std::size_t tasks = grid.supports.size() * n_snr * grid.trials;
  std::vector<std::vector<TrialRow>> slots(tasks);
  parallel_for(tasks, grid.threads, [&](std::size_t t) {
    const std::size_t trial = t % grid.trials;
    const std::size_t cell = t / grid.trials;
    slots[t] = run_trial(grid, grid.supports[cell / n_snr], grid.snr_db[cell % n_snr], trial);
  });

  GridResult result;
  for (DenoiseScheme scheme : grid.schemes) {
    for (std::size_t s : grid.supports) {
      for (double snr : grid.snr_db) result.cells.push_back({scheme, s, snr, 0, 0, 0});
    }
  }
  const std::size_t per_scheme = grid.supports.size() * n_snr;
  for (std::size_t t = 0; t < tasks; ++t) {
    const std::size_t cell = t / grid.trials;
    for (std::size_t k = 0; k < slots[t].size(); ++k) {
      const TrialRow &row = slots[t][k];
      CellRate &c = result.cells[k * per_scheme + cell];
      ++c.trials;
      c.successes += row.success ? 1 : 0;
      c.autocorr_exact += row.autocorr_exact ? 1 : 0;
      result.rows.push_back(row);
    }
  }
  return result;
}

ParamStudyResult run_param_study(const std::vector<double> &rho1,
                                 const std::vector<double> &rho2,
                                 const ExperimentGrid &cell) {
  if (rho1.empty() || rho2.empty()) throw ParameterError("param study: empty rho grid");
  if (cell.supports.size() != 1 || cell.snr_db.size() != 1) {
    throw ParameterError("param study: the cell needs exactly one support and one SNR");
  }
  ParamStudyResult out{rho1, rho2, {}};
  for (DenoiseScheme s : cell.schemes) out.rates[s].assign(rho1.size() * rho2.size(), 0.0);
  for (std::size_t i = 0; i < rho1.size(); ++i) {
    for (std::size_t j = 0; j < rho2.size(); ++j) {
      ExperimentGrid g = cell;
      g.params.rho1 = rho1[i];
      g.params.rho2 = rho2[j];
      const GridResult r = run_grid(g);
      for (const auto &c : r.cells) out.rates[c.scheme][i * rho2.size() + j] = c.rate();
    }
  }
  return out;
}

std::size_t threads_from_env(std::size_t requested) {
  if (const char *env = std::getenv("BINPR_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception &) {
      // fall through to the requested value
    }
  }
  return requested;
}

} // namespace binpr
