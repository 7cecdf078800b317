#pragma once

// Executable checks of the relaxation theorems: a feasible point of the
// relaxed (box or convex-hull) problem must already lie in the discrete set.
//
// Each check has two prongs. The exhaustive prong groups every discrete
// signal up to length N by an exact integer key of its measurements and tests
// the count conclusions inside each group. The falsification prong runs
// projected gradient descent with Armijo backtracking on
// ½‖m(y) − m(x)‖² over the relaxed set from random starts (plus ADMM probes
// for the classic 0/1 case) and requires every non-discrete end point to have
// a measurement mismatch of at least `mismatch_floor`.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace binpr {

struct TheoremCheckReport {
  std::string theorem;
  std::size_t trials = 0;          ///< falsification runs + ADMM probes
  std::size_t exhaustive_signals = 0;
  std::size_t counterexamples = 0;
  std::map<std::string, double> params;
  /// Smallest ‖m(y)^{1/2} − m(x)^{1/2}‖₂ over non-discrete end points.
  double min_nonbinary_mismatch = std::numeric_limits<double>::infinity();
  std::size_t nonbinary_endpoints = 0;
  /// One line per counterexample, with the seed that reproduces it.
  std::vector<std::string> dumps;

  bool passed() const { return counterexamples == 0; }
};

struct PropertyOptions {
  std::size_t restarts = 1000;     ///< falsification runs per check
  std::size_t falsify_max_n = 8;   ///< lengths 2..min(N, this) are searched
  int max_iters = 400;             ///< projected-gradient iterations per run
  std::size_t admm_probes = 0;     ///< extra ADMM solves (classic 0/1 only)
  double nonbinary_distance = 1e-3;
  double mismatch_floor = 1e-4;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// x ∈ {α,β}^N, y ∈ [α,β]^N, |Fx| = |Fy|  ⇒  y ∈ {α,β}^N with the same counts.
/// Requires 0 ≤ α < β; exhaustive for every length 1..N (N ≤ 16).
TheoremCheckReport check_box_to_binary(std::size_t n, double alpha, double beta,
                                       const PropertyOptions &opts = {});

/// x ∈ {−1,1}^N, y ∈ [−1,1]^N, |Fx| = |Fy|  ⇒  y ∈ {−1,1}^N and #1(y) is #1(x)
/// or #−1(x).
TheoremCheckReport check_pm1_box(std::size_t n, const PropertyOptions &opts = {});

/// E = radius · (k-th roots of unity). Random points of conv E^N off E^N must
/// fall short of the Parseval norm; E-valued trivial-orbit pairs must match;
/// falsification searches over conv E^N.
TheoremCheckReport check_unimodular_hull(std::size_t roots, double radius,
                                         std::size_t n,
                                         const PropertyOptions &opts = {});

struct ExtensionScheme {
  enum class Kind {
    oversampled, ///< |F_M ·| with M ≥ N
    stft,        ///< window 𝟙 of length W ≥ L, hop L
    frog,        ///< 0/1 signals, hop L
    frog_pm1,    ///< ±1 signals, hop L
  };
  Kind kind = Kind::oversampled;
  /// Oversampled output length M ≥ N; 0 means 2L−1 for each length L.
  std::size_t m = 0;
  std::size_t window = 0;
  std::size_t hop = 1;
};

/// Throws ParameterError for an STFT with W < L, which the theorem excludes.
TheoremCheckReport check_extension(const ExtensionScheme &scheme, std::size_t n,
                                   const PropertyOptions &opts = {});

/// Every check at its default configuration, lengths up to n_max.
std::vector<TheoremCheckReport> run_all_checks(std::size_t n_max,
                                               const PropertyOptions &opts = {});

} // namespace binpr
