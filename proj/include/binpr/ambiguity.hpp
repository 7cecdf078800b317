#pragma once

// Trivial ambiguities, the complement-flip ambiguity, canonical forms of binary
// signals and brute-force uniqueness oracles.

#include "binpr/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace binpr {

/// y_k = e^{iφ} x̃_{(k+shift) mod N}, where x̃ = x or, when `reflect` is set,
/// the conjugate inverse x̃_j = conj(x_{−j}).
struct TrivialAmbiguity {
  double phase = 0.0; ///< φ in [0, 2π)
  std::size_t shift = 0;
  bool reflect = false;

  /// The single ambiguity equivalent to applying `first`, then `second`.
  static TrivialAmbiguity compose(const TrivialAmbiguity &first,
                                  const TrivialAmbiguity &second,
                                  std::size_t n);
};

ComplexSignal apply_trivial(const ComplexSignal &x, const TrivialAmbiguity &t);
BinarySignal apply_trivial(const BinarySignal &x, std::size_t shift, bool reflect);

struct ComplementAmbiguity {
  Complex c;       ///< (1 + e^{−iθ}) Σx_i / N
  ComplexSignal y; ///< c𝟙 − x
};

ComplementAmbiguity complement_ambiguity(const ComplexSignal &x, double theta);

/// Which measurements define "same magnitudes", and with them the trivial
/// group used for classes.
enum class MeasurementMode {
  /// |F x| via integer Aut_p. Trivial group: cyclic shifts and reversal, plus
  /// the 𝟙 − x flip when the support is exactly N/2.
  classic,
  /// |F_M x| with M ≥ 2N−1 via integer regular Aut. Trivial group: reversal
  /// y_n = x_{N−1−n} and translations of the support inside the window.
  oversampled,
};

struct EquivalenceClass {
  BinarySignal representative;
  std::size_t orbit_size;
};

/// Canonical representative of the shift × reversal orbit: the member with
/// the smallest bitmask value, where entry k is bit k (so e_0 is canonical
/// among the deltas).
EquivalenceClass canonicalize(const BinarySignal &x);
/// Canonical representative under the oversampled-mode group.
EquivalenceClass canonicalize_windowed(const BinarySignal &x);

/// All members of the shift × reversal orbit, sorted.
std::vector<BinarySignal> trivial_orbit(const BinarySignal &x);

struct EnumerationOptions {
  MeasurementMode mode = MeasurementMode::classic;
  std::size_t max_length = 20;
  std::size_t threads = 1;
};

/// Every y ∈ {0,1}^N whose integer autocorrelation equals that of x, sorted
/// by bitmask. Throws CapExceededError when N > max_length.
std::vector<BinarySignal> enumerate_matching(const BinarySignal &x,
                                             const EnumerationOptions &opts = {});

struct UniquenessRow {
  std::size_t support_count = 0;
  std::size_t num_classes = 0;
  std::size_t num_unique_classes = 0;
  std::string example_nonunique; ///< canonical bits, empty when all unique
};

/// Exhaustive classification of {0,1}^N, aggregated by support size.
std::vector<UniquenessRow> uniqueness_report(std::size_t n,
                                             const EnumerationOptions &opts = {});

/// True when x_n = x_{N−1−n} for all n.
bool is_palindrome(const BinarySignal &x);

} // namespace binpr
