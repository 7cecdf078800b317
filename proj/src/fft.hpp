#pragma once

// Thin wrapper over FFTW's new-array execute interface. Plans are created once
// per (length, direction) and shared; execution is safe from multiple threads.

#include "binpr/signal.hpp"

#include <cstddef>
#include <span>

namespace binpr::detail {

enum class FftDirection { forward, backward };

/// Unnormalized DFT of `in` into `out` (both of length n, distinct buffers).
/// forward: out_k = Σ in_j e^{−2πijk/n}; backward uses e^{+2πijk/n}.
void fft(std::span<const Complex> in, std::span<Complex> out,
         FftDirection direction);

} // namespace binpr::detail
