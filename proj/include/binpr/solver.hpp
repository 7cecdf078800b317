#pragma once

// ADMM for  min ‖|F_M x| − b‖²  subject to  x ∈ [0,1]^N.

#include "binpr/signal.hpp"
#include "binpr/transforms.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace binpr {

/// How the Fourier operator inside the splitting is scaled.
enum class FourierScaling {
  /// F_M/√M with measurements b/√M. F*F = I, so the x-update
  /// (ρ₁+ρ₂)⁻¹(ρ₁F*z + F*d + ρ₂y − w) is the exact subproblem minimizer.
  unitary,
  /// Raw F_M with raw b; the exact x-update divides by ρ₁M + ρ₂.
  unnormalized,
};

struct AdmmParams {
  double rho1 = 1e-5;
  double rho2 = 1e-5;
  int max_iters = 5000;
  /// Stop once ‖x^{k+1} − x^k‖₂ / max(1, ‖x^k‖₂) falls below this.
  double tol_primal = 1e-10;
  /// Residual below which a solve counts as a success.
  double success_tol = 1e-6;
  std::uint64_t seed = 0;
  FourierScaling scaling = FourierScaling::unitary;
  /// Use (ρ₁+ρ₂)⁻¹ in the x-update regardless of scaling.
  bool literal_x_update = false;
  /// Keep only the real part of x after each x-update.
  bool real_iterates = true;

  /// Throws ParameterError on nonpositive ρ or a nonpositive iteration cap.
  void validate() const;
};

/// Iterates of one ADMM run, in the units of the chosen FourierScaling.
struct AdmmState {
  std::vector<Complex> x; ///< length N
  std::vector<double> y;  ///< length N, inside [0,1]
  std::vector<Complex> z; ///< length M
  std::vector<Complex> d; ///< dual for z = F x
  std::vector<double> w;  ///< dual for x = y
  int iter = 0;
};

struct SolveResult {
  ComplexSignal x_star;
  double residual = 0.0; ///< ‖|F_M x*| − b‖₂ in raw units
  int iters_used = 0;
  bool converged = false; ///< stopped by the primal-change tolerance
};

/// Entrywise argmin_z ½(|z| − b)² + (ρ/2)|z − g|².
///
/// z = ((b + ρ|g|)/(1 + ρ)) g/|g| for g ≠ 0 and (b/(1 + ρ))·1 for g = 0. A
/// negative b (noisy data) clamps the radius at zero, which is the minimizer
/// over |z| ≥ 0.
std::vector<Complex> magnitude_prox(std::span<const Complex> g,
                                    std::span<const double> b, double rho);

using AdmmObserver = std::function<void(const AdmmState &)>;

/// Runs the five-step ADMM iteration from z⁰ = b e^{iφ}, with φ drawn
/// uniformly on [0, 2π)^M from params.seed unless `init_phase` is given.
/// Throws DimensionError for mismatched sizes and DivergenceError when an
/// iterate stops being finite.
SolveResult admm_solve(const MagnitudeMeasurements &b, std::size_t n,
                       const AdmmParams &params,
                       std::optional<std::span<const double>> init_phase = {},
                       const AdmmObserver &observer = {});

/// Best of `restarts` independent solves (seeds derived from params.seed);
/// stops early at the first run with residual below success_tol.
SolveResult admm_solve_multistart(const MagnitudeMeasurements &b, std::size_t n,
                                  const AdmmParams &params, std::size_t restarts);

/// Entrywise nearest of {0, 1} on the real part; 0.5 rounds to 1.
BinarySignal round_to_binary(std::span<const double> x);
BinarySignal round_to_binary(const ComplexSignal &x);

/// ‖|F_M x| − b‖₂ for the scheme attached to b.
double magnitude_residual(const MagnitudeMeasurements &b, const ComplexSignal &x);

} // namespace binpr
