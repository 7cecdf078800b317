#include "fft.hpp"

#include "binpr/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace binpr::detail {

namespace {

class PlanCache {
public:
  ~PlanCache() {
    for (auto &[key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, FftDirection direction) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto *in = fftw_alloc_complex(n);
    auto *out = fftw_alloc_complex(n);
    // FFTW_ESTIMATE leaves the arrays untouched and yields the same plan on
    // every run; FFTW_UNALIGNED lets us execute on std::vector storage.
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), in, out,
        direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, FftDirection>, fftw_plan> plans_;
};

PlanCache &cache() {
  static PlanCache instance;
  return instance;
}

} // namespace

void fft(std::span<const Complex> in, std::span<Complex> out,
         FftDirection direction) {
  if (in.size() != out.size() || in.empty()) {
    throw DimensionError("fft: buffers must be nonempty and of equal length");
  }
  fftw_plan plan = cache().get(in.size(), direction);
  // fftw_complex is layout-compatible with std::complex<double>.
  auto *src = reinterpret_cast<fftw_complex *>(const_cast<Complex *>(in.data()));
  auto *dst = reinterpret_cast<fftw_complex *>(out.data());
  fftw_execute_dft(plan, src, dst);
}

} // namespace binpr::detail
