#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fnls::detail {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int d, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, d, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning needs scratch arrays; FFTW_ESTIMATE leaves them untouched.
    const std::size_t size = d == 1 ? n : static_cast<std::size_t>(n) * n;
    auto* a = fftw_alloc_complex(size);
    auto* b = fftw_alloc_complex(size);
    // FFTW_UNALIGNED keeps results independent of the caller's allocation.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = d == 1 ? fftw_plan_dft_1d(n, a, b, sign, flags) : fftw_plan_dft_2d(n, n, a, b, sign, flags);
    fftw_free(a);
    fftw_free(b);
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void execute_fft(int n, int d, int sign, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  const std::size_t size = d == 1 ? n : static_cast<std::size_t>(n) * n;
  if (in.size() != size || out.size() != size) throw std::invalid_argument("FFT buffer size mismatch");
  fftw_plan plan = cache().get(n, d, sign);
  // The new-array execute interface does not modify `in` for
  // out-of-place plans; in-place calls pass the same buffer twice.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  if (src == dst) {
    std::vector<std::complex<double>> copy(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(copy.data()), dst);
  } else {
    fftw_execute_dft(plan, src, dst);
  }
}

}  // namespace fnls::detail
