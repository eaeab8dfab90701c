#include "szego/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace szego::fft {
namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer make_buffer(std::size_t n) {
  return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// FFTW planning is not thread safe; execution on fresh aligned buffers is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, Direction dir) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, dir == Direction::Forward);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    Buffer in = make_buffer(n);
    Buffer out = make_buffer(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(),
                                      dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform(std::vector<std::complex<double>>& data, Direction dir) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  fftw_plan plan = cache().get(n, dir);
  Buffer in = make_buffer(n);
  Buffer out = make_buffer(n);
  std::memcpy(in.get(), data.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, in.get(), out.get());
  std::memcpy(static_cast<void*>(data.data()), out.get(), sizeof(fftw_complex) * n);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace szego::fft
