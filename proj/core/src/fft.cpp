#include "nlsv/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "nlsv/errors.hpp"

namespace nlsv {

namespace {

struct PlanEntry {
  fftw_plan plan = nullptr;
  int alignment = 0;  // fftw_alignment_of of the buffer it was planned on
};

// Plans are created once per (rank, n, sign) on an fftw_malloc'd scratch
// buffer, then re-applied to caller arrays via the new-array interface.
// Planning is serialized; execution on distinct arrays is thread-safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  ~PlanCache() {
    for (auto& [key, entry] : plans_) fftw_destroy_plan(entry.plan);
  }

  PlanEntry get(int rank, std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const Key key{rank, n, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t total = 1;
    int dims[3];
    for (int a = 0; a < rank; ++a) {
      dims[a] = static_cast<int>(n);
      total *= n;
    }
    fftw_complex* scratch = fftw_alloc_complex(total);
    if (scratch == nullptr) throw Error("fft: allocation failure while planning");
    fftw_plan plan = fftw_plan_dft(rank, dims, scratch, scratch, sign, FFTW_ESTIMATE);
    PlanEntry entry{plan, fftw_alignment_of(reinterpret_cast<double*>(scratch))};
    fftw_free(scratch);
    if (plan == nullptr) throw Error("fft: planner failed");
    plans_.emplace(key, entry);
    return entry;
  }

 private:
  using Key = std::tuple<int, std::size_t, int>;
  std::mutex mutex_;
  std::map<Key, PlanEntry> plans_;
};

void execute(int rank, std::size_t n, int sign, std::complex<double>* data) {
  const PlanEntry entry = PlanCache::instance().get(rank, n, sign);
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  if (fftw_alignment_of(reinterpret_cast<double*>(raw)) == entry.alignment) {
    fftw_execute_dft(entry.plan, raw, raw);
    return;
  }
  // Alignment mismatch (rare): bounce through a compatible buffer.
  std::size_t total = 1;
  for (int a = 0; a < rank; ++a) total *= n;
  fftw_complex* scratch = fftw_alloc_complex(total);
  std::copy(data, data + total, reinterpret_cast<std::complex<double>*>(scratch));
  fftw_execute_dft(entry.plan, scratch, scratch);
  std::copy(reinterpret_cast<std::complex<double>*>(scratch),
            reinterpret_cast<std::complex<double>*>(scratch) + total, data);
  fftw_free(scratch);
}

}  // namespace

void fft_forward(const Grid& grid, std::vector<std::complex<double>>& data) {
  execute(grid.dim(), grid.points(), FFTW_FORWARD, data.data());
}

void fft_inverse(const Grid& grid, std::vector<std::complex<double>>& data) {
  execute(grid.dim(), grid.points(), FFTW_BACKWARD, data.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : data) v *= scale;
}

void fft_forward_1d(std::size_t n, std::complex<double>* data) {
  execute(1, n, FFTW_FORWARD, data);
}

void fft_inverse_1d(std::size_t n, std::complex<double>* data) {
  execute(1, n, FFTW_BACKWARD, data);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
}

}  // namespace nlsv
