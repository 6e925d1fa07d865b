#include "wavemod/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace wavemod::fft {
namespace {

// fftw_execute_dft on an existing plan is reentrant; only planning needs the lock.
struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int, bool>, fftw_plan> plans;

  fftw_plan get(int dim, int n, int sign, bool inplace) {
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(dim, n, sign, inplace);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t total = dim == 1 ? std::size_t(n) : std::size_t(n) * n;
    std::vector<fftw_complex> a(total), b(total);
    fftw_complex* out = inplace ? a.data() : b.data();
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = dim == 1 ? fftw_plan_dft_1d(n, a.data(), out, sign, flags)
                           : fftw_plan_dft_2d(n, n, a.data(), out, sign, flags);
    plans.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& kv : plans) fftw_destroy_plan(kv.second);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const Grid& grid, const cplx* in, cplx* out, int sign) {
  bool inplace = in == out;
  fftw_plan p = cache().get(grid.dim(), grid.n(), sign, inplace);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const Grid& grid, const cplx* in, cplx* out) {
  run(grid, in, out, FFTW_FORWARD);
  const double inv = 1.0 / double(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] *= inv;
}

void inverse(const Grid& grid, const cplx* in, cplx* out) { run(grid, in, out, FFTW_BACKWARD); }

}  // namespace wavemod::fft
