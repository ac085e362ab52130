#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bmtk::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW's planner is not thread safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int dim, int points) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard lock(planner_mutex());
  auto key = std::make_pair(dim, points);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<int> dims(dim, points);
  std::size_t real_count = 1;
  for (int i = 0; i < dim - 1; ++i) real_count *= points;
  std::size_t complex_count = real_count * (points / 2 + 1);
  real_count *= points;

  double* r = fftw_alloc_real(real_count);
  fftw_complex* c = fftw_alloc_complex(complex_count);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.forward = fftw_plan_dft_r2c(dim, dims.data(), r, c, flags);
  p.backward = fftw_plan_dft_c2r(dim, dims.data(), c, r, flags);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(key, p).first->second;
}

}  // namespace

void r2c(int dim, int points, const double* in, std::complex<double>* out) {
  const auto& p = plans_for(dim, points);
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void c2r(int dim, int points, std::complex<double>* in, double* out) {
  const auto& p = plans_for(dim, points);
  fftw_execute_dft_c2r(p.backward, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace bmtk::detail
