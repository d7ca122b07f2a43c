#include "spdcimg/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "spdcimg/error.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {
namespace fft {
namespace {

// FFTW planning is not thread-safe, execution with the new-array interface is.
// Plans are created unaligned so results do not depend on buffer alignment.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    ComplexVector scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft(std::span<cplx> data, int sign) {
  if (data.empty()) return;
  fftw_plan plan = cache().get(data.size(), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

void centered_dft(std::span<cplx> data, int sign) {
  // For even n the centred transform is the plain one with both index
  // ranges rotated by n/2.
  const std::size_t half = data.size() / 2;
  std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(half), data.end());
  dft(data, sign);
  std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(half), data.end());
}

}  // namespace fft

SampledField forward_spectrum(const SampledField& field) {
  if (field.domain != Domain::position) {
    throw DomainError("forward_spectrum expects a position-domain field");
  }
  SampledField out = field;
  out.domain = Domain::momentum;
  fft::centered_dft(out.values, -1);
  const double dx = field.grid.dx();
  for (auto& v : out.values) v *= dx;
  return out;
}

SampledField inverse_spectrum(const SampledField& spectrum) {
  if (spectrum.domain != Domain::momentum) {
    throw DomainError("inverse_spectrum expects a momentum-domain field");
  }
  SampledField out = spectrum;
  out.domain = Domain::position;
  fft::centered_dft(out.values, +1);
  const double scale = spectrum.grid.dq() / kTwoPi;
  for (auto& v : out.values) v *= scale;
  return out;
}

}  // namespace spdcimg
