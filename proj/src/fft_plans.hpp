#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>

namespace hallmhd::detail {

/// FFTW plans keyed by grid size. Planning is serialized behind a mutex;
/// execution goes through the new-array interface so a single plan can be
/// run concurrently on distinct aligned buffers.
class FftPlanCache {
 public:
  struct Plans {
    fftw_plan forward = nullptr;   // r2c, unnormalized
    fftw_plan backward = nullptr;  // c2r, unnormalized
  };

  FftPlanCache() = default;
  FftPlanCache(const FftPlanCache&) = delete;
  FftPlanCache& operator=(const FftPlanCache&) = delete;
  ~FftPlanCache();

  Plans get(int m);

 private:
  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

/// FFTW's planner itself is not reentrant across caches.
std::mutex& fftw_planner_mutex();

}  // namespace hallmhd::detail
