#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace wblab::detail {

inline std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out[i] = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
  }
  return out;
}

inline double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

/// Running trapezoid integral, out[0] = 0.
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

inline int worker_count() {
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

/// Runs f(i) for i in [0, count) on a small pool; results come back in index order.
template <class F>
auto parallel_map(std::size_t count, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out;
  out.reserve(count);
  const std::size_t workers = std::min<std::size_t>(count, worker_count());
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(f(i));
    return out;
  }
  std::vector<std::future<R>> jobs;
  std::size_t next = 0;
  while (next < count || !jobs.empty()) {
    while (next < count && jobs.size() < workers) {
      jobs.push_back(std::async(std::launch::async, f, next));
      ++next;
    }
    out.push_back(jobs.front().get());
    jobs.erase(jobs.begin());
  }
  return out;
}

}  // namespace wblab::detail
