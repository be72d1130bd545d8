#include "rparvi/parallel.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace rparvi::detail {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  struct Failure {
    int index;
    std::exception_ptr error;
  };
  std::vector<std::optional<Failure>> failures(workers);
  const int chunk = (n + workers - 1) / workers;

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const int lo = w * chunk;
      const int hi = std::min(n, lo + chunk);
      for (int i = lo; i < hi; ++i) {
        try {
          fn(i);
        } catch (...) {
          failures[w] = Failure{i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  const Failure* first = nullptr;
  for (const auto& f : failures) {
    if (f && (!first || f->index < first->index)) first = &*f;
  }
  if (first) std::rethrow_exception(first->error);
}

}  // namespace rparvi::detail
