#include "accsim/ensemble.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace accsim {

int default_worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<PathResult> run_paths(const PathConfig& cfg, std::uint64_t master_seed, int n,
                                  int workers) {
  std::vector<PathResult> results(n);
  if (workers <= 0) workers = default_worker_count();
  workers = std::min(workers, n);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (int i; (i = next.fetch_add(1)) < n;)
        results[i] = simulate_path(cfg, RandomStream::for_path(master_seed, i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n);  // stop handing out work
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace accsim
