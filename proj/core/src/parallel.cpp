#include "oufpt/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace oufpt {

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OU_FPT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(int, std::size_t, std::size_t)>& chunk_fn) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n > 0 ? n : 1)));
  if (workers == 1) {
    chunk_fn(0, 0, n);
    return;
  }
  const std::size_t base = n / workers, rem = n % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::size_t begin = base + (rem > 0 ? 1 : 0);
  for (int w = 1; w < workers; ++w) {
    const std::size_t len = base + (static_cast<std::size_t>(w) < rem ? 1 : 0);
    pool.emplace_back(chunk_fn, w, begin, begin + len);
    begin += len;
  }
  chunk_fn(0, 0, base + (rem > 0 ? 1 : 0));
  for (auto& th : pool) th.join();
}

}  // namespace oufpt
