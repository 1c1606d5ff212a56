#include "telic/exec.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace telic {

unsigned effective_workers(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void for_chunks(std::uint64_t n, unsigned workers,
                const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  unsigned w = effective_workers(workers);
  if (n == 0) return;
  // Not worth spawning threads for tiny ranges.
  if (w <= 1 || n < 4096) {
    fn(0, 0, n);
    return;
  }
  std::uint64_t per = n / w, extra = n % w;
  std::vector<std::thread> threads;
  std::uint64_t begin = 0;
  for (unsigned c = 0; c < w && begin < n; ++c) {
    std::uint64_t len = per + (c < extra ? 1 : 0);
    std::uint64_t end = std::min(n, begin + len);
    threads.emplace_back(fn, c, begin, end);
    begin = end;
  }
  for (auto& t : threads) t.join();
}

}  // namespace telic
