#include "core/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace abw {

int worker_threads() {
  const char* env = std::getenv("ABW_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value <= 0) return 1;
  return static_cast<int>(std::min<long>(value, 256));
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(worker_threads(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace abw
