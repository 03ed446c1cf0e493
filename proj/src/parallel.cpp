#include "diamond/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace diamond {

namespace {

std::atomic<unsigned> override_threads{0};

unsigned default_threads() {
  if (const char* env = std::getenv("DIAMOND_THREADS")) {
    unsigned n = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec == std::errc{} && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

unsigned thread_count() {
  const unsigned n = override_threads.load();
  return n > 0 ? n : default_threads();
}

void set_thread_count(unsigned n) { override_threads.store(n); }

}  // namespace diamond
