#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace uniseg {
namespace detail {

// Runs fn(chunk_index, begin, end) over contiguous chunks of [0, n).
// Exceptions are rethrown in chunk order so failures are deterministic
// regardless of scheduling.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
  if (threads < 1) threads = 1;
  std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (chunks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  std::size_t per = n / chunks;
  std::size_t extra = n % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t end = begin + per + (c < extra ? 1 : 0);
    workers.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail
}  // namespace uniseg
