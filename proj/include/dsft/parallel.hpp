#pragma once

#include <cstddef>
#include <functional>

namespace dsft {

/// 0 selects std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [begin, end) over contiguous chunks. Each index is
/// handled by exactly one thread, so results do not depend on the count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace dsft
