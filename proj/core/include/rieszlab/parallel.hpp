#pragma once

#include <cstddef>
#include <functional>

namespace rieszlab {

// Worker count used by the node-parallel loops. 0 (the default) means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(i) for i in [0, n) on up to thread_count() threads. Each index is visited exactly once,
// so results written per index do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rieszlab
