#pragma once

#include <cstddef>
#include <functional>

namespace alsel {

/// Resolves a requested worker count: 0 means std::thread::hardware_concurrency.
std::size_t resolve_threads(std::size_t requested) noexcept;

/// Runs body(i) for every i in [0, n) over `threads` workers using a static
/// strided partition. Each index is visited exactly once; callers must only
/// write to state owned by index i. Exceptions from workers are rethrown
/// (first by worker order).
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace alsel
