#pragma once

#include <cstddef>
#include <functional>

namespace cml {

/// Number of worker threads used by library loops. Defaults to the hardware
/// concurrency. Results never depend on this value.
std::size_t worker_count();
void set_worker_count(std::size_t workers);

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks;
/// each index is visited exactly once and bodies must write only to slots
/// owned by their index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cml
