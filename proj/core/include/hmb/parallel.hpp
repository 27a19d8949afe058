#pragma once

#include <functional>

namespace hmb {

/// Worker count used by the per-pixel passes. 0 selects std::thread::hardware_concurrency().
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(row) for every row in [0, rows). Rows are independent, so results do not depend
/// on the worker count.
void parallel_rows(int rows, const std::function<void(int)>& body);

}  // namespace hmb
