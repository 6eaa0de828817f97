#pragma once
#include <functional>

namespace radgas {

// Worker cap from RADGAS_THREADS (0 or unset = auto). Resolved once per process.
int worker_count();

// Splits [begin, end) into contiguous chunks, one per worker. Bodies must write
// disjoint outputs; reductions stay serial so results are bit-reproducible.
void parallel_for(int begin, int end, const std::function<void(int, int)>& body);

} // namespace radgas
