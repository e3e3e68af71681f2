#pragma once

#include <functional>

namespace grushin {

// Worker count: GRUSHIN_LAB_THREADS if set, else hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n). Bodies may run concurrently; callers must
// write results into disjoint preassigned slots and reduce in index order so
// output does not depend on the thread count.
void parallel_for(long n, const std::function<void(long)>& body);

}  // namespace grushin
