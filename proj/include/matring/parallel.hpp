#pragma once

namespace matring {

/// Worker cap: MATRING_THREADS when set to a positive integer, otherwise the
/// OpenMP default. Always 1 when built without OpenMP.
int worker_count();

bool openmp_enabled();

}  // namespace matring
