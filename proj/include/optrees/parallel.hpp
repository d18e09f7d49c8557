#pragma once

namespace optrees {

// Global switch between the OpenMP kernels and the serial reference paths.
// All parallel kernels merge results in a canonical order, so the two modes
// produce identical output; tests and the benchmark flip this.
bool parallel_enabled();
void set_parallel_enabled(bool on);

}  // namespace optrees
