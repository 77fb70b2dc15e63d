#pragma once

namespace veco {

// Selects between the serial reference kernels and the OpenMP ones.
// threads == 0 leaves the OpenMP runtime default in place.
struct Execution {
  bool parallel = false;
  int threads = 0;
};

}  // namespace veco
