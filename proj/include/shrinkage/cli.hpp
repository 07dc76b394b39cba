#pragma once

namespace shrinkage::cli {

// Full command surface; returns the process exit status.
//   0  success (verify-bounds: all checks passed)
//   1  verify-bounds ran and at least one check failed
//   2  usage error
//   3  runtime failure (I/O, quadrature non-convergence, ...)
int dispatch(int argc, const char* const* argv);

}  // namespace shrinkage::cli
