#ifndef GHLAB_EXEC_HPP
#define GHLAB_EXEC_HPP

namespace ghlab {

/// Kernel execution policy. Every parallel kernel has a serial reference
/// path producing identical results (integer reductions and per-element
/// writes only), used by the tests and the benchmark tool.
enum class Exec { serial, parallel };

} // namespace ghlab

#endif
