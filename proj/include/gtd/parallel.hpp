#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include "gtd/grid.hpp"

namespace gtd {

/// out[i] = f(i) for i in [0, n). The parallel path runs an OpenMP static
/// loop; an exception from any index is rethrown after the loop, lowest
/// index first, so both paths fail identically.
template <class F>
auto parallel_map(std::size_t n, Execution exec, F&& f)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace gtd
