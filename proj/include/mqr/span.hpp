#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mqr/matrix.hpp"

namespace mqr {

/// Visit every F_p-linear combination of `basis` exactly once, in
/// lexicographic coefficient order with the LAST coefficient varying fastest
/// (so combination #t has digits of t base p, most significant first).
/// The running sum is updated incrementally; `fn` may return false to stop.
/// Includes the zero combination.
inline void for_each_span_element(
    const Fp& F, const std::vector<Mat>& basis,
    const std::function<bool(const Mat&, const std::vector<uint32_t>&)>& fn) {
  size_t d = basis.size();
  std::vector<uint32_t> c(d, 0);
  Mat cur = basis.empty() ? Mat(0, 0) : Mat(basis[0].rows, basis[0].cols);
  if (!fn(cur, c)) return;
  if (d == 0) return;
  while (true) {
    size_t k = d;
    while (k > 0) {
      --k;
      if (c[k] + 1 < F.p()) {
        c[k] += 1;
        for (size_t i = 0; i < cur.e.size(); ++i) cur.e[i] = F.add(cur.e[i], basis[k].e[i]);
        break;
      }
      // digit wraps p-1 -> 0: subtract (p-1) * basis[k]
      uint32_t w = c[k];
      c[k] = 0;
      for (size_t i = 0; i < cur.e.size(); ++i)
        cur.e[i] = F.sub(cur.e[i], F.mul(w, basis[k].e[i]));
      if (k == 0) return;
    }
    if (!fn(cur, c)) return;
  }
}

/// Number of span elements p^d as a size_t, or SIZE_MAX on overflow past cap.
inline size_t span_size_capped(uint32_t p, size_t dim, size_t cap) {
  size_t n = 1;
  for (size_t i = 0; i < dim; ++i) {
    if (n > cap / p) return SIZE_MAX;
    n *= p;
  }
  return n;
}

}  // namespace mqr
