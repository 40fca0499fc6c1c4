#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mqr/bigint.hpp"
#include "mqr/rep.hpp"

namespace mqr {

struct CountLimits {
  uint64_t algebra_scan_cap = 60'000'000;  // elements scanned per vertex algebra
  int max_vertex_matrix_dim = 8;           // similarity typing bound
};

/// Exact number of isomorphism classes of representations with exactly the
/// given multiplicities (orbit counting over the product of structured unit
/// groups; fixed-point sizes from elementary-divisor data).
uint64_t count_all_classes(const MarkedQuiver& mq, const DimVec& dims,
                           const CountLimits& lim = {});

/// Exact per-dims counts of indecomposable isomorphism classes, obtained from
/// count_all_classes by Krull-Schmidt deconvolution over the downward-closed
/// dims lattice. Results appear in ascending (grand total, lex) order and are
/// computed lazily level by level.
class IndCounter {
 public:
  IndCounter(const MarkedQuiver& mq, int per_vertex_bound, CountLimits lim = {});
  IndCounter(const MarkedQuiver& mq, const std::vector<int>& per_vertex_bounds,
             CountLimits lim = {});

  /// All dims with the given grand total (within the per-vertex bound), each
  /// with its count of indecomposable classes.
  std::vector<std::pair<DimVec, uint64_t>> level(int grand);

  /// Count at one dims point (must lie within the bound).
  uint64_t at(const DimVec& dims);

  int max_grand() const { return max_grand_; }

 private:
  void advance_to(size_t upto);

  const MarkedQuiver& mq_;
  CountLimits lim_;
  int max_grand_ = 0;
  std::vector<DimVec> lattice_;        // ascending (grand, lex), excludes zero
  std::vector<int> grand_;             // grand totals, parallel to lattice_
  std::map<DimVec, size_t> index_;
  std::vector<BigUint> partial_;       // multiset generating function so far
  std::vector<uint64_t> ind_;          // computed ind counts
  size_t done_ = 0;                    // lattice points processed
};

/// Convenience: per-field counts at one dims, as required by the CLI.
std::vector<uint64_t> count_indecomposables_by_dim(const MarkedQuiver& mq, const DimVec& dims,
                                                   const std::vector<uint32_t>& fields,
                                                   const CountLimits& lim = {});

}  // namespace mqr
