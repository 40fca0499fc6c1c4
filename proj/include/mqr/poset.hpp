#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqr/errors.hpp"

namespace mqr {

/// Finite poset with labeled elements. Constructed from generating relations:
/// the reflexive-transitive closure is taken, then antisymmetry is checked.
class Poset {
 public:
  Poset() = default;
  Poset(std::vector<std::string> elements,
        const std::vector<std::pair<std::string, std::string>>& relations);

  static Poset chain(int n, const std::string& prefix = "p");
  static Poset antichain(int n, const std::string& prefix = "p");

  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<std::string>& elements() const { return elems_; }
  const std::string& label(int i) const { return elems_[i]; }
  int index_of(const std::string& label) const;

  bool leq(int a, int b) const { return leq_[a][b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  bool is_chain() const;
  bool is_antichain() const;
  int count_strict_pairs() const;

  /// Subposet induced on the given element indices (order inherited).
  Poset induced(const std::vector<int>& keep) const;

 private:
  std::vector<std::string> elems_;
  std::vector<std::vector<uint8_t>> leq_;
};

/// Order isomorphism search; `tag` gives per-element invariants that must be
/// preserved (e.g. big-point flags, object dimensions). Returns a mapping
/// a-index -> b-index, or nothing.
std::optional<std::vector<int>> poset_isomorphism(const Poset& a, const Poset& b,
                                                  const std::vector<int>& tag_a,
                                                  const std::vector<int>& tag_b);

inline bool posets_isomorphic(const Poset& a, const Poset& b) {
  std::vector<int> ta(a.size(), 0), tb(b.size(), 0);
  return poset_isomorphism(a, b, ta, tb).has_value();
}

}  // namespace mqr
