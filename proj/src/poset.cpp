#include "mqr/poset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mqr {

Poset::Poset(std::vector<std::string> elements,
             const std::vector<std::pair<std::string, std::string>>& relations)
    : elems_(std::move(elements)) {
  std::set<std::string> seen;
  for (const auto& e : elems_)
    if (!seen.insert(e).second) throw ValidationError("Poset: duplicate element '" + e + "'");
  int n = size();
  leq_.assign(n, std::vector<uint8_t>(n, 0));
  for (int i = 0; i < n; ++i) leq_[i][i] = 1;
  for (const auto& [a, b] : relations) {
    int i = index_of(a), j = index_of(b);
    leq_[i][j] = 1;
  }
  // Transitive closure (Warshall), then antisymmetry check.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq_[i][k])
        for (int j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq_[i][j] && leq_[j][i])
        throw ValidationError("Poset: antisymmetry fails between '" + elems_[i] + "' and '" +
                              elems_[j] + "'");
}

Poset Poset::chain(int n, const std::string& prefix) {
  std::vector<std::string> els;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 1; i <= n; ++i) els.push_back(prefix + std::to_string(i));
  for (int i = 1; i < n; ++i) rel.emplace_back(els[i - 1], els[i]);
  return Poset(els, rel);
}

Poset Poset::antichain(int n, const std::string& prefix) {
  std::vector<std::string> els;
  for (int i = 1; i <= n; ++i) els.push_back(prefix + std::to_string(i));
  return Poset(els, {});
}

int Poset::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (elems_[i] == label) return i;
  throw ValidationError("Poset: unknown element '" + label + "'");
}

bool Poset::is_chain() const {
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (!comparable(i, j)) return false;
  return true;
}

bool Poset::is_antichain() const {
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (i != j && leq(i, j)) return false;
  return true;
}

int Poset::count_strict_pairs() const {
  int c = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (lt(i, j)) ++c;
  return c;
}

Poset Poset::induced(const std::vector<int>& keep) const {
  Poset r;
  for (int i : keep) r.elems_.push_back(elems_[i]);
  int m = static_cast<int>(keep.size());
  r.leq_.assign(m, std::vector<uint8_t>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) r.leq_[a][b] = leq_[keep[a]][keep[b]];
  return r;
}

namespace {

// Invariant used to prune the isomorphism search: (tag, #below, #above).
std::vector<std::tuple<int, int, int>> iso_profile(const Poset& p, const std::vector<int>& tag) {
  std::vector<std::tuple<int, int, int>> pr(p.size());
  for (int i = 0; i < p.size(); ++i) {
    int below = 0, above = 0;
    for (int j = 0; j < p.size(); ++j) {
      if (p.lt(j, i)) ++below;
      if (p.lt(i, j)) ++above;
    }
    pr[i] = {tag[i], below, above};
  }
  return pr;
}

bool extend(const Poset& a, const Poset& b, const std::vector<std::tuple<int, int, int>>& pa,
            const std::vector<std::tuple<int, int, int>>& pb, std::vector<int>& map,
            std::vector<uint8_t>& used, int i) {
  int n = a.size();
  if (i == n) return true;
  for (int j = 0; j < n; ++j) {
    if (used[j] || pa[i] != pb[j]) continue;
    bool ok = true;
    for (int k = 0; k < i && ok; ++k) {
      if (a.leq(i, k) != b.leq(j, map[k])) ok = false;
      if (a.leq(k, i) != b.leq(map[k], j)) ok = false;
    }
    if (!ok) continue;
    map[i] = j;
    used[j] = 1;
    if (extend(a, b, pa, pb, map, used, i + 1)) return true;
    used[j] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> poset_isomorphism(const Poset& a, const Poset& b,
                                                  const std::vector<int>& tag_a,
                                                  const std::vector<int>& tag_b) {
  if (a.size() != b.size()) return std::nullopt;
  auto pa = iso_profile(a, tag_a), pb = iso_profile(b, tag_b);
  auto sa = pa, sb = pb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  std::vector<int> map(a.size(), -1);
  std::vector<uint8_t> used(a.size(), 0);
  if (extend(a, b, pa, pb, map, used, 0)) return map;
  return std::nullopt;
}

}  // namespace mqr
