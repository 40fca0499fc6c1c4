#include "mqr/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mqr/errors.hpp"

namespace mqr {

int Quiver::vertex_index(const std::string& label) const {
  for (int i = 0; i < n_vertices(); ++i)
    if (vertices[i] == label) return i;
  throw ValidationError("Quiver: unknown vertex '" + label + "'");
}

int Quiver::arrow_index(const std::string& id) const {
  for (int i = 0; i < n_arrows(); ++i)
    if (arrows[i].id == id) return i;
  throw ValidationError("Quiver: unknown arrow '" + id + "'");
}

void Quiver::validate() const {
  std::set<std::string> vs(vertices.begin(), vertices.end());
  if (static_cast<int>(vs.size()) != n_vertices())
    throw ValidationError("Quiver: duplicate vertex label");
  std::set<std::string> ids;
  for (const auto& a : arrows) {
    if (a.src < 0 || a.src >= n_vertices() || a.dst < 0 || a.dst >= n_vertices())
      throw ValidationError("Quiver: arrow endpoint out of range");
    if (!ids.insert(a.id).second) throw ValidationError("Quiver: duplicate arrow id '" + a.id + "'");
  }
}

bool Quiver::connected() const {
  if (n_vertices() == 0) return false;
  std::vector<uint8_t> seen(n_vertices(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& a : arrows) {
      int o = -1;
      if (a.src == v) o = a.dst;
      else if (a.dst == v) o = a.src;
      if (o >= 0 && !seen[o]) {
        seen[o] = 1;
        stack.push_back(o);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](uint8_t b) { return b != 0; });
}

int degree(const Quiver& q, int z) {
  if (z < 0 || z >= q.n_vertices()) throw ValidationError("degree: unknown vertex");
  int d = 0;
  for (const auto& a : q.arrows) {
    if (a.src == z) ++d;
    if (a.dst == z) ++d;
  }
  return d;
}

MarkedQuiver::MarkedQuiver(Quiver q, std::vector<Vectroid> m, Fp f)
    : quiver(std::move(q)), marking(std::move(m)), field(f) {
  quiver.validate();
  if (static_cast<int>(marking.size()) != quiver.n_vertices())
    throw ValidationError("MarkedQuiver: every vertex must be marked");
  for (const auto& v : marking)
    if (v.field != field) throw ValidationError("MarkedQuiver: vectroid field mismatch");
  if (quiver.n_arrows() == 0) throw ValidationError("MarkedQuiver: at least one arrow required");
  if (!quiver.connected()) throw ValidationError("MarkedQuiver: quiver must be connected");
}

MarkedQuiver MarkedQuiver::relabeled(const std::vector<int>& perm,
                                     const std::vector<std::string>& new_ids) const {
  // perm[i] = new position of vertex i
  Quiver q;
  q.vertices.resize(quiver.n_vertices());
  std::vector<Vectroid> m(quiver.n_vertices(), Vectroid(field));
  for (int i = 0; i < quiver.n_vertices(); ++i) {
    q.vertices[perm[i]] = quiver.vertices[i];
    m[perm[i]] = marking[i];
  }
  for (int a = 0; a < quiver.n_arrows(); ++a) {
    q.arrows.push_back(
        {new_ids[a], perm[quiver.arrows[a].src], perm[quiver.arrows[a].dst]});
  }
  return MarkedQuiver(std::move(q), std::move(m), field);
}

int Graph::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges) {
    if (a == v) ++d;
    if (b == v) ++d;
  }
  return d;
}

bool Graph::connected() const {
  if (n() == 0) return false;
  std::vector<uint8_t> seen(n(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [a, b] : edges) {
      int o = a == v ? b : (b == v ? a : -1);
      if (o >= 0 && !seen[o]) {
        seen[o] = 1;
        stack.push_back(o);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](uint8_t b) { return b != 0; });
}

bool Graph::has_loop() const {
  for (auto [a, b] : edges)
    if (a == b) return true;
  return false;
}

int Graph::multiplicity(int a, int b) const {
  int m = 0;
  for (auto [x, y] : edges)
    if ((x == a && y == b) || (x == b && y == a)) ++m;
  return m;
}

Graph underlying_graph(const Quiver& q) {
  Graph g;
  g.labels = q.vertices;
  for (const auto& a : q.arrows) g.edges.emplace_back(a.src, a.dst);
  return g;
}

Graph augmented_graph(const MarkedQuiver& mq) {
  Graph g = underlying_graph(mq.quiver);
  for (int x = 0; x < mq.quiver.n_vertices(); ++x) {
    const Vectroid& v = mq.vectroid_at(x);
    if (is_linear(v)) {
      int n = v.n_objects();
      int prev = x;
      for (int t = 2; t <= n; ++t) {
        g.labels.push_back(mq.quiver.vertices[x] + "+a" + std::to_string(t));
        g.edges.emplace_back(prev, g.n() - 1);
        prev = g.n() - 1;
      }
    } else if (is_halflinear(v)) {
      for (int t = 1; t <= 2; ++t) {
        g.labels.push_back(mq.quiver.vertices[x] + "+b" + std::to_string(t));
        g.edges.emplace_back(x, g.n() - 1);
      }
    } else {
      throw NotApplicable("augmented_graph: vectroid at '" + mq.quiver.vertices[x] +
                          "' is neither linear nor halflinear");
    }
  }
  return g;
}

std::string DiagramClass::to_string() const {
  switch (kind) {
    case DiagramKind::A: return "A_" + std::to_string(n);
    case DiagramKind::D: return "D_" + std::to_string(n);
    case DiagramKind::E6: return "E6";
    case DiagramKind::E7: return "E7";
    case DiagramKind::E8: return "E8";
    case DiagramKind::ATilde: return "A~_" + std::to_string(n);
    case DiagramKind::DTilde: return "D~_" + std::to_string(n);
    case DiagramKind::E6Tilde: return "E6~";
    case DiagramKind::E7Tilde: return "E7~";
    case DiagramKind::E8Tilde: return "E8~";
    case DiagramKind::NotDynkin: return "NotDynkin";
  }
  return "?";
}

namespace {

// Length of each pendant path hanging off `center` (not passing through
// other branch vertices); assumes simple tree structure around center.
std::vector<int> leg_lengths(const Graph& g, int center) {
  std::vector<int> legs;
  for (auto [a, b] : g.edges) {
    int nb = a == center ? b : (b == center ? a : -1);
    if (nb < 0) continue;
    int len = 1, prev = center, cur = nb;
    while (g.degree(cur) == 2) {
      int next = -1;
      for (auto [x, y] : g.edges) {
        int o = x == cur ? y : (y == cur ? x : -1);
        if (o >= 0 && o != prev) next = o;
      }
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    if (g.degree(cur) != 1) return {};  // hit another branch vertex
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  return legs;
}

}  // namespace

DiagramClass classify_diagram(const Graph& g) {
  if (!g.connected()) throw ValidationError("classify_diagram: graph must be connected");
  int n = g.n(), m = static_cast<int>(g.edges.size());
  if (n == 1 && m == 0) return {DiagramKind::A, 1};
  if (g.has_loop()) return {DiagramKind::NotDynkin, 0};
  // Multi-edges: the double edge on two vertices is the only admissible one.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int mult = g.multiplicity(a, b);
      if (mult >= 2) {
        if (n == 2 && m == 2) return {DiagramKind::ATilde, 1};
        return {DiagramKind::NotDynkin, 0};
      }
    }

  std::vector<int> deg(n);
  int max_deg = 0;
  std::vector<int> branch;
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
    if (deg[v] >= 3) branch.push_back(v);
  }

  if (max_deg <= 2) {
    if (m == n) return {DiagramKind::ATilde, n - 1};  // cycle, n >= 3 here
    if (m == n - 1) return {DiagramKind::A, n};       // path
    return {DiagramKind::NotDynkin, 0};
  }
  if (m != n - 1) return {DiagramKind::NotDynkin, 0};  // branch vertex + cycle

  if (branch.size() == 1) {
    int c = branch[0];
    if (deg[c] == 4) {
      std::vector<int> legs = leg_lengths(g, c);
      if (legs == std::vector<int>{1, 1, 1, 1}) return {DiagramKind::DTilde, 4};
      return {DiagramKind::NotDynkin, 0};
    }
    if (deg[c] != 3) return {DiagramKind::NotDynkin, 0};
    std::vector<int> legs = leg_lengths(g, c);
    if (legs.size() != 3) return {DiagramKind::NotDynkin, 0};
    if (legs[0] == 1 && legs[1] == 1) return {DiagramKind::D, n};
    if (legs == std::vector<int>{1, 2, 2}) return {DiagramKind::E6, 0};
    if (legs == std::vector<int>{1, 2, 3}) return {DiagramKind::E7, 0};
    if (legs == std::vector<int>{1, 2, 4}) return {DiagramKind::E8, 0};
    if (legs == std::vector<int>{2, 2, 2}) return {DiagramKind::E6Tilde, 0};
    if (legs == std::vector<int>{1, 3, 3}) return {DiagramKind::E7Tilde, 0};
    if (legs == std::vector<int>{1, 2, 5}) return {DiagramKind::E8Tilde, 0};
    return {DiagramKind::NotDynkin, 0};
  }
  if (branch.size() == 2) {
    int u = branch[0], w = branch[1];
    if (deg[u] != 3 || deg[w] != 3) return {DiagramKind::NotDynkin, 0};
    // Both ends must carry exactly two pendant leaves; the rest is the
    // connecting path.
    for (int c : branch) {
      int leaves = 0;
      for (auto [a, b] : g.edges) {
        int nb = a == c ? b : (b == c ? a : -1);
        if (nb >= 0 && deg[nb] == 1) ++leaves;
      }
      if (leaves != 2) return {DiagramKind::NotDynkin, 0};
    }
    // Remaining vertices form a path between u and w.
    for (int v = 0; v < n; ++v)
      if (v != u && v != w && deg[v] > 2) return {DiagramKind::NotDynkin, 0};
    return {DiagramKind::DTilde, n - 1};
  }
  return {DiagramKind::NotDynkin, 0};
}

// ---- canonical labeling ----------------------------------------------------

namespace {

// Adjacency with multiplicities; loops on the diagonal (counted once).
std::vector<std::vector<int>> adjacency(const Graph& g) {
  std::vector<std::vector<int>> adj(g.n(), std::vector<int>(g.n(), 0));
  for (auto [a, b] : g.edges) {
    if (a == b) adj[a][a] += 1;
    else {
      adj[a][b] += 1;
      adj[b][a] += 1;
    }
  }
  return adj;
}

// Iterative color refinement: color' = (color, sorted multiset of
// (edge multiplicity, neighbor color)).
std::vector<int> refine(const Graph& g, const std::vector<std::vector<int>>& adj,
                        std::vector<int> color) {
  int n = g.n();
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s;
      s.push_back(color[v]);
      s.push_back(adj[v][v]);
      std::vector<std::pair<int, int>> nb;
      for (int u = 0; u < n; ++u)
        if (u != v && adj[v][u]) nb.emplace_back(adj[v][u], color[u]);
      std::sort(nb.begin(), nb.end());
      for (auto [m, c] : nb) {
        s.push_back(m);
        s.push_back(c);
      }
      sig[v] = {std::move(s), v};
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> nc(n);
    int classes = 0;
    for (int i = 0; i < n; ++i) {
      if (i && sorted[i].first != sorted[i - 1].first) ++classes;
      nc[sorted[i].second] = classes;
    }
    if (nc == color) return color;
    color = std::move(nc);
  }
}

std::string form_under_order(const std::vector<std::vector<int>>& adj,
                             const std::vector<int>& order) {
  int n = static_cast<int>(order.size());
  std::string s;
  s.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) s.push_back(static_cast<char>('0' + adj[order[i]][order[j]]));
  return s;
}

void canon_search(const Graph& g, const std::vector<std::vector<int>>& adj,
                  std::vector<int>& color, std::vector<int>& order, std::string& best) {
  int n = g.n();
  if (static_cast<int>(order.size()) == n) {
    std::string f = form_under_order(adj, order);
    if (best.empty() || f < best) best = f;
    return;
  }
  // Individualize: pick the first smallest non-singleton color class among
  // unplaced vertices; try each member.
  std::vector<uint8_t> placed(n, 0);
  for (int v : order) placed[v] = 1;
  int target = -1;
  for (int v = 0; v < n; ++v)
    if (!placed[v] && (target == -1 || color[v] < color[target])) target = v;
  std::vector<int> candidates;
  for (int v = 0; v < n; ++v)
    if (!placed[v] && color[v] == color[target]) candidates.push_back(v);
  for (int v : candidates) {
    std::vector<int> c2 = color;
    c2[v] = -1;  // give v a fresh minimal color
    c2 = refine(g, adj, c2);
    order.push_back(v);
    canon_search(g, adj, c2, order, best);
    order.pop_back();
  }
}

}  // namespace

std::string graph_canonical_form(const Graph& g) {
  int n = g.n();
  if (n == 0) return "";
  auto adj = adjacency(g);
  std::vector<int> color(n, 0);
  color = refine(g, adj, color);
  std::vector<int> order;
  std::string best;
  canon_search(g, adj, color, order, best);
  return std::to_string(n) + ":" + best;
}

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.edges.size() != b.edges.size()) return false;
  return graph_canonical_form(a) == graph_canonical_form(b);
}

}  // namespace mqr
