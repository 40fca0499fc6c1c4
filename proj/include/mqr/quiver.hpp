#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqr/vectroid.hpp"

namespace mqr {

/// Finite directed multigraph; loops and parallel arrows permitted.
struct Quiver {
  struct Arrow {
    std::string id;
    int src = 0;
    int dst = 0;
  };
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_arrows() const { return static_cast<int>(arrows.size()); }
  int vertex_index(const std::string& label) const;
  int arrow_index(const std::string& id) const;
  void validate() const;  // endpoints declared, ids unique
  bool connected() const;
};

/// Number of arrows incident on z; a loop counts twice.
int degree(const Quiver& q, int z);

/// Quiver plus one vectroid per vertex, all over the same field; finite,
/// connected, with at least one arrow.
struct MarkedQuiver {
  Quiver quiver;
  std::vector<Vectroid> marking;  // indexed like quiver.vertices
  Fp field;

  MarkedQuiver(Quiver q, std::vector<Vectroid> m, Fp f);

  const Vectroid& vectroid_at(int v) const { return marking[v]; }
  MarkedQuiver relabeled(const std::vector<int>& perm,
                         const std::vector<std::string>& new_ids) const;
};

/// Undirected multigraph; loops stored as (i, i).
struct Graph {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;

  int n() const { return static_cast<int>(labels.size()); }
  int degree(int v) const;  // loops count twice
  bool connected() const;
  bool has_loop() const;
  int multiplicity(int a, int b) const;
};

Graph underlying_graph(const Quiver& q);

/// G(Q) with, per vertex marked by a chain of length n, a pendant path of
/// n-1 extra vertices, and per halflinearly marked vertex two pendant leaves.
/// Unmarked vertices (the one-object one-dimensional vectroid) are unchanged.
/// Throws NotApplicable when some vertex is neither linear nor halflinear.
Graph augmented_graph(const MarkedQuiver& mq);

enum class DiagramKind {
  A,
  D,
  E6,
  E7,
  E8,
  ATilde,
  DTilde,
  E6Tilde,
  E7Tilde,
  E8Tilde,
  NotDynkin,
};

struct DiagramClass {
  DiagramKind kind = DiagramKind::NotDynkin;
  int n = 0;  // parameter for A, D, ATilde, DTilde

  bool is_dynkin() const {
    return kind == DiagramKind::A || kind == DiagramKind::D || kind == DiagramKind::E6 ||
           kind == DiagramKind::E7 || kind == DiagramKind::E8;
  }
  bool is_extended() const {
    return kind == DiagramKind::ATilde || kind == DiagramKind::DTilde ||
           kind == DiagramKind::E6Tilde || kind == DiagramKind::E7Tilde ||
           kind == DiagramKind::E8Tilde;
  }
  std::string to_string() const;
  bool operator==(const DiagramClass& o) const { return kind == o.kind && n == o.n; }
};

/// Exact recognition of the simply-laced Dynkin / extended Dynkin shapes.
/// Loops, multi-edges other than the two-vertex double edge, and every other
/// shape give NotDynkin. The input must be connected.
DiagramClass classify_diagram(const Graph& g);

/// Canonical form via degree refinement with backtracking; equal strings
/// iff isomorphic (labels ignored).
std::string graph_canonical_form(const Graph& g);
bool graphs_isomorphic(const Graph& a, const Graph& b);

}  // namespace mqr
