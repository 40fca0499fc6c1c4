#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqr/quiver.hpp"

namespace mqr {

/// Multiplicity vector per vertex over the objects of that vertex's vectroid.
struct DimVec {
  std::vector<std::vector<int>> mult;

  bool operator==(const DimVec& o) const { return mult == o.mult; }
  bool operator!=(const DimVec& o) const { return !(*this == o); }
  bool operator<(const DimVec& o) const { return mult < o.mult; }
  bool is_zero() const;
};

DimVec zero_dims(const MarkedQuiver& mq);
int total_dim(const MarkedQuiver& mq, const DimVec& d, int vertex);
int grand_total(const MarkedQuiver& mq, const DimVec& d);
uint64_t rep_space_dim(const MarkedQuiver& mq, const DimVec& d);

/// A representation: multiplicities per vertex and one matrix per arrow of
/// shape totalDim(src) x totalDim(dst). The basis of the space at a vertex is
/// the copies of the vectroid objects concatenated in declaration order, each
/// copy carrying the object's standard basis.
struct Rep {
  DimVec dims;
  std::vector<Mat> arrows;  // indexed like quiver.arrows

  bool operator==(const Rep& o) const { return dims == o.dims && arrows == o.arrows; }
  bool operator<(const Rep& o) const {
    if (dims != o.dims) return dims < o.dims;
    return arrows < o.arrows;
  }
};

/// Offset of (object, copy) in the concatenated basis at one vertex.
struct VertexLayout {
  std::vector<int> object_offset;  // per object: start of its copies
  std::vector<int> object_dim;
  int total = 0;

  int pos(int object, int copy, int coord) const {
    return object_offset[object] + copy * object_dim[object] + coord;
  }
};
VertexLayout vertex_layout(const Vectroid& v, const std::vector<int>& mult);

/// Basis of the structured maps (aggregate morphisms) between the objects
/// with multiplicities m_src and m_dst at one vertex: every vectroid
/// hom-basis matrix placed in every (source copy, target copy) block.
std::vector<Mat> block_basis(const Vectroid& v, const std::vector<int>& m_src,
                             const std::vector<int>& m_dst);

Rep zero_rep(const MarkedQuiver& mq);
/// One-vertex representation: a single copy of the given object at x, zero
/// elsewhere, all arrow matrices zero (of the forced shapes).
Rep unit_rep(const MarkedQuiver& mq, int vertex, int object);
Rep direct_sum(const MarkedQuiver& mq, const Rep& a, const Rep& b);

/// Solved basis of morphisms U -> W: per basis element one structured matrix
/// per vertex, satisfying f(x) W(alpha) = U(alpha) f(y) exactly for every
/// arrow x -> y (re-verified after solving).
struct MorphismBasis {
  std::vector<std::vector<Mat>> elems;  // elems[k][vertex]
  int dim() const { return static_cast<int>(elems.size()); }
};

MorphismBasis hom_space(const MarkedQuiver& mq, const Rep& u, const Rep& w);

struct EndAlgebra {
  MorphismBasis basis;
  // table[i][j] = coordinates of basis_i . basis_j in the basis
  std::vector<std::vector<std::vector<uint32_t>>> table;
};
EndAlgebra end_algebra(const MarkedQuiver& mq, const Rep& u);

struct Limits {
  uint64_t end_enum_cap = 1u << 20;    // exhaustive End / Hom enumeration
  uint64_t tuple_cap = 8u << 20;       // arrow-matrix tuples per dims
  uint64_t orbit_group_cap = 1u << 20; // full unit-group enumeration
};

struct IndecResult {
  bool indecomposable = false;
  bool exact = true;  // false when only the flagged splitting heuristic ran
  // A witness End element that is neither nilpotent nor invertible, when
  // decomposability was established.
  std::optional<std::vector<Mat>> witness;
};
IndecResult is_indecomposable(const MarkedQuiver& mq, const Rep& u, const Limits& lim = {});

struct IsoResult {
  bool isomorphic = false;
  bool exact = true;
  std::optional<std::vector<Mat>> witness;  // per-vertex invertible morphism
};
IsoResult are_isomorphic(const MarkedQuiver& mq, const Rep& u, const Rep& w,
                         const Limits& lim = {});

/// Split off the image of a structured idempotent endomorphism: returns the
/// two standard-form summands (image part first). The idempotent must be
/// neither 0 nor 1.
std::pair<Rep, Rep> split_by_idempotent(const MarkedQuiver& mq, const Rep& u,
                                        const std::vector<Mat>& idem);

struct Decomposition {
  std::vector<Rep> summands;
  bool exact = true;
};
Decomposition decompose(const MarkedQuiver& mq, const Rep& u, const Limits& lim = {});

/// All indecomposables with every per-vertex total dimension at most
/// max_total_dim, pairwise non-isomorphic, canonical representatives, sorted
/// by (grand total dimension, dims, matrices).
std::vector<Rep> enumerate_indecomposables(const MarkedQuiver& mq, int max_total_dim,
                                           const Limits& lim = {});
std::vector<Rep> enumerate_indecomposables(const MarkedQuiver& mq,
                                           const std::vector<int>& per_vertex_bounds,
                                           const Limits& lim = {});
/// Same, over an explicit list of dims points (deduplicated, reordered
/// canonically).
std::vector<Rep> enumerate_indecomposables_at(const MarkedQuiver& mq, std::vector<DimVec> dims,
                                              const Limits& lim = {});

/// Rebuild the marked quiver over another prime (vectroid matrices are
/// reinterpreted; entries must be < p).
MarkedQuiver with_field(const MarkedQuiver& mq, uint32_t p);

/// All multiplicity vectors over the objects of v with total dimension <= cap.
std::vector<std::vector<int>> mult_vectors_up_to(const Vectroid& v, int cap);

std::string serialize_rep(const MarkedQuiver& mq, const Rep& r);
Rep parse_rep(const MarkedQuiver& mq, const std::string& text);

}  // namespace mqr
