#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqr/rep.hpp"

namespace mqr {

/// Bookkeeping for one contracted part: the eliminated sub-problem, its
/// kernel objects (indecomposables the port functor kills) and the table
/// mapping each new vectroid object to its source indecomposable.
struct PartReduction {
  int vertex = -1;  // vertex index in the reduced quiver
  MarkedQuiver subproblem;
  std::vector<Rep> kernel_objects;  // inds with zero component at the port
  std::vector<Rep> object_table;    // new object index -> surviving ind
};

struct ReductionResult {
  MarkedQuiver reduced;
  std::vector<PartReduction> parts;  // non-trivial parts, in part order
  std::string eliminated;
  std::vector<std::string> notes;

  int fused_vertex() const { return parts.empty() ? -1 : parts.front().vertex; }
  const PartReduction& part() const { return parts.front(); }
};

/// Eliminate a pendant vertex z and its unique arrow: enumerate the
/// indecomposables of the two-vertex sub-problem, keep the survivors as the
/// objects of the new vectroid at the neighbor w, realize its hom spaces as
/// the w-components of the morphism spaces between survivors.
/// dim_cap bounds the per-vertex total dimension of the enumeration; the two
/// top levels must be free of indecomposables, otherwise the sub-problem's
/// finiteness is not certified and the reduction fails.
ReductionResult reduce_pendant_arrow(const MarkedQuiver& mq, const std::string& arrow_id,
                                     int dim_cap = 4);

/// The three reducible configurations: 1) unmarked w, chain-marked z;
/// 2) unmarked w, halflinear z; 3) unmarked z, two-chain at w. Cases 1 and 3
/// are produced directly from the case table; case 2 runs the generic
/// computation and asserts the halflinearity and almost-equivalence claims.
ReductionResult fast_path_reduction(const MarkedQuiver& mq, const std::string& arrow_id);

/// Which reducible case applies (1, 2 or 3), if any.
std::optional<int> reducible_case(const MarkedQuiver& mq, const std::string& arrow_id);

/// Contract each part of a vertex partition to a single vertex. Parts are
/// induced subquivers; every part must have all its crossing arrows incident
/// to one internal vertex (the port). Singleton arrowless parts keep their
/// vectroid unchanged.
ReductionResult contract_subquivers(const MarkedQuiver& mq,
                                    const std::vector<std::vector<std::string>>& parts,
                                    int dim_cap = 4);

/// The two-vertex problem with a chain-marked source, x -> y with V_x a
/// chain of length m > 1, rephrased as the single-vectroid problem over
/// V_y ⊔ k_(m-1) with the chain objects excluded.
struct VectroidProblem {
  Vectroid v;            // V_y ⊔ k_(m-1)
  int chain_length = 0;  // m - 1 excluded chain objects (the last ones)
  int m = 0;

  /// The problem as a marked quiver: unmarked source, V at the target.
  MarkedQuiver as_delta(const Fp& field) const;
};
VectroidProblem chain_source_problem(const MarkedQuiver& mq);

struct PreliminaryForm {
  Rep rep;                      // row-equivalent staircase representative
  std::vector<int> row_blocks;  // r_1..r_m (rows per chain level; r_m = rest)
};

/// Row-reduce the chain strips of a representation of the V_y ⊔ k_(m-1)
/// problem into the staircase shape: strip j supported on the first
/// r_1+..+r_j rows with independent rows in its own block. Row operations
/// only, hence an isomorphic representation. Idempotent on its own output.
PreliminaryForm preliminary_form(const MarkedQuiver& vp_delta, const VectroidProblem& vp,
                                 const Rep& u);

/// Check the staircase shape and return the row block sizes, or nothing.
std::optional<std::vector<int>> staircase_blocks(const MarkedQuiver& vp_delta,
                                                 const VectroidProblem& vp, const Rep& u);

/// The stacking map: forget the chain strips and regroup the rows as the
/// chain-marked source of the original problem.
Rep apply_stacking(const MarkedQuiver& original, const VectroidProblem& vp,
                const MarkedQuiver& vp_delta, const PreliminaryForm& u);

}  // namespace mqr
