#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqr/count.hpp"
#include "mqr/rep.hpp"

namespace mqr {

/// One of the four wildness configurations (with the vertex-merging closure
/// applied): 1) a path around a non-linear vertex with a marked neighbor,
/// 2) a path around a vertex that is neither linear nor halflinear,
/// 3) an edge whose ends are both non-linear, one not even halflinear,
/// 4) a cycle through a marked vertex.
struct WildPattern {
  int pattern_case = 0;
  std::vector<std::string> vertices;  // witness vertices (in the merged quiver)
  std::string via;                    // merge trail, empty when none
  std::string to_string() const;
};

std::optional<WildPattern> detect_wild_pattern(const MarkedQuiver& mq);

enum class VerdictKind { Finite, Tame, Wild, ReducedToVectroid, Unknown };

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<DiagramClass> diagram;
  std::optional<WildPattern> pattern;
  std::optional<Vectroid> vectroid_problem;  // V ⊔ k_s for the reduced case
  int chain_part = 0;                        // s
  std::string note;

  std::string to_string() const;
};

/// The representation-type decision: on linear/halflinear markings the
/// augmented graph decides (Dynkin = finite, extended Dynkin = tame, else
/// wild); one vertex with a bigger vectroid either fits the admissible chain
/// shape and defers to a vectroid problem, or the instance is wild; two or
/// more such vertices are wild. Unknown only on resource exhaustion.
Verdict classify(const MarkedQuiver& mq);

struct EvidenceRecord {
  struct Row {
    DimVec dims;
    std::vector<uint64_t> counts;  // per field
  };
  std::vector<uint32_t> fields;
  std::vector<Row> rows;
  bool finite_evidence = false;
  bool tame_evidence = false;
  bool wild_evidence = false;
  bool complete = false;  // full lattice scanned (no early stop)
  std::string note;
};

enum class EvidenceStop {
  Full,             // scan the whole lattice
  OnGrowth,         // stop once some dims shows cross-field growth
  OnWildSignal,     // stop once some dims shows two-parameter growth
};

/// Per-dims indecomposable class counts over several primes, with the
/// derived evidence flags: stabilized p-independent counts (finite), strict
/// growth in p (tame), growth at the two-parameter rate (wild). Corroborates
/// classify; never overrides it.
EvidenceRecord empirical_type_report(const MarkedQuiver& mq, int dim_bound,
                                     const std::vector<uint32_t>& fields,
                                     EvidenceStop stop = EvidenceStop::Full,
                                     const CountLimits& lim = {});

struct PlaneSpec {
  Rep base;
  std::vector<Mat> dir1;  // first direction, one matrix per arrow
  std::vector<Mat> dir2;  // second direction
};

struct PlaneReport {
  int points = 0;
  int indecomposable = 0;
  int pairs = 0;
  int non_isomorphic = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && points > 0; }
};

/// Instantiate base + l*dir1 + m*dir2 for all (l, m) in GF(p)^2 and check
/// that every point is indecomposable and all pairs are non-isomorphic.
PlaneReport verify_wild_plane(const MarkedQuiver& mq, const PlaneSpec& spec);

}  // namespace mqr
