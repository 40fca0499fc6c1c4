#include "mqr/fixtures.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mqr/count.hpp"
#include "mqr/dsl.hpp"
#include "mqr/errors.hpp"
#include "mqr/reduce.hpp"

namespace mqr {

namespace {

const char* kSec4Doc = R"(# Two vertical strips with a coupled pair: c <- d -> b
quiver { vertices: d, c, b ; arrows: beta: d -> c, gamma: d -> b }
marking { d: k ; c: k_2 ; b: k^2 + k }
field { p: 2 }
)";

const char* kExample6Doc = R"(# Pendant halflinear marking eliminated by the reduction
quiver { vertices: w, z, u ; arrows: beta: w -> z, gamma: w -> u }
marking { w: k ; z: half{ a, a*, b, c, d ; rel: a<b, b<a*, a*<c, a*<d ; same: {a,a*} } ; u: k }
field { p: 2 }
)";

const char* kWildPlaneDoc = R"(# The affine plane of pairwise non-isomorphic indecomposables
quiver { vertices: d, c, b ; arrows: beta: d -> c, gamma: d -> b }
marking { d: k ; c: k_2 ; b: k^2 + k }
field { p: 2 }
plane w {
  dims { d: 4 ; c: o1:1, o2:1 ; b: A:2, o1:2 }
  base beta  [ 0 0 / 0 0 / 1 0 / 0 1 ]
  base gamma [ 1 0 0 0 0 0 / 0 0 1 0 1 0 / 0 1 0 0 1 0 / 0 0 0 1 0 1 ]
  dir lambda gamma [ 0 0 0 0 0 1 / 0 0 0 0 0 0 / 0 0 0 0 0 0 / 0 0 0 0 0 0 ]
  dir mu gamma     [ 0 0 0 0 1 0 / 0 0 0 0 0 0 / 0 0 0 0 0 0 / 0 0 0 0 0 0 ]
}
)";

const char* kProp8Doc = R"(# Chain-marked source rephrased over V_y | k_(m-1)
quiver { vertices: x, y ; arrows: alpha: x -> y }
marking { x: k_2 ; y: k }
field { p: 2 }
)";

const char* kGelfandDoc = R"(# The three-vertex star with a halflinear middle
quiver { vertices: u, x, v ; arrows: a: u -> x, b: v -> x }
marking { u: k ; x: k^2 ; v: k }
field { p: 2 }
)";

struct Check {
  std::ostringstream out;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    out << (cond ? "  ok   " : "  FAIL ") << what << "\n";
    ok = ok && cond;
  }
};

// Count all indecomposable classes within a per-vertex bound.
uint64_t counted_inds(const MarkedQuiver& mq, int bound) {
  IndCounter c(mq, bound);
  uint64_t total = 0;
  for (int g = 1; g <= c.max_grand(); ++g)
    for (auto& [d, n] : c.level(g)) total += n;
  return total;
}

FixtureResult fixture_sec4(uint32_t) {
  Check ck;
  SpecDocument doc = parse_spec(kSec4Doc);
  const MarkedQuiver& mq = doc.mq;

  // The pendant two-vertex problem d -> c has exactly 5 indecomposables.
  Quiver dq;
  dq.vertices = {"d", "c"};
  dq.arrows.push_back({"beta", 0, 1});
  MarkedQuiver delta(dq, {mq.vectroid_at(0), mq.vectroid_at(1)}, mq.field);
  auto inds = enumerate_indecomposables(delta, 3);
  ck.expect(inds.size() == 5, "ind classes of the d->c problem up to level 3: " +
                                  std::to_string(inds.size()) + " (expected 5)");

  ReductionResult r = reduce_pendant_arrow(mq, "beta", 3);
  const Vectroid& vd = r.reduced.vectroid_at(r.fused_vertex());
  ck.expect(is_linear(vd) && vd.n_objects() == 3, "reduced vectroid is the chain of length 3");
  ck.expect(r.part().kernel_objects.size() == 2, "kernel objects: " +
                                                     std::to_string(r.part().kernel_objects.size()) +
                                                     " (expected 2)");
  for (const Rep& k : r.part().kernel_objects)
    ck.expect(total_dim(r.part().subproblem, k.dims, 0) == 0,
              "kernel object vanishes at the kept vertex");

  // Exact class accounting up to per-vertex level 4, via orbit counting.
  int B = 4;
  uint64_t lhs = counted_inds(mq, B);
  const MarkedQuiver& sub = r.part().subproblem;
  std::vector<int> zdim;
  for (const Rep& t : r.part().object_table) zdim.push_back(total_dim(sub, t.dims, 1));
  IndCounter cqp(r.reduced, B);
  uint64_t rhs = 0;
  for (int g = 1; g <= cqp.max_grand(); ++g)
    for (auto& [d, c] : cqp.level(g)) {
      int zt = 0;
      for (size_t k = 0; k < zdim.size(); ++k) zt += d.mult[r.fused_vertex()][k] * zdim[k];
      if (zt <= B) rhs += c;
    }
  uint64_t kern = 0;
  for (const Rep& t : r.part().kernel_objects)
    if (total_dim(sub, t.dims, 1) <= B) ++kern;
  ck.expect(lhs == rhs + kern, "class accounting at level 4: " + std::to_string(lhs) + " = " +
                                   std::to_string(rhs) + " + " + std::to_string(kern));
  return {ck.ok, ck.out.str()};
}

FixtureResult fixture_example6(uint32_t) {
  Check ck;
  SpecDocument doc = parse_spec(kExample6Doc);
  const MarkedQuiver& mq = doc.mq;
  const Vectroid& vz = mq.vectroid_at(1);

  ReductionResult r = reduce_pendant_arrow(mq, "beta", 4);
  const MarkedQuiver& sub = r.part().subproblem;
  ck.expect(r.part().object_table.size() == 8,
            "surviving indecomposables: " + std::to_string(r.part().object_table.size()) +
                " (expected 8)");
  ck.expect(r.part().kernel_objects.size() == 4, "kernel objects = eliminated marking's objects");

  // Inventory of the survivors by (w-dimension, z-multiplicities).
  std::map<std::string, int> inv;
  for (const Rep& t : r.part().object_table) {
    std::string key = std::to_string(total_dim(sub, t.dims, 0)) + "|";
    for (int c : t.dims.mult[1]) key += std::to_string(c) + ",";
    ++inv[key];
  }
  std::map<std::string, int> want = {
      {"1|1,0,0,0,", 2},  // the two maps onto the big object's points
      {"2|1,0,0,0,", 1},  // the 2-dimensional survivor
      {"1|0,0,1,1,", 1},  // the incomparable pair
      {"1|0,1,0,0,", 1}, {"1|0,0,1,0,", 1}, {"1|0,0,0,1,", 1},
      {"1|0,0,0,0,", 1},  // the eliminated-part-free survivor
  };
  ck.expect(inv == want, "survivor inventory matches the worked example");

  const Vectroid& vw = r.reduced.vectroid_at(r.fused_vertex());
  int dim2 = 0;
  for (int i = 0; i < vw.n_objects(); ++i)
    if (vw.dim_of(i) == 2) ++dim2;
  ck.expect(dim2 == 1, "exactly one 2-dimensional object");
  ck.expect(is_halflinear(vw), "the reduced vectroid is halflinear");

  // The structure poset: a chain of six with the big pair at slots 2 and 5,
  // then two incomparable points, then a top point.
  StructurePoset sp = structure_poset(vw);
  ck.expect(sp.poset.size() == 9, "structure poset has 9 points");
  Poset expected({"a1", "abar", "b1", "a1s", "abars", "cd", "c1", "d1", "w0"},
                 {{"a1", "abar"},
                  {"abar", "b1"},
                  {"b1", "a1s"},
                  {"a1s", "abars"},
                  {"abars", "cd"},
                  {"cd", "c1"},
                  {"cd", "d1"},
                  {"c1", "w0"},
                  {"d1", "w0"}});
  std::vector<int> tag_exp = {0, 1, 0, 0, 1, 0, 0, 0, 0};  // big flags
  std::vector<int> tag_got(sp.poset.size());
  for (int i = 0; i < sp.poset.size(); ++i) tag_got[i] = sp.big[i] ? 1 : 0;
  ck.expect(poset_isomorphism(expected, sp.poset, tag_exp, tag_got).has_value(),
            "structure poset matches the listed order exactly");

  ck.expect(almost_equivalent(vw, vz), "reduced vectroid almost equivalent to the eliminated one");

  ReductionResult fast = fast_path_reduction(mq, "beta");
  ck.expect(vectroids_isomorphic(vw, fast.reduced.vectroid_at(fast.fused_vertex())),
            "fast path agrees with the generic reduction");

  // Exact class accounting across the reduction at level 3.
  int B = 3;
  uint64_t lhs = counted_inds(mq, B);
  std::vector<int> zdim;
  for (const Rep& t : r.part().object_table) zdim.push_back(total_dim(sub, t.dims, 1));
  IndCounter cqp(r.reduced, B);
  uint64_t rhs = 0;
  for (int g = 1; g <= cqp.max_grand(); ++g)
    for (auto& [d, c] : cqp.level(g)) {
      int zt = 0;
      for (size_t k = 0; k < zdim.size(); ++k) zt += d.mult[r.fused_vertex()][k] * zdim[k];
      if (zt <= B) rhs += c;
    }
  uint64_t kern = 0;
  for (const Rep& t : r.part().kernel_objects)
    if (total_dim(sub, t.dims, 1) <= B) ++kern;
  ck.expect(lhs == rhs + kern, "class accounting at level 3: " + std::to_string(lhs) + " = " +
                                   std::to_string(rhs) + " + " + std::to_string(kern));
  return {ck.ok, ck.out.str()};
}

FixtureResult fixture_wild_plane(uint32_t p_override) {
  Check ck;
  SpecDocument doc = parse_spec(kWildPlaneDoc);
  uint32_t p = p_override ? p_override : doc.mq.field.p();
  SpecDocument d2 = doc;
  if (p != doc.mq.field.p()) {
    // re-parse over the requested field
    std::string text = std::string(kWildPlaneDoc);
    size_t pos = text.find("p: 2");
    text.replace(pos, 4, "p: " + std::to_string(p));
    d2 = parse_spec(text);
  }
  const MarkedQuiver& mq = d2.mq;
  const PlaneSpec& ps = d2.planes.at("w");
  PlaneReport rep = verify_wild_plane(mq, ps);
  int expect_points = static_cast<int>(p * p);
  int expect_pairs = expect_points * (expect_points - 1) / 2;
  ck.expect(rep.points == expect_points, std::to_string(rep.points) + " plane points");
  ck.expect(rep.indecomposable == expect_points,
            std::to_string(rep.indecomposable) + "/" + std::to_string(expect_points) +
                " indecomposable");
  ck.expect(rep.non_isomorphic == expect_pairs, std::to_string(rep.non_isomorphic) + "/" +
                                                    std::to_string(expect_pairs) +
                                                    " pairs non-isomorphic");
  for (const auto& f : rep.failures) ck.expect(false, f);
  return {ck.ok, ck.out.str()};
}

// One instance of the chain-source rephrasing: counts and the stacking map.
void stacking_check(Check& ck, const MarkedQuiver& mq, const std::string& tag, int bound) {
  VectroidProblem vp = chain_source_problem(mq);
  MarkedQuiver vd = vp.as_delta(mq.field);

  auto ind_q = enumerate_indecomposables(mq, bound);

  // Region of the rephrased problem large enough to cover every class whose
  // stacked image fits the bound: source <= bound, original target part
  // <= bound, and each chain strip <= bound (an indecomposable's strip is
  // square, so its width is at most the source dimension).
  const Vectroid& V0 = vd.vectroid_at(1);
  int first_chain0 = V0.n_objects() - vp.chain_length;
  std::vector<DimVec> region;
  std::vector<int> mult(V0.n_objects(), 0);
  std::function<void(int)> gen = [&](int idx) {
    if (idx == V0.n_objects()) {
      int ypart = 0;
      for (int a = 0; a < first_chain0; ++a) ypart += mult[a] * V0.dim_of(a);
      if (ypart > bound) return;
      for (int n = 0; n <= bound; ++n) {
        DimVec d;
        d.mult = {{n}, mult};
        region.push_back(std::move(d));
      }
      return;
    }
    for (int c = 0; c * V0.dim_of(idx) <= bound; ++c) {
      mult[idx] = c;
      gen(idx + 1);
    }
    mult[idx] = 0;
  };
  gen(0);
  auto ind_v = enumerate_indecomposables_at(vd, region);

  // Excluded objects: the chain one-vertex representations.
  const Vectroid& V = vd.vectroid_at(1);
  int first_chain = V.n_objects() - vp.chain_length;
  std::vector<Rep> images;
  for (const Rep& t : ind_v) {
    bool excluded = false;
    for (int a = first_chain; a < V.n_objects(); ++a)
      if (total_dim(vd, t.dims, 0) == 0 && t.dims.mult[1][a] == 1 &&
          grand_total(vd, t.dims) == 1)
        excluded = true;
    if (excluded) continue;
    PreliminaryForm pf = preliminary_form(vd, vp, t);
    ck.expect(are_isomorphic(vd, pf.rep, t).isomorphic,
              tag + ": preliminary form is isomorphic to the input");
    PreliminaryForm pf2 = preliminary_form(vd, vp, pf.rep);
    ck.expect(pf2.rep == pf.rep, tag + ": preliminary form is idempotent");
    Rep img = apply_stacking(mq, vp, vd, pf);
    bool in_bound = true;
    for (int x = 0; x < mq.quiver.n_vertices(); ++x)
      if (total_dim(mq, img.dims, x) > bound) in_bound = false;
    if (in_bound) images.push_back(std::move(img));
  }
  ck.expect(images.size() == ind_q.size(),
            tag + ": class counts agree (" + std::to_string(images.size()) + " vs " +
                std::to_string(ind_q.size()) + ")");
  // The images hit every class exactly once.
  std::vector<uint8_t> used(ind_q.size(), 0);
  bool bijective = true;
  for (const Rep& img : images) {
    ck.expect(is_indecomposable(mq, img).indecomposable, tag + ": stacked image indecomposable");
    bool found = false;
    for (size_t i = 0; i < ind_q.size() && !found; ++i) {
      if (used[i]) continue;
      if (are_isomorphic(mq, img, ind_q[i]).isomorphic) {
        used[i] = 1;
        found = true;
      }
    }
    bijective = bijective && found;
  }
  ck.expect(bijective, tag + ": stacking map is a bijection onto the classes");
}

FixtureResult fixture_prop8(uint32_t) {
  Check ck;
  SpecDocument doc = parse_spec(kProp8Doc);
  stacking_check(ck, doc.mq, "k_2 -> k", 3);

  // Second instance: the target marked by a two-element antichain.
  Fp F = doc.mq.field;
  Quiver q;
  q.vertices = {"x", "y"};
  q.arrows.push_back({"alpha", 0, 1});
  MarkedQuiver mq2(q, {make_linear(2, F), make_poset_linearization(Poset::antichain(2), F)}, F);
  stacking_check(ck, mq2, "k_2 -> antichain", 3);
  return {ck.ok, ck.out.str()};
}

FixtureResult fixture_gelfand(uint32_t) {
  Check ck;
  SpecDocument doc = parse_spec(kGelfandDoc);
  Verdict v = classify(doc.mq);
  ck.expect(v.kind == VerdictKind::Tame, "verdict: " + v.to_string());
  ck.expect(v.diagram && v.diagram->kind == DiagramKind::DTilde && v.diagram->n == 4,
            "augmented graph is the four-legged star");
  return {ck.ok, ck.out.str()};
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"sec4-reduction", "example6", "wild-plane", "prop8", "gelfand-d4"};
}

std::string fixture_document(const std::string& name) {
  if (name == "sec4-reduction") return kSec4Doc;
  if (name == "example6") return kExample6Doc;
  if (name == "wild-plane") return kWildPlaneDoc;
  if (name == "prop8") return kProp8Doc;
  if (name == "gelfand-d4") return kGelfandDoc;
  throw ValidationError("unknown fixture '" + name + "'");
}

FixtureResult run_fixture(const std::string& name, uint32_t p_override) {
  if (name == "sec4-reduction") return fixture_sec4(p_override);
  if (name == "example6") return fixture_example6(p_override);
  if (name == "wild-plane") return fixture_wild_plane(p_override);
  if (name == "prop8") return fixture_prop8(p_override);
  if (name == "gelfand-d4") return fixture_gelfand(p_override);
  throw ValidationError("unknown fixture '" + name + "'");
}

}  // namespace mqr
