#include <doctest.h>

#include <random>

#include "mqr/rep.hpp"

using namespace mqr;

namespace {

MarkedQuiver delta(const Vectroid& vx, const Vectroid& vy) {
  Quiver q;
  q.vertices = {"x", "y"};
  q.arrows.push_back({"a", 0, 1});
  return MarkedQuiver(q, {vx, vy}, vx.field);
}

Rep make_rep(const MarkedQuiver& mq, std::vector<std::vector<int>> mult,
             std::vector<Mat> arrows) {
  Rep r;
  r.dims.mult = std::move(mult);
  r.arrows = std::move(arrows);
  return r;
}

}  // namespace

TEST_CASE("representation space dimensions") {
  Fp F2(2);
  {
    MarkedQuiver mq = delta(make_linear(1, F2), make_linear(1, F2));
    DimVec d;
    d.mult = {{2}, {3}};
    CHECK(rep_space_dim(mq, d) == 6);
    DimVec z;
    z.mult = {{2}, {0}};
    CHECK(rep_space_dim(mq, z) == 0);
  }
  {
    // two arrows out of a common source, all vertex spaces 4-dimensional
    Quiver q;
    q.vertices = {"d", "c", "b"};
    q.arrows.push_back({"beta", 0, 1});
    q.arrows.push_back({"gamma", 0, 2});
    MarkedQuiver mq(q,
                    {make_linear(1, F2), make_linear(2, F2),
                     disjoint_union(make_nilpotent(2, F2), make_linear(1, F2))},
                    F2);
    DimVec d;
    d.mult = {{4}, {2, 2}, {1, 2}};  // totals 4, 4, 4
    CHECK(total_dim(mq, d, 1) == 4);
    CHECK(total_dim(mq, d, 2) == 4);
    CHECK(rep_space_dim(mq, d) == 32);
  }
}

TEST_CASE("hom spaces") {
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_linear(1, F2));

  Rep u = make_rep(mq, {{1}, {1}}, {Mat::from_rows({{1}})});
  Rep w = make_rep(mq, {{1}, {1}}, {Mat::from_rows({{0}})});

  MorphismBasis end_u = hom_space(mq, u, u);
  CHECK(end_u.dim() == 1);  // End = k . id for this indecomposable

  // f(x) * 0 = 1 * f(y): f(x) free, f(y) = 0
  MorphismBasis h = hom_space(mq, u, w);
  REQUIRE(h.dim() == 1);
  CHECK(h.elems[0][1].is_zero());
  CHECK(!h.elems[0][0].is_zero());

  // identity is always a morphism of u to itself
  EndAlgebra ea = end_algebra(mq, u);
  CHECK(ea.basis.dim() == 1);
  CHECK(ea.table[0][0] == std::vector<uint32_t>{1});
}

TEST_CASE("one-vertex representations have the object's endomorphisms") {
  Fp F2(2);
  Vectroid k2hat = make_nilpotent(2, F2);
  MarkedQuiver mq = delta(make_linear(1, F2), k2hat);
  Rep ut = unit_rep(mq, 1, 0);
  EndAlgebra ea = end_algebra(mq, ut);
  CHECK(ea.basis.dim() == 2);  // k[r]/r^2
  CHECK(is_indecomposable(mq, ut).indecomposable);
}

TEST_CASE("indecomposability") {
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_linear(1, F2));
  Rep u = make_rep(mq, {{1}, {1}}, {Mat::from_rows({{1}})});
  Rep zero_arrow = make_rep(mq, {{1}, {1}}, {Mat::from_rows({{0}})});

  CHECK(is_indecomposable(mq, u).indecomposable);
  CHECK(is_indecomposable(mq, unit_rep(mq, 0, 0)).indecomposable);
  CHECK(!is_indecomposable(mq, zero_rep(mq)).indecomposable);
  CHECK(!is_indecomposable(mq, zero_arrow).indecomposable);  // splits into two points

  Rep sum = direct_sum(mq, u, u);
  IndecResult r = is_indecomposable(mq, sum);
  CHECK(!r.indecomposable);
  CHECK(r.exact);
}

TEST_CASE("isomorphism") {
  Fp F3(3);
  MarkedQuiver mq = delta(make_linear(1, F3), make_linear(1, F3));
  Rep u = make_rep(mq, {{1}, {1}}, {Mat::from_rows({{1}})});
  Rep u2 = make_rep(mq, {{1}, {1}}, {Mat::from_rows({{2}})});
  Rep zero_arrow = make_rep(mq, {{1}, {1}}, {Mat::from_rows({{0}})});

  IsoResult self = are_isomorphic(mq, u, u);
  CHECK(self.isomorphic);
  REQUIRE(self.witness);

  CHECK(are_isomorphic(mq, u, u2).isomorphic);       // scale by a unit
  CHECK(!are_isomorphic(mq, u, zero_arrow).isomorphic);

  // permuted direct sums are isomorphic
  Rep a = direct_sum(mq, u, zero_arrow);
  Rep b = direct_sum(mq, zero_arrow, u);
  CHECK(are_isomorphic(mq, a, b).isomorphic);

  // different dims: immediately not isomorphic
  CHECK(!are_isomorphic(mq, u, unit_rep(mq, 0, 0)).isomorphic);
}

TEST_CASE("direct sums") {
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_linear(2, F2));
  auto inds = enumerate_indecomposables(mq, 2);
  REQUIRE(inds.size() == 5);
  const Rep& u = inds[2];
  Rep zo = zero_rep(mq);
  CHECK(direct_sum(mq, u, zo) == u);
  Rep s = direct_sum(mq, inds[1], inds[3]);
  for (int x = 0; x < 2; ++x)
    CHECK(total_dim(mq, s.dims, x) ==
          total_dim(mq, inds[1].dims, x) + total_dim(mq, inds[3].dims, x));
  CHECK(!is_indecomposable(mq, s).indecomposable);
}

TEST_CASE("enumeration: the rank normal form oracle for a single arrow") {
  // Independent oracle: every representation of the unmarked single arrow is
  // a direct sum of the three small ones (rank normal form). Check that the
  // enumerated classes are those three and that every representation with
  // levels <= 2 decomposes into them.
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_linear(1, F2));
  auto inds = enumerate_indecomposables(mq, 2);
  REQUIRE(inds.size() == 3);

  for (int dx = 0; dx <= 2; ++dx)
    for (int dy = 0; dy <= 2; ++dy) {
      if (dx + dy == 0) continue;
      Mat m(dx, dy);
      std::vector<uint32_t*> slots;
      for (auto& e : m.e) slots.push_back(&e);
      while (true) {
        Rep r = make_rep(mq, {{dx}, {dy}}, {m});
        Decomposition dec = decompose(mq, r);
        CHECK(dec.exact);
        int rank = rank_of(F2, m);
        // rank normal form: rank maps, dx - rank sources, dy - rank sinks
        CHECK(static_cast<int>(dec.summands.size()) == rank + (dx - rank) + (dy - rank));
        for (const Rep& s : dec.summands) {
          bool matched = false;
          for (const Rep& c : inds) matched = matched || are_isomorphic(mq, s, c).isomorphic;
          CHECK(matched);
        }
        size_t k = slots.size();
        bool wrapped = true;
        while (k > 0) {
          --k;
          if (*slots[k] + 1 < 2) {
            *slots[k] += 1;
            wrapped = false;
            break;
          }
          *slots[k] = 0;
        }
        if (wrapped) break;
      }
    }
}

TEST_CASE("enumeration finds the five classes of the two-chain problem") {
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_linear(2, F2));
  auto inds = enumerate_indecomposables(mq, 3);
  CHECK(inds.size() == 5);
  // the one-vertex representations appear
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < mq.vectroid_at(x).n_objects(); ++a) {
      Rep ut = unit_rep(mq, x, a);
      bool found = false;
      for (const Rep& r : inds) found = found || are_isomorphic(mq, r, ut).isomorphic;
      CHECK(found);
    }
  // pairwise non-isomorphic
  for (size_t i = 0; i < inds.size(); ++i)
    for (size_t j = i + 1; j < inds.size(); ++j)
      CHECK(!are_isomorphic(mq, inds[i], inds[j]).isomorphic);
}

TEST_CASE("serialization round trip is bit exact") {
  Fp F3(3);
  MarkedQuiver mq = delta(make_linear(2, F3), make_nilpotent(2, F3));
  std::mt19937 rng(5);
  for (int iter = 0; iter < 20; ++iter) {
    Rep r;
    r.dims = zero_dims(mq);
    for (int x = 0; x < 2; ++x)
      for (auto& c : r.dims.mult[x]) c = static_cast<int>(rng() % 3);
    for (const auto& a : mq.quiver.arrows) {
      Mat m(total_dim(mq, r.dims, a.src), total_dim(mq, r.dims, a.dst));
      for (auto& e : m.e) e = rng() % 3;
      r.arrows.push_back(std::move(m));
    }
    std::string text = serialize_rep(mq, r);
    Rep back = parse_rep(mq, text);
    CHECK(back == r);
    CHECK(serialize_rep(mq, back) == text);
  }
}

TEST_CASE("isomorphism beyond the cap falls back to summand matching") {
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_linear(1, F2));
  auto inds = enumerate_indecomposables(mq, 2);
  REQUIRE(inds.size() == 3);
  Rep a = direct_sum(mq, inds[0], direct_sum(mq, inds[1], inds[2]));
  Rep b = direct_sum(mq, inds[2], direct_sum(mq, inds[0], inds[1]));
  Rep c = direct_sum(mq, inds[2], inds[2]);  // same dims as a, different classes
  REQUIRE(c.dims == a.dims);
  Limits tight;
  tight.end_enum_cap = 2;  // force the decompose-and-match path
  IsoResult ab = are_isomorphic(mq, a, b, tight);
  CHECK(ab.isomorphic);
  CHECK(ab.exact);
  CHECK(!are_isomorphic(mq, a, c, tight).isomorphic);
}

TEST_CASE("hom dimension is an isomorphism invariant") {
  Fp F3(3);
  MarkedQuiver mq = delta(make_linear(1, F3), make_nilpotent(2, F3));
  auto inds = enumerate_indecomposables(mq, 2);
  std::mt19937 rng(3);
  for (int iter = 0; iter < 15; ++iter) {
    const Rep& u = inds[rng() % inds.size()];
    const Rep& w = inds[rng() % inds.size()];
    // twist u by a unit at each vertex
    Rep tu = u;
    for (int x = 0; x < 2; ++x) {
      auto basis = block_basis(mq.vectroid_at(x), u.dims.mult[x], u.dims.mult[x]);
      Mat g = Mat::identity(total_dim(mq, u.dims, x));
      for (const Mat& b : basis)
        if (rng() % 3 == 0) g = mat_add(F3, g, b);
      auto gi = inverse(F3, g);
      if (!gi) continue;
      for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
        const auto& a = mq.quiver.arrows[ai];
        if (a.src == x) tu.arrows[ai] = mat_mul(F3, *gi, tu.arrows[ai]);
        if (a.dst == x) tu.arrows[ai] = mat_mul(F3, tu.arrows[ai], g);
      }
    }
    CHECK(are_isomorphic(mq, u, tu).isomorphic);
    CHECK(hom_space(mq, u, w).dim() == hom_space(mq, tu, w).dim());
    CHECK(hom_space(mq, w, u).dim() == hom_space(mq, w, tu).dim());
  }
}

TEST_CASE("every small representation decomposes into enumerated classes") {
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_nilpotent(2, F2));
  auto inds = enumerate_indecomposables(mq, 4);
  std::mt19937 rng(17);
  for (int iter = 0; iter < 40; ++iter) {
    Rep r;
    r.dims = zero_dims(mq);
    r.dims.mult[0][0] = static_cast<int>(rng() % 3);
    r.dims.mult[1][0] = static_cast<int>(rng() % 3);
    if (r.dims.is_zero()) continue;
    Mat m(total_dim(mq, r.dims, 0), total_dim(mq, r.dims, 1));
    for (auto& e : m.e) e = rng() % 2;
    r.arrows = {m};
    Decomposition dec = decompose(mq, r);
    REQUIRE(dec.exact);
    Rep rebuilt = zero_rep(mq);
    for (const Rep& s : dec.summands) {
      bool known = false;
      for (const Rep& c : inds) known = known || are_isomorphic(mq, s, c).isomorphic;
      CHECK(known);
      rebuilt = direct_sum(mq, rebuilt, s);
    }
    CHECK(are_isomorphic(mq, rebuilt, r).isomorphic);
  }
}

TEST_CASE("field change") {
  Fp F2(2);
  MarkedQuiver mq = delta(make_linear(1, F2), make_nilpotent(2, F2));
  MarkedQuiver m3 = with_field(mq, 3);
  CHECK(m3.field.p() == 3);
  CHECK(m3.vectroid_at(1).n_objects() == 1);
  auto i2 = enumerate_indecomposables(mq, 2);
  auto i3 = enumerate_indecomposables(m3, 2);
  CHECK(!i2.empty());
  CHECK(!i3.empty());
}
