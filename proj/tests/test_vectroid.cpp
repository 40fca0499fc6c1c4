#include <doctest.h>

#include "mqr/errors.hpp"
#include "mqr/vectroid.hpp"

using namespace mqr;

namespace {

Vectroid ex6_vectroid(const Fp& F) {
  Poset P({"a", "a*", "b", "c", "d"}, {{"a", "b"}, {"b", "a*"}, {"a*", "c"}, {"a*", "d"}});
  return make_halflinear(HalflinearSpec::from_labels(P, {{"a", "a*"}}), F);
}

Poset diamond() {
  return Poset({"p1", "p2", "p3", "p4"}, {{"p1", "p2"}, {"p2", "p4"}, {"p1", "p3"}, {"p3", "p4"}});
}

}  // namespace

TEST_CASE("chain vectroids") {
  Fp F2(2);
  Vectroid k = make_linear(1, F2);
  CHECK(k.n_objects() == 1);
  CHECK(k.hom_basis(0, 0).size() == 1);

  Vectroid k3 = make_linear(3, F2);
  int nonzero = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!k3.hom_basis(i, j).empty()) ++nonzero;
  CHECK(nonzero == 6);
  CHECK(validate_spectroid(k3).ok());
  CHECK(is_linear(k3));
  CHECK(linear_order(k3) == 3);
  CHECK_THROWS_AS(make_linear(0, F2), ValidationError);
}

TEST_CASE("nilpotent vectroids") {
  Fp F2(2);
  CHECK(make_nilpotent(1, F2).dim_of(0) == 1);
  Vectroid k2 = make_nilpotent(2, F2);
  CHECK(k2.hom_basis(0, 0).size() == 2);
  Mat r = k2.hom_basis(0, 0)[1];
  CHECK(mat_mul(F2, r, r).is_zero());
  CHECK(validate_spectroid(make_nilpotent(3, F2)).ok());
  CHECK_THROWS_AS(make_nilpotent(0, F2), ValidationError);
}

TEST_CASE("poset linearizations") {
  Fp F2(2);
  Vectroid chain = make_poset_linearization(Poset::chain(4), F2);
  CHECK(vectroids_isomorphic(chain, make_linear(4, F2)));

  Vectroid anti = make_poset_linearization(Poset::antichain(2), F2);
  CHECK(anti.hom_basis(0, 1).empty());
  CHECK(anti.hom_basis(1, 0).empty());

  Vectroid dia = make_poset_linearization(diamond(), F2);
  int nonzero = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!dia.hom_basis(i, j).empty()) ++nonzero;
  CHECK(nonzero == 9);
  CHECK(validate_spectroid(dia).ok());
}

TEST_CASE("halflinear realizations") {
  Fp F2(2);
  Vectroid vz = ex6_vectroid(F2);
  CHECK(vz.n_objects() == 4);
  CHECK(vz.dim_of(0) == 2);
  CHECK(validate_spectroid(vz).ok());
  CHECK(is_halflinear(vz));

  // a single big pair realizes the nilpotent pair
  Poset p2({"a", "a*"}, {{"a", "a*"}});
  Vectroid v = make_halflinear(HalflinearSpec::from_labels(p2, {{"a", "a*"}}), F2);
  CHECK(vectroids_isomorphic(v, make_nilpotent(2, F2)));

  // big point incomparable to something: rejected
  Poset bad({"a", "a*", "t"}, {{"a", "a*"}});
  CHECK_THROWS_AS(make_halflinear(HalflinearSpec::from_labels(bad, {{"a", "a*"}}), F2),
                  ValidationError);
  // a chain with trivial classes is linear, not halflinear
  CHECK_THROWS_AS(make_halflinear(HalflinearSpec::from_labels(Poset::chain(3), {}), F2),
                  ValidationError);
  // a 2-antichain would have rank 0
  CHECK_THROWS_AS(make_halflinear(HalflinearSpec::from_labels(Poset::antichain(2), {}), F2),
                  ValidationError);
}

TEST_CASE("disjoint union and opposite") {
  Fp F2(2);
  Vectroid kk = disjoint_union(make_linear(1, F2), make_linear(1, F2));
  CHECK(kk.n_objects() == 2);
  CHECK(kk.hom_basis(0, 1).empty());

  Vectroid vb = disjoint_union(make_nilpotent(2, F2), make_linear(1, F2));
  CHECK(vb.n_objects() == 2);
  CHECK(vb.dim_of(0) == 2);
  CHECK(validate_spectroid(vb).ok());
  CHECK(validate_spectroid(disjoint_union(make_linear(2, F2), make_linear(3, F2))).ok());

  CHECK(vectroids_isomorphic(opposite(make_linear(1, F2)), make_linear(1, F2)));
  CHECK(vectroids_isomorphic(opposite(make_linear(4, F2)), make_linear(4, F2)));
  Vectroid vz = ex6_vectroid(F2);
  CHECK(vectroids_isomorphic(opposite(opposite(vz)), vz));
}

TEST_CASE("seeded spectroid violations are detected") {
  Fp F2(2);
  // 1) missing composite
  Vectroid broken = make_poset_linearization(diamond(), F2);
  broken.hom[0][3].clear();  // p1 <= p4 removed: composites escape
  ValidationReport r1 = validate_spectroid(broken);
  CHECK(!r1.ok());
  bool has_comp = false;
  for (auto& f : r1.failures) has_comp = has_comp || f.code == "composition";
  CHECK(has_comp);

  // 2) two isomorphic objects
  Vectroid iso(F2);
  iso.add_object("A", 1);
  iso.add_object("B", 1);
  iso.init_hom();
  Mat one(1, 1);
  one.at(0, 0) = 1;
  iso.hom[0][0] = {one};
  iso.hom[1][1] = {one};
  iso.hom[0][1] = {one};
  iso.hom[1][0] = {one};
  ValidationReport r2 = validate_spectroid(iso);
  CHECK(!r2.ok());
  bool has_iso = false;
  for (auto& f : r2.failures) has_iso = has_iso || f.code == "pairwise-iso";
  CHECK(has_iso);

  // 3) non-local endomorphism algebra
  Vectroid nl(F2);
  nl.add_object("A", 2);
  nl.init_hom();
  Mat e11(2, 2);
  e11.at(0, 0) = 1;
  nl.hom[0][0] = {Mat::identity(2), e11};
  ValidationReport r3 = validate_spectroid(nl);
  CHECK(!r3.ok());
  bool has_local = false;
  for (auto& f : r3.failures) has_local = has_local || f.code == "end-local";
  CHECK(has_local);
}

TEST_CASE("structure posets") {
  for (uint32_t p : {2u, 3u}) {
    Fp F(p);
    StructurePoset s2 = structure_poset(make_nilpotent(2, F));
    CHECK(s2.poset.size() == 2);
    CHECK(s2.poset.is_chain());
    CHECK(s2.big[0]);
    CHECK(s2.big[1]);

    StructurePoset sd = structure_poset(make_poset_linearization(diamond(), F));
    CHECK(posets_isomorphic(sd.poset, diamond()));
    for (int i = 0; i < sd.poset.size(); ++i) CHECK(!sd.big[i]);

    StructurePoset sz = structure_poset(ex6_vectroid(F));
    Poset expect({"a", "a*", "b", "c", "d"}, {{"a", "b"}, {"b", "a*"}, {"a*", "c"}, {"a*", "d"}});
    std::vector<int> te = {1, 1, 0, 0, 0}, tg(5);
    for (int i = 0; i < 5; ++i) tg[i] = sz.big[i] ? 1 : 0;
    CHECK(poset_isomorphism(expect, sz.poset, te, tg).has_value());
  }
}

TEST_CASE("structure poset round trips") {
  Fp F2(2);
  for (const Poset& P : {Poset::chain(3), Poset::antichain(2), diamond(),
                          Poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}})}) {
    StructurePoset sp = structure_poset(make_poset_linearization(P, F2));
    CHECK(posets_isomorphic(sp.poset, P));
  }
  // halflinear spec -> vectroid -> spec
  Vectroid vz = ex6_vectroid(F2);
  HalflinearSpec spec = halflinear_spec_of(vz);
  Vectroid rebuilt = make_halflinear(spec, F2);
  CHECK(vectroids_isomorphic(vz, rebuilt));
}

TEST_CASE("dimension and rank") {
  Fp F2(2);
  CHECK(vectroid_dim(make_nilpotent(3, F2)) == 3);
  CHECK(vectroid_rank(make_nilpotent(3, F2)) == 2);
  CHECK(vectroid_rank(make_linear(4, F2)) == 1);
  CHECK(vectroid_rank(make_linear(1, F2)) == 0);
  CHECK(vectroid_rank(make_nilpotent(2, F2)) == 1);

  Vectroid a = make_linear(2, F2), b = make_nilpotent(2, F2);
  Vectroid u = disjoint_union(a, b);
  CHECK(vectroid_dim(u) == std::max(vectroid_dim(a), vectroid_dim(b)));
  CHECK(vectroid_rank(u) == std::max(vectroid_rank(a), vectroid_rank(b)));
}

TEST_CASE("linearity and halflinearity") {
  Fp F2(2);
  CHECK(is_linear(make_linear(3, F2)));
  CHECK(!is_halflinear(make_linear(3, F2)));
  CHECK(is_halflinear(make_nilpotent(2, F2)));
  CHECK(!is_halflinear(make_nilpotent(3, F2)));  // dimension 3
  CHECK(is_halflinear(make_poset_linearization(diamond(), F2)));
  CHECK(!is_halflinear(disjoint_union(make_nilpotent(2, F2), make_linear(1, F2))));

  // dim 1 vectroids behave like poset linearizations
  for (const Vectroid& v : {make_linear(3, F2), make_poset_linearization(diamond(), F2)}) {
    StructurePoset sp = structure_poset(v);
    for (int i = 0; i < sp.poset.size(); ++i) CHECK(!sp.big[i]);
    for (int i = 0; i < v.n_objects(); ++i)
      for (int j = 0; j < v.n_objects(); ++j) CHECK(v.hom_basis(i, j).size() <= 1);
  }
}

TEST_CASE("minus and almost equivalence") {
  Fp F2(2);
  Vectroid k2n = make_nilpotent(2, F2);
  CHECK(vectroids_isomorphic(vectroid_minus(k2n), k2n));  // nothing to remove
  CHECK(almost_equivalent(k2n, k2n));

  Vectroid vz = ex6_vectroid(F2);
  Vectroid m = vectroid_minus(vz);
  CHECK(m.n_objects() == 3);  // the totally comparable point b is removed
  CHECK(almost_equivalent(vz, vz));
  CHECK_THROWS_AS(vectroid_minus(make_linear(3, F2)), NotApplicable);
}

TEST_CASE("dsl rendering of vectroids") {
  Fp F2(2);
  CHECK(vectroid_to_dsl(make_linear(1, F2)) == "k");
  CHECK(vectroid_to_dsl(make_linear(3, F2)) == "k_3");
  CHECK(vectroid_to_dsl(make_nilpotent(2, F2)) == "k^2");
  std::string u = vectroid_to_dsl(disjoint_union(make_nilpotent(2, F2), make_linear(1, F2)));
  CHECK(u == "k^2 + k");
  CHECK(vectroid_to_dsl(ex6_vectroid(F2)).substr(0, 5) == "half{");
  CHECK(vectroid_to_dsl(make_poset_linearization(diamond(), F2)).substr(0, 3) == "kP{");
}
