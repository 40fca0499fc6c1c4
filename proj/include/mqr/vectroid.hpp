#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqr/matrix.hpp"
#include "mqr/poset.hpp"

namespace mqr {

/// A vectroid: finitely many based spaces over GF(p) with explicit hom-space
/// bases of matrices, closed under composition, with local endomorphism
/// algebras and pairwise non-isomorphic objects (a spectroid inside the
/// category of finite-dimensional spaces).
struct Vectroid {
  struct Object {
    std::string label;
    int dim = 1;
  };

  Fp field;
  std::vector<Object> objects;
  // hom[i][j]: basis of the space of maps object i -> object j, as dim_i x
  // dim_j matrices. Empty list = zero space.
  std::vector<std::vector<std::vector<Mat>>> hom;

  explicit Vectroid(Fp f) : field(f) {}

  int n_objects() const { return static_cast<int>(objects.size()); }
  int dim_of(int i) const { return objects[i].dim; }
  const std::vector<Mat>& hom_basis(int i, int j) const { return hom[i][j]; }
  int index_of(const std::string& label) const;
  int max_object_dim() const;

  int add_object(const std::string& label, int dim);
  void init_hom();  // size hom to n x n empty lists
};

// ---- constructors ----------------------------------------------------------

/// Linearization of an n-chain: n one-dimensional objects o1 <= ... <= on,
/// hom(oi, oj) one-dimensional iff i <= j.
Vectroid make_linear(int n, const Fp& field);

/// One n-dimensional object with End = span{1, R, ..., R^(n-1)} where the
/// basis transforms by a_i R = a_{i+1}, a_n R = 0.
Vectroid make_nilpotent(int n, const Fp& field);

/// One one-dimensional object per poset element; hom(a, b) one-dimensional
/// iff a <= b, with compositions multiplying to the canonical basis map.
Vectroid make_poset_linearization(const Poset& p, const Fp& field);

/// Combinatorial data determining a halflinear vectroid: the intended
/// structure poset together with the partition into same-object classes.
struct HalflinearSpec {
  Poset poset;
  // Partition of poset elements into classes of size 1 or 2; a size-2 class
  // becomes one 2-dimensional object (its two points are the big points).
  std::vector<std::vector<int>> classes;

  static HalflinearSpec from_labels(
      Poset p, const std::vector<std::vector<std::string>>& label_classes);
};

/// Realizes the halflinear vectroid determined by the spec: one object per
/// class, size-2 classes {a, a*} (a < a*) get the 2-dimensional object with
/// radical sending a to a*, and hom spaces spanned by the elementary maps
/// u -> v for u <= v. Throws ValidationError when the data violates the
/// halflinearity conditions or describes a linear vectroid.
Vectroid make_halflinear(const HalflinearSpec& spec, const Fp& field);

/// Objects concatenated, cross hom spaces zero; clashing labels of the second
/// argument are suffixed deterministically.
Vectroid disjoint_union(const Vectroid& a, const Vectroid& b);

/// Same objects, every hom basis matrix transposed, composition reversed.
Vectroid opposite(const Vectroid& v);

// ---- validation ------------------------------------------------------------

struct ValidationReport {
  struct Item {
    std::string code;
    std::string message;
  };
  std::vector<Item> failures;
  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

ValidationReport validate_spectroid(const Vectroid& v);

// ---- structure theory ------------------------------------------------------

struct StructurePoset {
  Poset poset;
  std::vector<int> object_of;     // poset element -> object index
  std::vector<uint8_t> big;       // shares its object with another point
  std::vector<Mat> representative;  // a 1 x dim(object) representative element

  int points_of_object(int obj) const;
  std::string to_string() const;
};

/// Orders the nonzero elements of all objects by reachability under
/// hom-space elements, factors by mutual reachability, returns the quotient
/// poset with object classes and big flags. Element enumeration is bounded.
StructurePoset structure_poset(const Vectroid& v);

int vectroid_dim(const Vectroid& v);

/// Max rank over noninvertible, additively indecomposable morphisms; 0 when
/// there is no nonzero noninvertible morphism.
int vectroid_rank(const Vectroid& v);

bool is_linear(const Vectroid& v);       // isomorphic to a chain linearization
bool is_halflinear(const Vectroid& v);

/// For linear v, the chain length n.
int linear_order(const Vectroid& v);

/// Removes the one-dimensional objects whose point is comparable to every
/// point of the structure poset (halflinear input only).
Vectroid vectroid_minus(const Vectroid& v);

/// minus(v1) isomorphic to minus(v2), decided via structure posets with big
/// flags and object dimensions. Halflinear inputs only.
bool almost_equivalent(const Vectroid& v1, const Vectroid& v2);

/// Structural isomorphism test for linear or halflinear vectroids (structure
/// poset with flags); throws NotApplicable on other inputs.
bool vectroids_isomorphic(const Vectroid& a, const Vectroid& b);

/// Rebuild the HalflinearSpec of a halflinear vectroid from its structure
/// poset (used for round trips and DSL printing).
HalflinearSpec halflinear_spec_of(const Vectroid& v);

/// DSL rendering: k, k_N, k^N, kP{...}, half{...} when the vectroid is
/// recognizably of that form, otherwise a descriptive non-parseable string.
std::string vectroid_to_dsl(const Vectroid& v);

}  // namespace mqr
