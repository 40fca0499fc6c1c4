#include "mqr/vectroid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mqr/errors.hpp"
#include "mqr/span.hpp"

namespace mqr {

int Vectroid::index_of(const std::string& label) const {
  for (int i = 0; i < n_objects(); ++i)
    if (objects[i].label == label) return i;
  throw ValidationError("Vectroid: unknown object '" + label + "'");
}

int Vectroid::max_object_dim() const {
  int d = 0;
  for (const auto& o : objects) d = std::max(d, o.dim);
  return d;
}

int Vectroid::add_object(const std::string& label, int dim) {
  objects.push_back({label, dim});
  return n_objects() - 1;
}

void Vectroid::init_hom() {
  hom.assign(objects.size(), std::vector<std::vector<Mat>>(objects.size()));
}

// ---- constructors ----------------------------------------------------------

Vectroid make_linear(int n, const Fp& field) {
  if (n < 1) throw ValidationError("make_linear: n must be >= 1");
  Vectroid v(field);
  for (int i = 1; i <= n; ++i) v.add_object("o" + std::to_string(i), 1);
  v.init_hom();
  Mat one(1, 1);
  one.at(0, 0) = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) v.hom[i][j].push_back(one);
  return v;
}

Vectroid make_nilpotent(int n, const Fp& field) {
  if (n < 1) throw ValidationError("make_nilpotent: n must be >= 1");
  Vectroid v(field);
  v.add_object("A", n);
  v.init_hom();
  Mat shift(n, n);
  for (int i = 0; i + 1 < n; ++i) shift.at(i, i + 1) = 1;  // a_i R = a_{i+1}
  Mat pw = Mat::identity(n);
  for (int k = 0; k < n; ++k) {
    v.hom[0][0].push_back(pw);
    pw = mat_mul(field, pw, shift);
  }
  return v;
}

Vectroid make_poset_linearization(const Poset& p, const Fp& field) {
  Vectroid v(field);
  for (int i = 0; i < p.size(); ++i) v.add_object(p.label(i), 1);
  v.init_hom();
  Mat one(1, 1);
  one.at(0, 0) = 1;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.leq(i, j)) v.hom[i][j].push_back(one);
  return v;
}

HalflinearSpec HalflinearSpec::from_labels(
    Poset p, const std::vector<std::vector<std::string>>& label_classes) {
  HalflinearSpec s;
  s.poset = std::move(p);
  std::vector<uint8_t> covered(s.poset.size(), 0);
  for (const auto& cls : label_classes) {
    std::vector<int> c;
    for (const auto& l : cls) c.push_back(s.poset.index_of(l));
    for (int i : c) covered[i] = 1;
    s.classes.push_back(c);
  }
  for (int i = 0; i < s.poset.size(); ++i)
    if (!covered[i]) s.classes.push_back({i});
  return s;
}

namespace {

void check_halflinear_spec(const HalflinearSpec& spec) {
  const Poset& P = spec.poset;
  std::vector<int> cls_of(P.size(), -1);
  for (size_t c = 0; c < spec.classes.size(); ++c) {
    if (spec.classes[c].empty() || spec.classes[c].size() > 2)
      throw ValidationError("halflinear spec: classes must have size 1 or 2");
    for (int e : spec.classes[c]) {
      if (e < 0 || e >= P.size() || cls_of[e] != -1)
        throw ValidationError("halflinear spec: classes must partition the poset");
      cls_of[e] = static_cast<int>(c);
    }
  }
  for (int i = 0; i < P.size(); ++i)
    if (cls_of[i] < 0) throw ValidationError("halflinear spec: classes must partition the poset");

  std::vector<uint8_t> big(P.size(), 0);
  for (const auto& c : spec.classes)
    if (c.size() == 2) {
      if (!P.comparable(c[0], c[1]))
        throw ValidationError("halflinear spec: the two points of a class must be comparable");
      big[c[0]] = big[c[1]] = 1;
    }
  for (int a = 0; a < P.size(); ++a) {
    int incomparable = 0;
    for (int b = 0; b < P.size(); ++b)
      if (a != b && !P.comparable(a, b)) ++incomparable;
    if (big[a] && incomparable > 0)
      throw ValidationError("halflinear spec: big point '" + P.label(a) +
                            "' must be comparable with every point");
    if (!big[a] && incomparable > 1)
      throw ValidationError("halflinear spec: small point '" + P.label(a) +
                            "' may be incomparable with at most one point");
  }
  if (P.count_strict_pairs() == 0)
    throw ValidationError("halflinear spec: no strict relation, the realization would have rank 0");
  bool linear = P.is_chain();
  for (const auto& c : spec.classes)
    if (c.size() == 2) linear = false;
  if (linear)
    throw ValidationError("halflinear spec: a chain with trivial classes is linear, not halflinear");
}

}  // namespace

Vectroid make_halflinear(const HalflinearSpec& spec_in, const Fp& field) {
  HalflinearSpec spec = spec_in;
  const Poset& P = spec.poset;
  // Order size-2 classes lower point first.
  for (auto& c : spec.classes)
    if (c.size() == 2 && P.lt(c[1], c[0])) std::swap(c[0], c[1]);
  check_halflinear_spec(spec);

  Vectroid v(field);
  // point -> (object index, coordinate within the object)
  std::vector<std::pair<int, int>> slot(P.size());
  for (const auto& c : spec.classes) {
    int obj = v.add_object(P.label(c[0]), static_cast<int>(c.size()));
    for (size_t k = 0; k < c.size(); ++k) slot[c[k]] = {obj, static_cast<int>(k)};
  }
  v.init_hom();
  for (size_t ci = 0; ci < spec.classes.size(); ++ci) {
    for (size_t cj = 0; cj < spec.classes.size(); ++cj) {
      int oi = slot[spec.classes[ci][0]].first;
      int oj = slot[spec.classes[cj][0]].first;
      auto& basis = v.hom[oi][oj];
      if (ci == cj) {
        basis.push_back(Mat::identity(v.dim_of(oi)));
        if (spec.classes[ci].size() == 2) {
          Mat rad(2, 2);
          rad.at(0, 1) = 1;  // lower point maps to the upper one
          basis.push_back(rad);
        }
      } else {
        for (int u : spec.classes[ci])
          for (int w : spec.classes[cj])
            if (P.leq(u, w)) {
              Mat m(v.dim_of(oi), v.dim_of(oj));
              m.at(slot[u].second, slot[w].second) = 1;
              basis.push_back(m);
            }
      }
    }
  }
  return v;
}

Vectroid disjoint_union(const Vectroid& a, const Vectroid& b) {
  if (a.field != b.field) throw ValidationError("disjoint_union: fields differ");
  Vectroid v(a.field);
  std::set<std::string> used;
  for (const auto& o : a.objects) {
    v.add_object(o.label, o.dim);
    used.insert(o.label);
  }
  for (const auto& o : b.objects) {
    std::string l = o.label;
    while (used.count(l)) l += "'";
    used.insert(l);
    v.add_object(l, o.dim);
  }
  v.init_hom();
  int na = a.n_objects();
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) v.hom[i][j] = a.hom[i][j];
  for (int i = 0; i < b.n_objects(); ++i)
    for (int j = 0; j < b.n_objects(); ++j) v.hom[na + i][na + j] = b.hom[i][j];
  return v;
}

Vectroid opposite(const Vectroid& vin) {
  Vectroid v(vin.field);
  for (const auto& o : vin.objects) v.add_object(o.label, o.dim);
  v.init_hom();
  for (int i = 0; i < vin.n_objects(); ++i)
    for (int j = 0; j < vin.n_objects(); ++j)
      for (const Mat& m : vin.hom[i][j]) v.hom[j][i].push_back(transpose(m));
  return v;
}

// ---- validation ------------------------------------------------------------

namespace {

// Flatten a list of matrices into rows of a single matrix.
Mat flatten(const std::vector<Mat>& ms) {
  if (ms.empty()) return Mat(0, 0);
  Mat r(static_cast<int>(ms.size()), ms[0].rows * ms[0].cols);
  for (size_t k = 0; k < ms.size(); ++k)
    for (size_t t = 0; t < ms[k].e.size(); ++t) r.at(static_cast<int>(k), static_cast<int>(t)) = ms[k].e[t];
  return r;
}

Mat as_row(const Mat& m) {
  Mat r(1, m.rows * m.cols);
  for (size_t t = 0; t < m.e.size(); ++t) r.at(0, static_cast<int>(t)) = m.e[t];
  return r;
}

bool in_span(const Fp& F, const std::vector<Mat>& basis, const Mat& m) {
  if (basis.empty()) return m.is_zero();
  Mat fl = flatten(basis);
  return rank_of(F, vstack(fl, as_row(m))) == rank_of(F, fl);
}

constexpr size_t kSpanCap = 1u << 20;

}  // namespace

ValidationReport validate_spectroid(const Vectroid& v) {
  ValidationReport rep;
  const Fp& F = v.field;
  int n = v.n_objects();
  auto fail = [&rep](const std::string& code, const std::string& msg) {
    rep.failures.push_back({code, msg});
  };

  for (int i = 0; i < n; ++i) {
    if (v.dim_of(i) < 1) fail("object-dim", "object '" + v.objects[i].label + "' has dim < 1");
    for (int j = 0; j < n; ++j)
      for (const Mat& m : v.hom_basis(i, j))
        if (m.rows != v.dim_of(i) || m.cols != v.dim_of(j)) {
          fail("hom-shape", "hom(" + v.objects[i].label + "," + v.objects[j].label +
                                ") has a basis matrix of wrong shape");
        }
  }
  if (!rep.ok()) return rep;  // shape errors make the remaining checks meaningless

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& b = v.hom_basis(i, j);
      if (b.empty()) continue;
      if (rank_of(F, flatten(b)) != static_cast<int>(b.size()))
        fail("hom-independence", "hom(" + v.objects[i].label + "," + v.objects[j].label +
                                     ") basis is linearly dependent");
    }

  for (int i = 0; i < n; ++i)
    if (!in_span(F, v.hom_basis(i, i), Mat::identity(v.dim_of(i))))
      fail("identity", "identity of '" + v.objects[i].label + "' is not in span hom");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const Mat& f : v.hom_basis(i, j))
        for (int k = 0; k < n; ++k)
          for (const Mat& g : v.hom_basis(j, k))
            if (!in_span(F, v.hom_basis(i, k), mat_mul(F, f, g)))
              fail("composition",
                   "a composite " + v.objects[i].label + "->" + v.objects[j].label + "->" +
                       v.objects[k].label + " escapes span hom");

  // Local endomorphism algebras: every element nilpotent or invertible.
  for (int i = 0; i < n; ++i) {
    const auto& b = v.hom_basis(i, i);
    if (span_size_capped(F.p(), b.size(), kSpanCap) == SIZE_MAX) {
      fail("end-local-cap", "End(" + v.objects[i].label + ") too large to enumerate");
      continue;
    }
    bool bad = false;
    for_each_span_element(F, b, [&](const Mat& m, const std::vector<uint32_t>&) {
      if (!is_invertible(F, m) && !is_nilpotent(F, m)) {
        bad = true;
        return false;
      }
      return true;
    });
    if (bad)
      fail("end-local", "End(" + v.objects[i].label +
                            ") is not local (an element is neither nilpotent nor invertible)");
  }

  // Pairwise non-isomorphic objects.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (v.dim_of(i) != v.dim_of(j)) continue;
      const auto& bij = v.hom_basis(i, j);
      if (bij.empty() || v.hom_basis(j, i).empty()) continue;
      if (span_size_capped(F.p(), bij.size(), kSpanCap) == SIZE_MAX) {
        fail("pairwise-iso-cap", "hom space too large to search for isomorphisms");
        continue;
      }
      bool iso = false;
      for_each_span_element(F, bij, [&](const Mat& f, const std::vector<uint32_t>&) {
        if (!is_invertible(F, f)) return true;
        auto g = inverse(F, f);
        if (g && in_span(F, v.hom_basis(j, i), *g)) {
          iso = true;
          return false;
        }
        return true;
      });
      if (iso)
        fail("pairwise-iso", "objects '" + v.objects[i].label + "' and '" + v.objects[j].label +
                                 "' are isomorphic");
    }

  return rep;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& f : failures) os << "[" << f.code << "] " << f.message << "\n";
  return os.str();
}

// ---- structure poset -------------------------------------------------------

namespace {

struct Element {
  int obj;
  Mat vec;  // 1 x dim(obj)
};

// All nonzero elements of an object, in lexicographic coefficient order.
std::vector<Mat> nonzero_vectors(const Fp& F, int dim) {
  std::vector<Mat> out;
  std::vector<uint32_t> c(dim, 0);
  while (true) {
    int k = dim;
    while (k > 0) {
      --k;
      if (c[k] + 1 < F.p()) {
        c[k] += 1;
        break;
      }
      c[k] = 0;
      if (k == 0) return out;
    }
    Mat v(1, dim);
    for (int t = 0; t < dim; ++t) v.at(0, t) = c[t];
    out.push_back(v);
  }
}

}  // namespace

StructurePoset structure_poset(const Vectroid& v) {
  const Fp& F = v.field;
  size_t total = 0;
  for (const auto& o : v.objects) {
    size_t s = span_size_capped(F.p(), static_cast<size_t>(o.dim), 1000000);
    if (s == SIZE_MAX) throw ResourceLimit("structure_poset: element enumeration bound exceeded");
    total += s;
  }
  if (total > 1000000) throw ResourceLimit("structure_poset: element enumeration bound exceeded");

  std::vector<Element> els;
  for (int i = 0; i < v.n_objects(); ++i)
    for (Mat& m : nonzero_vectors(F, v.dim_of(i))) els.push_back({i, std::move(m)});
  size_t N = els.size();
  if (N > 20000) throw ResourceLimit("structure_poset: too many elements for the quotient step");

  // profile[x][j] = canonical basis of the subspace of object j reachable
  // from element x (the row space of { x * h : h in hom_basis }).
  std::vector<std::vector<Mat>> profile(N, std::vector<Mat>(v.n_objects()));
  for (size_t x = 0; x < N; ++x)
    for (int j = 0; j < v.n_objects(); ++j) {
      const auto& basis = v.hom_basis(els[x].obj, j);
      Mat images(static_cast<int>(basis.size()), v.dim_of(j));
      for (size_t k = 0; k < basis.size(); ++k) {
        Mat im = mat_mul(F, els[x].vec, basis[k]);
        for (int t = 0; t < v.dim_of(j); ++t) images.at(static_cast<int>(k), t) = im.at(0, t);
      }
      profile[x][j] = row_space_basis(F, images);
    }

  auto reaches = [&](size_t x, size_t y) {
    return in_row_space(F, profile[x][els[y].obj], els[y].vec);
  };

  // Mutual-reachability classes. For a valid spectroid these never join
  // elements of distinct objects; assert that.
  std::vector<int> cls(N, -1);
  std::vector<size_t> rep_el;
  for (size_t x = 0; x < N; ++x) {
    if (cls[x] >= 0) continue;
    int c = static_cast<int>(rep_el.size());
    cls[x] = c;
    rep_el.push_back(x);
    for (size_t y = x + 1; y < N; ++y) {
      if (cls[y] >= 0) continue;
      if (reaches(x, y) && reaches(y, x)) {
        if (els[y].obj != els[x].obj)
          throw ValidationError("structure_poset: mutually reachable elements across objects "
                                "(input is not a spectroid)");
        cls[y] = c;
      }
    }
  }
  int nc = static_cast<int>(rep_el.size());

  // Order classes deterministically: by object, then by the number of
  // same-object classes below, then by representative.
  std::vector<std::vector<uint8_t>> below(nc, std::vector<uint8_t>(nc, 0));
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b) below[a][b] = reaches(rep_el[a], rep_el[b]) ? 1 : 0;
  std::vector<int> order(nc);
  for (int i = 0; i < nc; ++i) order[i] = i;
  auto rank_within = [&](int c) {
    int r = 0;
    for (int d = 0; d < nc; ++d)
      if (d != c && els[rep_el[d]].obj == els[rep_el[c]].obj && below[d][c]) ++r;
    return r;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int oa = els[rep_el[a]].obj, ob = els[rep_el[b]].obj;
    if (oa != ob) return oa < ob;
    int ra = rank_within(a), rb = rank_within(b);
    if (ra != rb) return ra < rb;
    return mat_key(els[rep_el[a]].vec) < mat_key(els[rep_el[b]].vec);
  });

  std::vector<int> pos(nc);
  for (int i = 0; i < nc; ++i) pos[order[i]] = i;

  StructurePoset sp;
  std::vector<int> per_object(v.n_objects(), 0);
  for (int i = 0; i < nc; ++i) ++per_object[els[rep_el[order[i]]].obj];
  std::vector<int> seen(v.n_objects(), 0);
  std::vector<std::string> labels(nc);
  std::set<std::string> taken;
  for (int i = 0; i < nc; ++i) {
    int obj = els[rep_el[order[i]]].obj;
    int nth = seen[obj]++;
    // Points of a multi-point object get starred labels (a, a*, a**, ...);
    // fall back to numeric suffixes on a clash.
    std::string l = v.objects[obj].label + std::string(nth, '*');
    if (taken.count(l)) l = v.objects[obj].label + "." + std::to_string(nth + 1);
    taken.insert(l);
    labels[i] = l;
  }
  std::vector<std::pair<std::string, std::string>> rels;
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (a != b && below[a][b]) rels.emplace_back(labels[pos[a]], labels[pos[b]]);
  sp.poset = Poset(labels, rels);
  sp.object_of.resize(nc);
  sp.big.resize(nc);
  sp.representative.resize(nc);
  for (int i = 0; i < nc; ++i) {
    int c = order[i];
    sp.object_of[i] = els[rep_el[c]].obj;
    sp.big[i] = per_object[els[rep_el[c]].obj] > 1 ? 1 : 0;
    sp.representative[i] = els[rep_el[c]].vec;
  }
  return sp;
}

int StructurePoset::points_of_object(int obj) const {
  int c = 0;
  for (int x : object_of)
    if (x == obj) ++c;
  return c;
}

std::string StructurePoset::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < poset.size(); ++i) {
    os << poset.label(i);
    if (big[i]) os << "*";
    std::vector<std::string> up;
    for (int j = 0; j < poset.size(); ++j)
      if (poset.lt(i, j)) {
        bool covering = true;
        for (int k = 0; k < poset.size(); ++k)
          if (poset.lt(i, k) && poset.lt(k, j)) covering = false;
        if (covering) up.push_back(poset.label(j));
      }
    if (!up.empty()) {
      os << " <";
      for (const auto& u : up) os << " " << u;
    }
    os << "\n";
  }
  return os.str();
}

// ---- numerical invariants --------------------------------------------------

int vectroid_dim(const Vectroid& v) { return v.max_object_dim(); }

int vectroid_rank(const Vectroid& v) {
  const Fp& F = v.field;
  int best = 0;
  for (int i = 0; i < v.n_objects(); ++i)
    for (int j = 0; j < v.n_objects(); ++j) {
      const auto& basis = v.hom_basis(i, j);
      if (basis.empty()) continue;
      size_t s = span_size_capped(F.p(), basis.size(), 1u << 16);
      if (s == SIZE_MAX || s * s > 50000000ull)
        throw ResourceLimit("vectroid_rank: hom-space enumeration bound exceeded");
      std::vector<Mat> elems;
      for_each_span_element(F, basis, [&](const Mat& m, const std::vector<uint32_t>&) {
        elems.push_back(m);
        return true;
      });
      std::vector<int> ranks(elems.size());
      for (size_t k = 0; k < elems.size(); ++k) ranks[k] = rank_of(F, elems[k]);
      for (size_t k = 0; k < elems.size(); ++k) {
        const Mat& phi = elems[k];
        if (phi.is_zero()) continue;
        if (i == j && is_invertible(F, phi)) continue;
        int r = ranks[k];
        if (r <= best) continue;
        bool decomposable = false;
        for (size_t t = 0; t < elems.size() && !decomposable; ++t) {
          if (ranks[t] >= r) continue;
          if (rank_of(F, mat_sub(F, phi, elems[t])) < r) decomposable = true;
        }
        if (!decomposable) best = r;
      }
    }
  return best;
}

bool is_linear(const Vectroid& v) {
  if (v.max_object_dim() != 1) return false;
  return structure_poset(v).poset.is_chain();
}

int linear_order(const Vectroid& v) {
  if (!is_linear(v)) throw NotApplicable("linear_order: vectroid is not linear");
  return v.n_objects();
}

bool is_halflinear(const Vectroid& v) {
  if (is_linear(v)) return false;
  if (vectroid_dim(v) > 2) return false;
  if (vectroid_rank(v) != 1) return false;
  StructurePoset sp = structure_poset(v);
  const Poset& P = sp.poset;
  for (int a = 0; a < P.size(); ++a) {
    int incomparable = 0;
    for (int b = 0; b < P.size(); ++b)
      if (a != b && !P.comparable(a, b)) ++incomparable;
    if (sp.big[a] && incomparable > 0) return false;
    if (!sp.big[a] && incomparable > 1) return false;
  }
  return true;
}

Vectroid vectroid_minus(const Vectroid& v) {
  if (!is_halflinear(v)) throw NotApplicable("minus: vectroid is not halflinear");
  StructurePoset sp = structure_poset(v);
  const Poset& P = sp.poset;
  std::set<int> drop;
  for (int a = 0; a < P.size(); ++a) {
    if (v.dim_of(sp.object_of[a]) != 1) continue;
    bool all = true;
    for (int b = 0; b < P.size() && all; ++b)
      if (a != b && !P.comparable(a, b)) all = false;
    if (all) drop.insert(sp.object_of[a]);
  }
  Vectroid r(v.field);
  std::vector<int> keep;
  for (int i = 0; i < v.n_objects(); ++i)
    if (!drop.count(i)) {
      keep.push_back(i);
      r.add_object(v.objects[i].label, v.objects[i].dim);
    }
  r.init_hom();
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = 0; b < keep.size(); ++b) r.hom[a][b] = v.hom[keep[a]][keep[b]];
  return r;
}

namespace {

bool structure_iso(const Vectroid& a, const Vectroid& b) {
  StructurePoset sa = structure_poset(a), sb = structure_poset(b);
  std::vector<int> ta(sa.poset.size()), tb(sb.poset.size());
  for (int i = 0; i < sa.poset.size(); ++i)
    ta[i] = sa.big[i] * 16 + a.dim_of(sa.object_of[i]);
  for (int i = 0; i < sb.poset.size(); ++i)
    tb[i] = sb.big[i] * 16 + b.dim_of(sb.object_of[i]);
  return poset_isomorphism(sa.poset, sb.poset, ta, tb).has_value();
}

}  // namespace

bool almost_equivalent(const Vectroid& v1, const Vectroid& v2) {
  Vectroid m1 = vectroid_minus(v1), m2 = vectroid_minus(v2);
  if (m1.n_objects() == 0 && m2.n_objects() == 0) return true;
  if (m1.n_objects() == 0 || m2.n_objects() == 0) return false;
  return structure_iso(m1, m2);
}

bool vectroids_isomorphic(const Vectroid& a, const Vectroid& b) {
  bool la = is_linear(a), lb = is_linear(b);
  if (la || lb) return la && lb && a.n_objects() == b.n_objects();
  if (!is_halflinear(a) || !is_halflinear(b))
    throw NotApplicable("vectroids_isomorphic: supported for linear and halflinear vectroids only");
  return structure_iso(a, b);
}

HalflinearSpec halflinear_spec_of(const Vectroid& v) {
  StructurePoset sp = structure_poset(v);
  HalflinearSpec spec;
  spec.poset = sp.poset;
  std::map<int, std::vector<int>> by_obj;
  for (int i = 0; i < sp.poset.size(); ++i) by_obj[sp.object_of[i]].push_back(i);
  for (auto& [obj, pts] : by_obj) spec.classes.push_back(pts);
  return spec;
}

namespace {

// Connected components under nonzero hom spaces (either direction).
std::vector<std::vector<int>> hom_components(const Vectroid& v) {
  int n = v.n_objects();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int c = static_cast<int>(out.size());
    std::vector<int> members{s};
    comp[s] = c;
    for (size_t h = 0; h < members.size(); ++h) {
      int a = members[h];
      for (int b = 0; b < n; ++b)
        if (comp[b] < 0 && (!v.hom[a][b].empty() || !v.hom[b][a].empty())) {
          comp[b] = c;
          members.push_back(b);
        }
    }
    out.push_back(std::move(members));
  }
  return out;
}

Vectroid sub_vectroid(const Vectroid& v, const std::vector<int>& keep) {
  Vectroid r(v.field);
  for (int i : keep) r.add_object(v.objects[i].label, v.objects[i].dim);
  r.init_hom();
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = 0; b < keep.size(); ++b) r.hom[a][b] = v.hom[keep[a]][keep[b]];
  return r;
}

}  // namespace

std::string vectroid_to_dsl(const Vectroid& v) {
  auto comps = hom_components(v);
  if (comps.size() > 1) {
    std::string s;
    for (size_t c = 0; c < comps.size(); ++c) {
      if (c) s += " + ";
      s += vectroid_to_dsl(sub_vectroid(v, comps[c]));
    }
    return s;
  }
  auto poset_body = [](const Poset& P, const std::string& extra) {
    std::ostringstream os;
    for (int i = 0; i < P.size(); ++i) {
      if (i) os << ", ";
      os << P.label(i);
    }
    std::vector<std::string> rels;
    for (int i = 0; i < P.size(); ++i)
      for (int j = 0; j < P.size(); ++j)
        if (P.lt(i, j)) {
          bool covering = true;
          for (int k = 0; k < P.size(); ++k)
            if (P.lt(i, k) && P.lt(k, j)) covering = false;
          if (covering) rels.push_back(P.label(i) + "<" + P.label(j));
        }
    if (!rels.empty()) {
      os << " ; rel: ";
      for (size_t k = 0; k < rels.size(); ++k) {
        if (k) os << ", ";
        os << rels[k];
      }
    }
    os << extra;
    return os.str();
  };

  if (is_linear(v)) {
    int n = v.n_objects();
    return n == 1 ? "k" : "k_" + std::to_string(n);
  }
  if (v.n_objects() == 1) {
    int n = v.dim_of(0);
    if (static_cast<int>(v.hom_basis(0, 0).size()) == n) {
      StructurePoset sp = structure_poset(v);
      if (sp.poset.is_chain() && sp.poset.size() == n) return "k^" + std::to_string(n);
    }
  }
  if (v.max_object_dim() == 1) {
    StructurePoset sp = structure_poset(v);
    return "kP{ " + poset_body(sp.poset, "") + " }";
  }
  bool hl = false;
  try {
    hl = is_halflinear(v);
  } catch (const ResourceLimit&) {
  }
  if (hl) {
    StructurePoset sp = structure_poset(v);
    std::string same;
    std::map<int, std::vector<std::string>> by_obj;
    for (int i = 0; i < sp.poset.size(); ++i)
      if (sp.big[i]) by_obj[sp.object_of[i]].push_back(sp.poset.label(i));
    for (auto& [obj, pts] : by_obj) {
      same += " ; same: {";
      for (size_t k = 0; k < pts.size(); ++k) {
        if (k) same += ",";
        same += pts[k];
      }
      same += "}";
    }
    return "half{ " + poset_body(sp.poset, same) + " }";
  }
  std::ostringstream os;
  os << "vectroid(" << v.n_objects() << " objects:";
  for (const auto& o : v.objects) os << " " << o.label << ":" << o.dim;
  os << ")";
  return os.str();
}

}  // namespace mqr
