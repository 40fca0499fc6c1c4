#include "mqr/rep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_set>

#include "mqr/errors.hpp"
#include "mqr/span.hpp"

namespace mqr {

bool DimVec::is_zero() const {
  for (const auto& m : mult)
    for (int x : m)
      if (x) return false;
  return true;
}

DimVec zero_dims(const MarkedQuiver& mq) {
  DimVec d;
  d.mult.resize(mq.quiver.n_vertices());
  for (int x = 0; x < mq.quiver.n_vertices(); ++x)
    d.mult[x].assign(mq.vectroid_at(x).n_objects(), 0);
  return d;
}

int total_dim(const MarkedQuiver& mq, const DimVec& d, int vertex) {
  const Vectroid& v = mq.vectroid_at(vertex);
  int t = 0;
  for (int a = 0; a < v.n_objects(); ++a) t += d.mult[vertex][a] * v.dim_of(a);
  return t;
}

int grand_total(const MarkedQuiver& mq, const DimVec& d) {
  int t = 0;
  for (int x = 0; x < mq.quiver.n_vertices(); ++x) t += total_dim(mq, d, x);
  return t;
}

uint64_t rep_space_dim(const MarkedQuiver& mq, const DimVec& d) {
  uint64_t s = 0;
  for (const auto& a : mq.quiver.arrows)
    s += static_cast<uint64_t>(total_dim(mq, d, a.src)) * total_dim(mq, d, a.dst);
  return s;
}

VertexLayout vertex_layout(const Vectroid& v, const std::vector<int>& mult) {
  VertexLayout l;
  l.object_offset.resize(v.n_objects());
  l.object_dim.resize(v.n_objects());
  int off = 0;
  for (int a = 0; a < v.n_objects(); ++a) {
    l.object_offset[a] = off;
    l.object_dim[a] = v.dim_of(a);
    off += mult[a] * v.dim_of(a);
  }
  l.total = off;
  return l;
}

std::vector<Mat> block_basis(const Vectroid& v, const std::vector<int>& m_src,
                             const std::vector<int>& m_dst) {
  VertexLayout ls = vertex_layout(v, m_src), ld = vertex_layout(v, m_dst);
  std::vector<Mat> basis;
  for (int a = 0; a < v.n_objects(); ++a)
    for (int i = 0; i < m_src[a]; ++i)
      for (int b = 0; b < v.n_objects(); ++b)
        for (int j = 0; j < m_dst[b]; ++j)
          for (const Mat& h : v.hom_basis(a, b)) {
            Mat m(ls.total, ld.total);
            for (int r = 0; r < v.dim_of(a); ++r)
              for (int c = 0; c < v.dim_of(b); ++c)
                m.at(ls.pos(a, i, r), ld.pos(b, j, c)) = h.at(r, c);
            basis.push_back(std::move(m));
          }
  return basis;
}

Rep zero_rep(const MarkedQuiver& mq) {
  Rep r;
  r.dims = zero_dims(mq);
  for (const auto& a : mq.quiver.arrows) {
    (void)a;
    r.arrows.emplace_back(0, 0);
  }
  return r;
}

Rep unit_rep(const MarkedQuiver& mq, int vertex, int object) {
  Rep r;
  r.dims = zero_dims(mq);
  r.dims.mult[vertex][object] = 1;
  for (const auto& a : mq.quiver.arrows)
    r.arrows.emplace_back(total_dim(mq, r.dims, a.src), total_dim(mq, r.dims, a.dst));
  return r;
}

Rep direct_sum(const MarkedQuiver& mq, const Rep& a, const Rep& b) {
  Rep r;
  r.dims = zero_dims(mq);
  int nv = mq.quiver.n_vertices();
  // Row index translation: copies of each object are the a-part copies
  // followed by the b-part copies.
  std::vector<std::vector<int>> map_a(nv), map_b(nv);
  for (int x = 0; x < nv; ++x) {
    const Vectroid& V = mq.vectroid_at(x);
    for (int t = 0; t < V.n_objects(); ++t)
      r.dims.mult[x][t] = a.dims.mult[x][t] + b.dims.mult[x][t];
    VertexLayout la = vertex_layout(V, a.dims.mult[x]);
    VertexLayout lb = vertex_layout(V, b.dims.mult[x]);
    VertexLayout lr = vertex_layout(V, r.dims.mult[x]);
    map_a[x].resize(la.total);
    map_b[x].resize(lb.total);
    for (int t = 0; t < V.n_objects(); ++t) {
      int d = V.dim_of(t);
      for (int c = 0; c < a.dims.mult[x][t]; ++c)
        for (int k = 0; k < d; ++k) map_a[x][la.pos(t, c, k)] = lr.pos(t, c, k);
      for (int c = 0; c < b.dims.mult[x][t]; ++c)
        for (int k = 0; k < d; ++k)
          map_b[x][lb.pos(t, c, k)] = lr.pos(t, a.dims.mult[x][t] + c, k);
    }
  }
  for (int ar = 0; ar < mq.quiver.n_arrows(); ++ar) {
    int sx = mq.quiver.arrows[ar].src, dy = mq.quiver.arrows[ar].dst;
    Mat m(total_dim(mq, r.dims, sx), total_dim(mq, r.dims, dy));
    const Mat& ma = a.arrows[ar];
    for (int i = 0; i < ma.rows; ++i)
      for (int j = 0; j < ma.cols; ++j) m.at(map_a[sx][i], map_a[dy][j]) = ma.at(i, j);
    const Mat& mb = b.arrows[ar];
    for (int i = 0; i < mb.rows; ++i)
      for (int j = 0; j < mb.cols; ++j) m.at(map_b[sx][i], map_b[dy][j]) = mb.at(i, j);
    r.arrows.push_back(std::move(m));
  }
  return r;
}

// ---- morphism spaces -------------------------------------------------------

MorphismBasis hom_space(const MarkedQuiver& mq, const Rep& u, const Rep& w) {
  const Fp& F = mq.field;
  int nv = mq.quiver.n_vertices();
  std::vector<std::vector<Mat>> vbasis(nv);
  std::vector<int> offset(nv + 1, 0);
  for (int x = 0; x < nv; ++x) {
    vbasis[x] = block_basis(mq.vectroid_at(x), u.dims.mult[x], w.dims.mult[x]);
    offset[x + 1] = offset[x] + static_cast<int>(vbasis[x].size());
  }
  int unknowns = offset[nv];

  int eq_cols = 0;
  for (const auto& a : mq.quiver.arrows)
    eq_cols += total_dim(mq, u.dims, a.src) * total_dim(mq, w.dims, a.dst);

  Mat eq(unknowns, eq_cols);
  for (int x = 0; x < nv; ++x) {
    for (size_t k = 0; k < vbasis[x].size(); ++k) {
      int row = offset[x] + static_cast<int>(k);
      int col0 = 0;
      for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
        const auto& a = mq.quiver.arrows[ai];
        int block = total_dim(mq, u.dims, a.src) * total_dim(mq, w.dims, a.dst);
        Mat contrib(total_dim(mq, u.dims, a.src), total_dim(mq, w.dims, a.dst));
        bool any = false;
        if (a.src == x) {
          contrib = mat_mul(F, vbasis[x][k], w.arrows[ai]);
          any = true;
        }
        if (a.dst == x) {
          Mat t = mat_mul(F, u.arrows[ai], vbasis[x][k]);
          contrib = any ? mat_sub(F, contrib, t) : mat_scale(F, F.p() - 1, t);
          any = true;
        }
        if (any)
          for (size_t t = 0; t < contrib.e.size(); ++t)
            eq.at(row, col0 + static_cast<int>(t)) = contrib.e[t];
        col0 += block;
      }
    }
  }

  Mat null = left_nullspace(F, eq);
  MorphismBasis mb;
  for (int r = 0; r < null.rows; ++r) {
    std::vector<Mat> f(nv);
    for (int x = 0; x < nv; ++x) {
      Mat m(total_dim(mq, u.dims, x), total_dim(mq, w.dims, x));
      for (size_t k = 0; k < vbasis[x].size(); ++k) {
        uint32_t c = null.at(r, offset[x] + static_cast<int>(k));
        if (!c) continue;
        for (size_t t = 0; t < m.e.size(); ++t)
          m.e[t] = F.add(m.e[t], F.mul(c, vbasis[x][k].e[t]));
      }
      f[x] = std::move(m);
    }
    mb.elems.push_back(std::move(f));
  }

  // Commutation is an invariant of the module; re-verify each element.
  for (const auto& f : mb.elems)
    for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
      const auto& a = mq.quiver.arrows[ai];
      if (mat_mul(F, f[a.src], w.arrows[ai]) != mat_mul(F, u.arrows[ai], f[a.dst]))
        throw Error("hom_space: solved element violates commutation (internal error)");
    }
  return mb;
}

namespace {

// Flatten a per-vertex morphism into one block-diagonal matrix; it is
// invertible (nilpotent) iff every component is.
Mat flatten_morphism(const std::vector<Mat>& f) {
  int rows = 0, cols = 0;
  for (const Mat& m : f) {
    rows += m.rows;
    cols += m.cols;
  }
  Mat big(rows, cols);
  int r0 = 0, c0 = 0;
  for (const Mat& m : f) {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) big.at(r0 + i, c0 + j) = m.at(i, j);
    r0 += m.rows;
    c0 += m.cols;
  }
  return big;
}

std::vector<Mat> unflatten_morphism(const Mat& big, const std::vector<Mat>& shape) {
  std::vector<Mat> f;
  int r0 = 0, c0 = 0;
  for (const Mat& s : shape) {
    Mat m(s.rows, s.cols);
    for (int i = 0; i < s.rows; ++i)
      for (int j = 0; j < s.cols; ++j) m.at(i, j) = big.at(r0 + i, c0 + j);
    r0 += s.rows;
    c0 += s.cols;
    f.push_back(std::move(m));
  }
  return f;
}

std::vector<Mat> morphism_shapes(const MarkedQuiver& mq, const Rep& u, const Rep& w) {
  std::vector<Mat> s;
  for (int x = 0; x < mq.quiver.n_vertices(); ++x)
    s.emplace_back(total_dim(mq, u.dims, x), total_dim(mq, w.dims, x));
  return s;
}

// Coordinates of m in the span of basis (both flattened to rows); empty
// optional when outside the span.
std::optional<std::vector<uint32_t>> coords_in_span(const Fp& F, const std::vector<Mat>& basis,
                                                    const Mat& m) {
  if (basis.empty()) return m.is_zero() ? std::make_optional(std::vector<uint32_t>{}) : std::nullopt;
  Mat fl(static_cast<int>(basis.size()), basis[0].rows * basis[0].cols);
  for (size_t k = 0; k < basis.size(); ++k)
    for (size_t t = 0; t < basis[k].e.size(); ++t)
      fl.at(static_cast<int>(k), static_cast<int>(t)) = basis[k].e[t];
  Mat row(1, m.rows * m.cols);
  for (size_t t = 0; t < m.e.size(); ++t) row.at(0, static_cast<int>(t)) = m.e[t];
  auto x = solve_left(F, fl, row);
  if (!x) return std::nullopt;
  std::vector<uint32_t> c(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) c[k] = x->at(0, static_cast<int>(k));
  return c;
}

}  // namespace

EndAlgebra end_algebra(const MarkedQuiver& mq, const Rep& u) {
  EndAlgebra ea;
  ea.basis = hom_space(mq, u, u);
  const Fp& F = mq.field;
  int d = ea.basis.dim();
  std::vector<Mat> flat;
  for (const auto& f : ea.basis.elems) flat.push_back(flatten_morphism(f));
  ea.table.assign(d, std::vector<std::vector<uint32_t>>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat prod = mat_mul(F, flat[i], flat[j]);
      auto c = coords_in_span(F, flat, prod);
      if (!c) throw Error("end_algebra: composition escapes the solved basis (internal error)");
      ea.table[i][j] = *c;
    }
  return ea;
}

// ---- indecomposability and isomorphism --------------------------------------

namespace {

// Sufficient decomposability test at an unmarked vertex x: a vector of U(x)
// annihilated by the outgoing arrows and not covered by the incoming images
// spans a direct summand concentrated at x. Returns the splitting idempotent.
std::optional<std::vector<Mat>> quick_split_witness(const MarkedQuiver& mq, const Rep& u) {
  const Fp& F = mq.field;
  if (grand_total(mq, u.dims) <= 1) return std::nullopt;
  for (int x = 0; x < mq.quiver.n_vertices(); ++x) {
    const Vectroid& V = mq.vectroid_at(x);
    if (V.n_objects() != 1 || V.dim_of(0) != 1) continue;  // structured vertex
    int d = total_dim(mq, u.dims, x);
    if (d == 0) continue;
    Mat out(d, 0), in(0, d);
    for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
      const auto& a = mq.quiver.arrows[ai];
      if (a.src == x) out = hstack(out, u.arrows[ai]);
      if (a.dst == x) in = vstack(in, u.arrows[ai]);
    }
    Mat kernel = left_nullspace(F, out);
    if (kernel.rows == 0) continue;
    Mat in_basis = row_space_basis(F, in);
    // A kernel vector outside the incoming row space?
    Mat v(1, d);
    bool found = false;
    for (int k = 0; k < kernel.rows && !found; ++k) {
      Mat cand(1, d);
      for (int j = 0; j < d; ++j) cand.at(0, j) = kernel.at(k, j);
      if (!in_row_space(F, in_basis, cand)) {
        v = cand;
        found = true;
      }
    }
    if (!found) continue;
    // Complement D of span(v) containing the incoming row space.
    Mat D = in_basis;
    for (int j = 0; j < d && D.rows < d - 1; ++j) {
      Mat e(1, d);
      e.at(0, j) = 1;
      Mat trial = vstack(vstack(D, e), v);
      if (rank_of(F, trial) == D.rows + 2) D = vstack(D, e);
    }
    Mat T = vstack(v, D);
    auto Ti = inverse(F, T);
    if (!Ti) continue;  // roundoff-free field: cannot happen, but stay safe
    Mat E1(d, d);
    E1.at(0, 0) = 1;
    Mat P = mat_mul(F, mat_mul(F, *Ti, E1), T);
    std::vector<Mat> idem;
    for (int y = 0; y < mq.quiver.n_vertices(); ++y) {
      int dy = total_dim(mq, u.dims, y);
      idem.push_back(y == x ? P : Mat(dy, dy));
    }
    return idem;
  }
  return std::nullopt;
}

}  // namespace

IndecResult is_indecomposable(const MarkedQuiver& mq, const Rep& u, const Limits& lim) {
  const Fp& F = mq.field;
  if (grand_total(mq, u.dims) == 0) return {false, true, std::nullopt};

  if (auto w = quick_split_witness(mq, u)) return {false, true, std::move(w)};

  MorphismBasis end = hom_space(mq, u, u);
  int d = end.dim();
  if (d == 1) return {true, true, std::nullopt};  // End = k . id

  std::vector<Mat> flat;
  for (const auto& f : end.elems) flat.push_back(flatten_morphism(f));
  auto shapes = morphism_shapes(mq, u, u);

  size_t count = span_size_capped(F.p(), static_cast<size_t>(d), lim.end_enum_cap);
  if (count != SIZE_MAX) {
    // Exact: End is local iff every element is nilpotent or invertible.
    IndecResult res{true, true, std::nullopt};
    for_each_span_element(F, flat, [&](const Mat& m, const std::vector<uint32_t>&) {
      if (!is_invertible(F, m) && !is_nilpotent(F, m)) {
        res.indecomposable = false;
        res.witness = unflatten_morphism(m, shapes);
        return false;
      }
      return true;
    });
    return res;
  }

  // Flagged fallback: scan basis elements and pairwise sums for a Fitting
  // splitting. Sound for decomposability; inconclusive otherwise.
  int n = 0;
  for (const Mat& s : shapes) n += s.rows;
  auto check = [&](const Mat& e) -> bool {
    Mat pw = mat_pow(F, e, static_cast<uint64_t>(n));
    return !pw.is_zero() && !is_invertible(F, pw);
  };
  for (int i = 0; i < d; ++i) {
    if (check(flat[i])) return {false, true, unflatten_morphism(flat[i], shapes)};
    for (int j = i + 1; j < d; ++j) {
      Mat s = mat_add(F, flat[i], flat[j]);
      if (check(s)) return {false, true, unflatten_morphism(s, shapes)};
    }
  }
  return {true, false, std::nullopt};
}

IsoResult are_isomorphic(const MarkedQuiver& mq, const Rep& u, const Rep& w, const Limits& lim) {
  const Fp& F = mq.field;
  if (u.dims != w.dims) return {false, true, std::nullopt};
  if (grand_total(mq, u.dims) == 0) return {true, true, std::nullopt};
  if (u.arrows == w.arrows) {
    std::vector<Mat> id;
    for (int x = 0; x < mq.quiver.n_vertices(); ++x)
      id.push_back(Mat::identity(total_dim(mq, u.dims, x)));
    return {true, true, id};
  }

  MorphismBasis hom = hom_space(mq, u, w);
  int d = hom.dim();
  if (d == 0) return {false, true, std::nullopt};
  std::vector<Mat> flat;
  for (const auto& f : hom.elems) flat.push_back(flatten_morphism(f));
  auto shapes = morphism_shapes(mq, u, w);

  size_t count = span_size_capped(F.p(), static_cast<size_t>(d), lim.end_enum_cap);
  if (count != SIZE_MAX) {
    IsoResult res{false, true, std::nullopt};
    for_each_span_element(F, flat, [&](const Mat& m, const std::vector<uint32_t>&) {
      if (is_invertible(F, m)) {
        res.isomorphic = true;
        res.witness = unflatten_morphism(m, shapes);
        return false;
      }
      return true;
    });
    return res;
  }

  // Beyond the cap: decompose both sides and match summands pairwise.
  Decomposition du = decompose(mq, u, lim), dw = decompose(mq, w, lim);
  bool exact = du.exact && dw.exact;
  if (du.summands.size() != dw.summands.size()) return {false, exact, std::nullopt};
  std::vector<uint8_t> used(dw.summands.size(), 0);
  for (const Rep& a : du.summands) {
    bool found = false;
    for (size_t j = 0; j < dw.summands.size() && !found; ++j) {
      if (used[j]) continue;
      IsoResult r = are_isomorphic(mq, a, dw.summands[j], lim);
      exact = exact && r.exact;
      if (r.isomorphic) {
        used[j] = 1;
        found = true;
      }
    }
    if (!found) return {false, exact, std::nullopt};
  }
  return {true, exact, std::nullopt};
}

// ---- idempotent splitting ----------------------------------------------------

namespace {

// Radical basis of a small local endomorphism algebra given by a hom basis:
// the span of its nilpotent elements.
std::vector<Mat> radical_basis(const Fp& F, const std::vector<Mat>& end_basis) {
  std::vector<Mat> nilpotents;
  size_t c = span_size_capped(F.p(), end_basis.size(), 1u << 16);
  if (c == SIZE_MAX) throw ResourceLimit("radical_basis: endomorphism algebra too large");
  for_each_span_element(F, end_basis, [&](const Mat& m, const std::vector<uint32_t>&) {
    if (is_nilpotent(F, m)) nilpotents.push_back(m);
    return true;
  });
  // Reduce to an echelon basis.
  if (nilpotents.empty()) return {};
  Mat fl(static_cast<int>(nilpotents.size()), nilpotents[0].rows * nilpotents[0].cols);
  for (size_t k = 0; k < nilpotents.size(); ++k)
    for (size_t t = 0; t < nilpotents[k].e.size(); ++t)
      fl.at(static_cast<int>(k), static_cast<int>(t)) = nilpotents[k].e[t];
  Mat rb = row_space_basis(F, fl);
  std::vector<Mat> out;
  for (int i = 0; i < rb.rows; ++i) {
    Mat m(nilpotents[0].rows, nilpotents[0].cols);
    for (size_t t = 0; t < m.e.size(); ++t) m.e[t] = rb.at(i, static_cast<int>(t));
    out.push_back(std::move(m));
  }
  return out;
}

// lambda such that e - lambda * id lies in the radical; requires the residue
// field of End(object) to be the prime field itself.
uint32_t residue_coefficient(const Fp& F, const Mat& id, const std::vector<Mat>& rad,
                             const Mat& e, int end_dim) {
  if (1 + static_cast<int>(rad.size()) != end_dim)
    throw NotApplicable("idempotent splitting: object residue field is a proper extension");
  std::vector<Mat> basis;
  basis.push_back(id);
  for (const Mat& r : rad) basis.push_back(r);
  auto c = coords_in_span(F, basis, e);
  if (!c) throw Error("residue_coefficient: element outside End span (internal error)");
  return (*c)[0];
}

}  // namespace

std::pair<Rep, Rep> split_by_idempotent(const MarkedQuiver& mq, const Rep& u,
                                        const std::vector<Mat>& idem) {
  const Fp& F = mq.field;
  int nv = mq.quiver.n_vertices();

  // Per vertex: conjugate the idempotent to the standard diagonal one.
  std::vector<Mat> s(nv), s_inv(nv);
  std::vector<std::vector<int>> keep_mult(nv), drop_mult(nv);
  for (int x = 0; x < nv; ++x) {
    const Vectroid& V = mq.vectroid_at(x);
    const std::vector<int>& mult = u.dims.mult[x];
    VertexLayout L = vertex_layout(V, mult);
    const Mat& eps = idem[x];

    // Step 1: per object, the matrix of identity-residues of the copy blocks
    // is an idempotent over F_p; diagonalize it by a scalar-block unit.
    Mat u1 = Mat::identity(L.total), u1i = Mat::identity(L.total);
    keep_mult[x].assign(V.n_objects(), 0);
    drop_mult[x].assign(V.n_objects(), 0);
    for (int a = 0; a < V.n_objects(); ++a) {
      int m = mult[a], da = V.dim_of(a);
      if (m == 0) continue;
      const auto& endb = V.hom_basis(a, a);
      std::vector<Mat> rad = radical_basis(F, endb);
      Mat id = Mat::identity(da);
      Mat pbar(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          Mat blockm(da, da);
          for (int r = 0; r < da; ++r)
            for (int c = 0; c < da; ++c)
              blockm.at(r, c) = eps.at(L.pos(a, i, r), L.pos(a, j, c));
          pbar.at(i, j) = residue_coefficient(F, id, rad, blockm, static_cast<int>(endb.size()));
        }
      // Rows: image basis of pbar then kernel basis; pbar acts on rows.
      Mat img = row_space_basis(F, pbar);
      Mat ker = left_nullspace(F, pbar);  // rows v with v * pbar = 0
      keep_mult[x][a] = img.rows;
      drop_mult[x][a] = ker.rows;
      Mat t = vstack(img, ker);  // m x m, invertible
      auto ti = inverse(F, t);
      if (!ti) throw Error("split_by_idempotent: basis change not invertible (internal error)");
      // Scalar-block lift: t acts on the copies of object a. New basis rows
      // are combinations of old copies; the conjugation below uses u1 = t^-1
      // on the left so that u1^-1 eps u1 has the standard residue.
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          for (int r = 0; r < da; ++r) {
            u1.at(L.pos(a, i, r), L.pos(a, j, r)) = ti->at(i, j);
            u1i.at(L.pos(a, i, r), L.pos(a, j, r)) = t.at(i, j);
          }
        }
    }
    Mat eps1 = mat_mul(F, mat_mul(F, u1i, eps), u1);

    // Step 2: the standard idempotent with the same residue.
    Mat estd(L.total, L.total);
    for (int a = 0; a < V.n_objects(); ++a)
      for (int i = 0; i < keep_mult[x][a]; ++i)
        for (int r = 0; r < V.dim_of(a); ++r) {
          int ppos = L.pos(a, i, r);
          estd.at(ppos, ppos) = 1;
        }

    // Step 3: idempotent-correction unit w = eps1*estd + (1-eps1)(1-estd);
    // then w^-1 eps1 w = estd.
    Mat I = Mat::identity(L.total);
    Mat w = mat_add(F, mat_mul(F, eps1, estd),
                    mat_mul(F, mat_sub(F, I, eps1), mat_sub(F, I, estd)));
    auto wi = inverse(F, w);
    if (!wi) throw Error("split_by_idempotent: correction unit is singular (internal error)");
    s[x] = mat_mul(F, u1, w);
    auto si = inverse(F, s[x]);
    s_inv[x] = *si;
  }

  // Conjugated representation W(alpha) = s_x^-1 U(alpha) s_y decomposes along
  // the standard idempotent: rows/columns of kept copies versus the rest.
  Rep keep, drop;
  keep.dims.mult = keep_mult;
  drop.dims.mult = drop_mult;
  std::vector<std::vector<int>> kmap(nv), dmap(nv);
  for (int x = 0; x < nv; ++x) {
    const Vectroid& V = mq.vectroid_at(x);
    VertexLayout L = vertex_layout(V, u.dims.mult[x]);
    VertexLayout Lk = vertex_layout(V, keep_mult[x]);
    VertexLayout Ld = vertex_layout(V, drop_mult[x]);
    kmap[x].assign(L.total, -1);
    dmap[x].assign(L.total, -1);
    for (int a = 0; a < V.n_objects(); ++a) {
      for (int i = 0; i < keep_mult[x][a]; ++i)
        for (int r = 0; r < V.dim_of(a); ++r) kmap[x][L.pos(a, i, r)] = Lk.pos(a, i, r);
      for (int i = 0; i < drop_mult[x][a]; ++i)
        for (int r = 0; r < V.dim_of(a); ++r)
          dmap[x][L.pos(a, keep_mult[x][a] + i, r)] = Ld.pos(a, i, r);
    }
  }
  for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
    const auto& a = mq.quiver.arrows[ai];
    Mat m = mat_mul(F, mat_mul(F, s_inv[a.src], u.arrows[ai]), s[a.dst]);
    Mat mk(total_dim(mq, keep.dims, a.src), total_dim(mq, keep.dims, a.dst));
    Mat md(total_dim(mq, drop.dims, a.src), total_dim(mq, drop.dims, a.dst));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) {
        uint32_t vval = m.at(i, j);
        int ki = kmap[a.src][i], kj = kmap[a.dst][j];
        int di = dmap[a.src][i], dj = dmap[a.dst][j];
        if (ki >= 0 && kj >= 0) mk.at(ki, kj) = vval;
        else if (di >= 0 && dj >= 0) md.at(di, dj) = vval;
        else if (vval != 0)
          throw Error("split_by_idempotent: conjugated matrix is not block diagonal");
      }
    keep.arrows.push_back(std::move(mk));
    drop.arrows.push_back(std::move(md));
  }
  return {keep, drop};
}

namespace {

// Power the element to an idempotent (finite algebra: the power sequence is
// eventually periodic and contains one).
std::optional<std::vector<Mat>> idempotent_power(const Fp& F, const std::vector<Mat>& e) {
  Mat big = flatten_morphism(e);
  std::vector<Mat> powers{big};
  for (int step = 0; step < 4096; ++step) {
    Mat next = mat_mul(F, powers.back(), big);
    for (size_t i = 0; i < powers.size(); ++i)
      if (powers[i] == next) {
        size_t period = powers.size() - i;
        size_t start = i + 1;
        size_t m = period;
        while (m < start) m += period;
        Mat idem = powers[m - 1];
        std::vector<Mat> shapes;
        for (const Mat& c : e) shapes.emplace_back(c.rows, c.cols);
        return unflatten_morphism(idem, shapes);
      }
    powers.push_back(std::move(next));
  }
  return std::nullopt;
}

}  // namespace

Decomposition decompose(const MarkedQuiver& mq, const Rep& u, const Limits& lim) {
  Decomposition out;
  if (grand_total(mq, u.dims) == 0) return out;
  IndecResult ir = is_indecomposable(mq, u, lim);
  if (ir.indecomposable) {
    out.summands.push_back(u);
    out.exact = ir.exact;
    return out;
  }
  if (!ir.witness) {
    out.summands.push_back(u);
    out.exact = false;
    return out;
  }
  auto idem = idempotent_power(mq.field, *ir.witness);
  if (!idem) {
    out.summands.push_back(u);
    out.exact = false;
    return out;
  }
  std::pair<Rep, Rep> parts = split_by_idempotent(mq, u, *idem);
  for (const Rep* part : {&parts.first, &parts.second}) {
    Decomposition sub = decompose(mq, *part, lim);
    out.exact = out.exact && sub.exact;
    for (auto& s : sub.summands) out.summands.push_back(std::move(s));
  }
  std::sort(out.summands.begin(), out.summands.end());
  return out;
}

// ---- enumeration -------------------------------------------------------------

namespace {

std::string rep_key(const Rep& r) {
  std::string s;
  for (const Mat& m : r.arrows) s += mat_key(m);
  return s;
}

struct UnitGroup {
  std::vector<Mat> elements;
  std::vector<Mat> inverses;
};

// Units of the structured endomorphism algebra at one vertex; nothing when
// the span is larger than the cap.
std::optional<UnitGroup> unit_group(const Fp& F, const Vectroid& V, const std::vector<int>& mult,
                                    uint64_t cap) {
  std::vector<Mat> basis = block_basis(V, mult, mult);
  if (span_size_capped(F.p(), basis.size(), cap) == SIZE_MAX) return std::nullopt;
  UnitGroup g;
  for_each_span_element(F, basis, [&](const Mat& m, const std::vector<uint32_t>&) {
    auto inv = inverse(F, m);
    if (inv) {
      g.elements.push_back(m);
      g.inverses.push_back(*inv);
    }
    return true;
  });
  return g;
}

}  // namespace

std::vector<std::vector<int>> mult_vectors_up_to(const Vectroid& v, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(v.n_objects(), 0);
  std::function<void(int, int)> go = [&](int idx, int remaining) {
    if (idx == v.n_objects()) {
      out.push_back(cur);
      return;
    }
    int d = v.dim_of(idx);
    for (int c = 0; c * d <= remaining; ++c) {
      cur[idx] = c;
      go(idx + 1, remaining - c * d);
    }
    cur[idx] = 0;
  };
  go(0, cap);
  return out;
}

std::vector<Rep> enumerate_indecomposables(const MarkedQuiver& mq, int max_total_dim,
                                           const Limits& lim) {
  return enumerate_indecomposables(
      mq, std::vector<int>(mq.quiver.n_vertices(), max_total_dim), lim);
}

std::vector<Rep> enumerate_indecomposables(const MarkedQuiver& mq,
                                           const std::vector<int>& per_vertex_bounds,
                                           const Limits& lim) {
  int nv = mq.quiver.n_vertices();
  std::vector<std::vector<std::vector<int>>> per_vertex;
  for (int x = 0; x < nv; ++x)
    per_vertex.push_back(mult_vectors_up_to(mq.vectroid_at(x), per_vertex_bounds[x]));

  std::vector<DimVec> all_dims;
  std::vector<int> idx(nv, 0);
  while (true) {
    DimVec d;
    for (int x = 0; x < nv; ++x) d.mult.push_back(per_vertex[x][idx[x]]);
    if (!d.is_zero()) all_dims.push_back(std::move(d));
    int k = nv - 1;
    while (k >= 0) {
      if (++idx[k] < static_cast<int>(per_vertex[k].size())) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return enumerate_indecomposables_at(mq, std::move(all_dims), lim);
}

std::vector<Rep> enumerate_indecomposables_at(const MarkedQuiver& mq, std::vector<DimVec> all_dims,
                                              const Limits& lim) {
  const Fp& F = mq.field;
  int nv = mq.quiver.n_vertices();
  std::sort(all_dims.begin(), all_dims.end(), [&](const DimVec& a, const DimVec& b) {
    int ga = grand_total(mq, a), gb = grand_total(mq, b);
    if (ga != gb) return ga < gb;
    return a < b;
  });
  all_dims.erase(std::unique(all_dims.begin(), all_dims.end()), all_dims.end());
  all_dims.erase(std::remove_if(all_dims.begin(), all_dims.end(),
                                [](const DimVec& d) { return d.is_zero(); }),
                 all_dims.end());

  std::vector<Rep> result;
  for (const DimVec& dims : all_dims) {
    uint64_t s = rep_space_dim(mq, dims);
    size_t tuples = span_size_capped(F.p(), static_cast<size_t>(s), lim.tuple_cap);
    if (tuples == SIZE_MAX)
      throw ResourceLimit("enumerate_indecomposables: search space too large at a dims point");

    // Arrow matrix shapes for this dims.
    std::vector<Mat> shape;
    for (const auto& a : mq.quiver.arrows)
      shape.emplace_back(total_dim(mq, dims, a.src), total_dim(mq, dims, a.dst));

    // Unit groups per vertex, for orbit filling. Orbit mode pays off when
    // filling the orbits costs no more than a few passes over the tuple
    // space (the fill work is roughly classes x group order).
    uint64_t group_order = 1;
    std::vector<UnitGroup> groups;
    bool orbit_mode = true;
    uint64_t orbit_budget = std::min<uint64_t>(lim.orbit_group_cap, 8u * tuples + 1024);
    for (int x = 0; x < nv; ++x) {
      auto g = unit_group(F, mq.vectroid_at(x), dims.mult[x], lim.orbit_group_cap);
      if (!g) {
        orbit_mode = false;
        break;
      }
      group_order *= g->elements.size();
      if (group_order > orbit_budget) {
        orbit_mode = false;
        break;
      }
      groups.push_back(std::move(*g));
    }

    std::vector<Rep> found;
    Rep cur;
    cur.dims = dims;
    cur.arrows = shape;

    if (orbit_mode) {
      std::unordered_set<std::string> seen;
      // Iterate tuples in lexicographic order via an odometer over entries.
      std::vector<uint32_t*> slots;
      for (Mat& m : cur.arrows)
        for (auto& entry : m.e) slots.push_back(&entry);
      bool done = false;
      while (!done) {
        std::string key = rep_key(cur);
        if (!seen.count(key)) {
          // First tuple of a fresh orbit: lexicographically least, canonical.
          IndecResult ir = is_indecomposable(mq, cur, lim);
          if (ir.indecomposable) found.push_back(cur);
          // Fill the orbit.
          std::vector<size_t> gi(nv, 0);
          while (true) {
            Rep tr;
            tr.dims = dims;
            for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
              const auto& a = mq.quiver.arrows[ai];
              tr.arrows.push_back(mat_mul(F, mat_mul(F, groups[a.src].inverses[gi[a.src]],
                                                     cur.arrows[ai]),
                                          groups[a.dst].elements[gi[a.dst]]));
            }
            seen.insert(rep_key(tr));
            int k = nv - 1;
            while (k >= 0) {
              if (++gi[k] < groups[k].elements.size()) break;
              gi[k] = 0;
              --k;
            }
            if (k < 0) break;
          }
        }
        // Next tuple.
        size_t k = slots.size();
        done = true;
        while (k > 0) {
          --k;
          if (*slots[k] + 1 < F.p()) {
            *slots[k] += 1;
            done = false;
            break;
          }
          *slots[k] = 0;
        }
        if (slots.empty()) break;
      }
    } else {
      // First-seen mode: isomorphism tests against retained representatives,
      // pre-filtered by isomorphism invariants: the arrow ranks always, the
      // endomorphism space dimension only when the ranks collide.
      auto ranks_of = [&](const Rep& r) {
        std::vector<int> f;
        for (const Mat& m : r.arrows) f.push_back(rank_of(F, m));
        return f;
      };
      std::vector<std::vector<int>> prints;
      std::vector<int> end_dims;
      while (true) {
        // Tuples split by the cheap kernel test are decomposable and never
        // retained, so they need no isomorphism comparisons at all.
        if (!quick_split_witness(mq, cur)) {
          std::vector<int> rk = ranks_of(cur);
          bool fresh = true;
          int cur_end = -1;
          for (size_t i = 0; i < found.size() && fresh; ++i) {
            if (prints[i] != rk) continue;
            if (cur_end < 0) cur_end = hom_space(mq, cur, cur).dim();
            if (end_dims[i] != cur_end) continue;
            if (are_isomorphic(mq, cur, found[i], lim).isomorphic) fresh = false;
          }
          if (fresh && is_indecomposable(mq, cur, lim).indecomposable) {
            found.push_back(cur);
            prints.push_back(rk);
            end_dims.push_back(cur_end >= 0 ? cur_end : hom_space(mq, cur, cur).dim());
          }
        }
        std::vector<uint32_t*> slots;
        for (Mat& m : cur.arrows)
          for (auto& entry : m.e) slots.push_back(&entry);
        size_t k = slots.size();
        bool wrapped = true;
        while (k > 0) {
          --k;
          if (*slots[k] + 1 < F.p()) {
            *slots[k] += 1;
            wrapped = false;
            break;
          }
          *slots[k] = 0;
        }
        if (wrapped) break;
      }
    }
    for (Rep& r : found) result.push_back(std::move(r));
  }
  return result;
}

MarkedQuiver with_field(const MarkedQuiver& mq, uint32_t p) {
  Fp F(p);
  std::vector<Vectroid> marking;
  for (const Vectroid& v : mq.marking) {
    Vectroid w(F);
    for (const auto& o : v.objects) w.add_object(o.label, o.dim);
    w.init_hom();
    for (int i = 0; i < v.n_objects(); ++i)
      for (int j = 0; j < v.n_objects(); ++j)
        for (const Mat& m : v.hom_basis(i, j)) {
          for (uint32_t x : m.e)
            if (x >= p)
              throw ValidationError("with_field: vectroid entry not representable mod new prime");
          w.hom[i][j].push_back(m);
        }
    marking.push_back(std::move(w));
  }
  return MarkedQuiver(mq.quiver, std::move(marking), F);
}

// ---- serialization ------------------------------------------------------------

std::string serialize_rep(const MarkedQuiver& mq, const Rep& r) {
  std::ostringstream os;
  os << "dims\n";
  for (int x = 0; x < mq.quiver.n_vertices(); ++x) {
    os << mq.quiver.vertices[x];
    for (int c : r.dims.mult[x]) os << ' ' << c;
    os << '\n';
  }
  for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
    const Mat& m = r.arrows[ai];
    os << "arrow " << mq.quiver.arrows[ai].id << ' ' << m.rows << ' ' << m.cols << '\n';
    for (int i = 0; i < m.rows; ++i) {
      for (int j = 0; j < m.cols; ++j) {
        if (j) os << ' ';
        os << m.at(i, j);
      }
      os << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

Rep parse_rep(const MarkedQuiver& mq, const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  if (!(is >> tok) || tok != "dims") throw ParseError("rep: expected 'dims'");
  Rep r;
  r.dims = zero_dims(mq);
  for (int x = 0; x < mq.quiver.n_vertices(); ++x) {
    std::string label;
    if (!(is >> label)) throw ParseError("rep: missing dims line");
    int v = mq.quiver.vertex_index(label);
    for (auto& c : r.dims.mult[v])
      if (!(is >> c)) throw ParseError("rep: bad multiplicity");
  }
  r.arrows.resize(mq.quiver.n_arrows());
  for (int k = 0; k < mq.quiver.n_arrows(); ++k) {
    std::string id;
    int rows, cols;
    if (!(is >> tok) || tok != "arrow" || !(is >> id >> rows >> cols))
      throw ParseError("rep: expected arrow block");
    int ai = mq.quiver.arrow_index(id);
    Mat m(rows, cols);
    for (auto& entry : m.e) {
      long long v;
      if (!(is >> v)) throw ParseError("rep: bad matrix entry");
      entry = mq.field.reduce(v);
    }
    r.arrows[ai] = std::move(m);
  }
  if (!(is >> tok) || tok != "end") throw ParseError("rep: expected 'end'");
  for (int ai = 0; ai < mq.quiver.n_arrows(); ++ai) {
    const auto& a = mq.quiver.arrows[ai];
    if (r.arrows[ai].rows != total_dim(mq, r.dims, a.src) ||
        r.arrows[ai].cols != total_dim(mq, r.dims, a.dst))
      throw ValidationError("rep: matrix shape does not match dims");
  }
  return r;
}

}  // namespace mqr
