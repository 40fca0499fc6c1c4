#include "mqr/count.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "mqr/errors.hpp"
#include "mqr/span.hpp"

namespace mqr {

namespace {

// All counting caches (type registry, factorization memos, unit-group
// histograms) live behind this lock; counting is serialized but remains
// safe to call from concurrent tasks.
std::mutex& count_mutex() {
  static std::mutex m;
  return m;
}

// ---- polynomials over F_p (coefficients low to high, normalized) -----------

using Poly = std::vector<uint32_t>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_mul(const Fp& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  return c;
}

// Remainder of a modulo monic b.
Poly poly_mod(const Fp& F, Poly a, const Poly& b) {
  poly_trim(a);
  while (poly_deg(a) >= poly_deg(b)) {
    uint32_t lead = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(lead, b[i]));
    poly_trim(a);
  }
  return a;
}

// Quotient of a by monic b, assuming exact division.
Poly poly_div_exact(const Fp& F, Poly a, const Poly& b) {
  poly_trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (poly_deg(a) >= poly_deg(b)) {
    uint32_t lead = a.back();
    size_t shift = a.size() - b.size();
    q[shift] = lead;
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(lead, b[i]));
    poly_trim(a);
  }
  if (!a.empty()) throw Error("poly_div_exact: division not exact");
  return q;
}

// Monic irreducibles of each degree, in lexicographic coefficient order.
const std::vector<Poly>& irreducibles_up_to(uint32_t p, int max_deg) {
  static std::map<std::pair<uint32_t, int>, std::vector<Poly>> cache;
  auto key = std::make_pair(p, max_deg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Fp F(p);
  std::vector<Poly> irr;
  for (int d = 1; d <= max_deg; ++d) {
    std::vector<uint32_t> low(d, 0);
    while (true) {
      Poly cand(low.begin(), low.end());
      cand.push_back(1);  // monic
      bool reducible = false;
      for (const Poly& f : irr) {
        if (poly_deg(f) > d / 2) break;
        if (poly_mod(F, cand, f).empty()) {
          reducible = true;
          break;
        }
      }
      if (!reducible && d >= 1) {
        if (d == 1 || cand[0] != 0)  // divisible by x iff constant term 0
          irr.push_back(cand);
      }
      int k = d - 1;
      while (k >= 0) {
        if (low[k] + 1 < p) {
          ++low[k];
          break;
        }
        low[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  std::sort(irr.begin(), irr.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return cache.emplace(key, std::move(irr)).first->second;
}

// Gaussian determinant of the principal minor of a on the index subset.
uint32_t principal_minor(const Fp& F, const Mat& a, const std::vector<int>& subset) {
  int k = static_cast<int>(subset.size());
  Mat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m.at(i, j) = a.at(subset[i], subset[j]);
  uint32_t det = 1;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (m.at(r, col)) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j2 = 0; j2 < k; ++j2) std::swap(m.at(piv, j2), m.at(col, j2));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(col, col));
    uint32_t inv = F.inv(m.at(col, col));
    for (int r = col + 1; r < k; ++r) {
      uint32_t f = F.mul(inv, m.at(r, col));
      if (!f) continue;
      for (int j2 = col; j2 < k; ++j2) m.at(r, j2) = F.sub(m.at(r, j2), F.mul(f, m.at(col, j2)));
    }
  }
  return det;
}

// det(xI - A) via sums of principal minors; coefficient of x^(n-k) is
// (-1)^k E_k. Hand-rolled for n <= 4 (the similarity-typing hot path).
Poly char_poly(const Fp& F, const Mat& a) {
  int n = a.rows;
  Poly c(n + 1, 0);
  c[n] = 1;
  auto A = [&](int i, int j) { return a.at(i, j); };
  auto mul = [&](uint32_t x, uint32_t y) { return F.mul(x, y); };
  auto m2 = [&](int i, int j) {  // 2x2 principal minor on {i, j}
    return F.sub(mul(A(i, i), A(j, j)), mul(A(i, j), A(j, i)));
  };
  auto m3 = [&](int i, int j, int k) {
    uint32_t s = mul(A(i, i), F.sub(mul(A(j, j), A(k, k)), mul(A(j, k), A(k, j))));
    s = F.sub(s, mul(A(i, j), F.sub(mul(A(j, i), A(k, k)), mul(A(j, k), A(k, i)))));
    s = F.add(s, mul(A(i, k), F.sub(mul(A(j, i), A(k, j)), mul(A(j, j), A(k, i)))));
    return s;
  };
  if (n <= 4) {
    uint32_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
    for (int i = 0; i < n; ++i) e1 = F.add(e1, A(i, i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e2 = F.add(e2, m2(i, j));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) e3 = F.add(e3, m3(i, j, k));
    if (n == 4) e4 = principal_minor(F, a, {0, 1, 2, 3});
    uint32_t es[5] = {1, e1, e2, e3, e4};
    for (int k = 1; k <= n; ++k) c[n - k] = (k % 2 == 1) ? F.neg(es[k]) : es[k];
    return c;
  }
  // General case: iterate subsets per size (bitmask order, deterministic).
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    int k = static_cast<int>(subset.size());
    uint32_t det = principal_minor(F, a, subset);
    uint32_t term = (k % 2 == 1) ? F.neg(det) : det;
    c[n - k] = F.add(c[n - k], term);
  }
  return c;
}

uint64_t poly_code(uint32_t p, const Poly& f) {
  uint64_t code = 1;  // leading marker keeps degrees distinct
  for (size_t i = f.size(); i-- > 0;) code = code * p + f[i];
  return code;
}

Mat eval_poly_at(const Fp& F, const Poly& f, const Mat& a) {
  int n = a.rows;
  Mat r(n, n);
  for (size_t i = f.size(); i-- > 0;) {
    r = mat_mul(F, r, a);
    if (f[i])
      for (int d = 0; d < n; ++d) r.at(d, d) = F.add(r.at(d, d), f[i]);
  }
  return r;
}

// ---- similarity types --------------------------------------------------------

struct SimType {
  // sorted by poly code: (irreducible, partition sorted descending)
  std::vector<std::pair<Poly, std::vector<int>>> factors;
};

struct TypeRegistry {
  std::unordered_map<std::string, int> ids;
  std::vector<SimType> types;
  std::map<std::pair<int, int>, int> c_memo;
  // char-poly code -> type id for squarefree polynomials, -1 for the rest
  std::unordered_map<uint64_t, int> squarefree_memo;

  int intern(const SimType& t, const std::string& key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(types.size());
    ids.emplace(key, id);
    types.push_back(t);
    return id;
  }
};

TypeRegistry& registry_for(uint32_t p) {
  static std::map<uint32_t, TypeRegistry> regs;
  return regs[p];
}

std::string sim_key(uint32_t p, const SimType& t) {
  std::string s;
  for (const auto& [f, parts] : t.factors) {
    s += std::to_string(poly_code(p, f));
    s += '[';
    for (int x : parts) {
      s += std::to_string(x);
      s += ',';
    }
    s += ']';
  }
  return s;
}

// Factorization of a monic polynomial, memoized by its code.
const std::vector<std::pair<Poly, int>>& factor_poly(const Fp& F, const Poly& f) {
  static std::map<std::pair<uint32_t, uint64_t>, std::vector<std::pair<Poly, int>>> cache;
  auto key = std::make_pair(F.p(), poly_code(F.p(), f));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<Poly, int>> out;
  Poly rest = f;
  for (const Poly& g : irreducibles_up_to(F.p(), poly_deg(f))) {
    if (poly_deg(rest) < poly_deg(g)) break;
    int mult = 0;
    while (poly_deg(rest) >= poly_deg(g) && poly_mod(F, rest, g).empty()) {
      rest = poly_div_exact(F, rest, g);
      ++mult;
    }
    if (mult) out.emplace_back(g, mult);
    if (poly_deg(rest) <= 0) break;
  }
  if (poly_deg(rest) > 0) throw Error("factor_poly: leftover factor (internal error)");
  return cache.emplace(key, std::move(out)).first->second;
}

int similarity_type_id(const Fp& F, const Mat& a, bool& invertible) {
  TypeRegistry& reg = registry_for(F.p());
  int n = a.rows;
  if (n == 0) {
    invertible = true;
    SimType t;
    return reg.intern(t, "");
  }
  Poly cp = char_poly(F, a);
  invertible = cp[0] != 0;  // det(-A) = constant coefficient
  if (!invertible) return -1;
  uint64_t code = poly_code(F.p(), cp);
  auto mit = reg.squarefree_memo.find(code);
  if (mit != reg.squarefree_memo.end() && mit->second >= 0) return mit->second;
  bool squarefree = true;
  SimType t;
  for (const auto& [f, mult] : factor_poly(F, cp)) {
    if (mult > 1) squarefree = false;
  }
  if (mit == reg.squarefree_memo.end() && squarefree) {
    for (const auto& [f, mult] : factor_poly(F, cp)) t.factors.emplace_back(f, std::vector<int>{1});
    std::sort(t.factors.begin(), t.factors.end(), [&](const auto& x, const auto& y) {
      return poly_code(F.p(), x.first) < poly_code(F.p(), y.first);
    });
    int id = reg.intern(t, sim_key(F.p(), t));
    reg.squarefree_memo.emplace(code, id);
    return id;
  }
  if (mit == reg.squarefree_memo.end()) reg.squarefree_memo.emplace(code, -1);
  t.factors.clear();
  for (const auto& [f, mult] : factor_poly(F, cp)) {
    std::vector<int> parts;
    if (mult == 1) {
      parts = {1};
    } else {
      // nullities of f(A)^j determine the partition
      int df = poly_deg(f);
      std::vector<int> b;  // b[j-1] = #blocks of size >= j
      Mat fa = eval_poly_at(F, f, a);
      Mat pw = fa;
      int prev_null = 0;
      while (true) {
        int null = n - rank_of(F, pw);
        int bj = (null - prev_null) / df;
        if (bj == 0) break;
        b.push_back(bj);
        prev_null = null;
        if (null >= df * mult) break;
        pw = mat_mul(F, pw, fa);
      }
      for (size_t j = 0; j < b.size(); ++j) {
        int next = j + 1 < b.size() ? b[j + 1] : 0;
        for (int t2 = 0; t2 < b[j] - next; ++t2) parts.push_back(static_cast<int>(j) + 1);
      }
      std::sort(parts.rbegin(), parts.rend());
    }
    t.factors.emplace_back(f, parts);
  }
  std::sort(t.factors.begin(), t.factors.end(),
            [&](const auto& x, const auto& y) {
              return poly_code(F.p(), x.first) < poly_code(F.p(), y.first);
            });
  return reg.intern(t, sim_key(F.p(), t));
}

// dim { M : A M = M B } from the elementary divisor data.
int c_value(uint32_t p, int ta, int tb) {
  TypeRegistry& reg = registry_for(p);
  auto key = std::make_pair(std::min(ta, tb), std::max(ta, tb));
  auto it = reg.c_memo.find(key);
  if (it != reg.c_memo.end()) return it->second;
  const SimType& A = reg.types[ta];
  const SimType& B = reg.types[tb];
  int c = 0;
  size_t i = 0, j = 0;
  while (i < A.factors.size() && j < B.factors.size()) {
    uint64_t ca = poly_code(p, A.factors[i].first);
    uint64_t cb = poly_code(p, B.factors[j].first);
    if (ca < cb) ++i;
    else if (cb < ca) ++j;
    else {
      int df = poly_deg(A.factors[i].first);
      for (int la : A.factors[i].second)
        for (int mb : B.factors[j].second) c += df * std::min(la, mb);
      ++i;
      ++j;
    }
  }
  reg.c_memo.emplace(key, c);
  return c;
}

// ---- unit-group similarity histograms ---------------------------------------

struct TypeHistogram {
  std::vector<std::pair<int, uint64_t>> entries;  // (type id, count)
  uint64_t group_order = 0;
};

const TypeHistogram& unit_histogram(const Vectroid& v, const std::vector<int>& mult,
                                    const CountLimits& lim) {
  static std::map<std::string, TypeHistogram> cache;
  const Fp& F = v.field;
  std::vector<Mat> basis = block_basis(v, mult, mult);
  // Key on the concrete algebra basis: equal presentations share the scan.
  std::string key = std::to_string(F.p()) + "|";
  for (const Mat& m : basis) key += mat_key(m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int n = 0;
  for (int a = 0; a < v.n_objects(); ++a) n += mult[a] * v.dim_of(a);
  if (n > lim.max_vertex_matrix_dim)
    throw ResourceLimit("count: vertex total dimension exceeds the similarity-typing bound");
  if (span_size_capped(F.p(), basis.size(), lim.algebra_scan_cap) == SIZE_MAX)
    throw ResourceLimit("count: endomorphism algebra too large to scan");

  std::map<int, uint64_t> hist;
  uint64_t order = 0;
  for_each_span_element(F, basis, [&](const Mat& m, const std::vector<uint32_t>&) {
    bool inv = false;
    int id = similarity_type_id(F, m, inv);
    if (inv) {
      ++hist[id];
      ++order;
    }
    return true;
  });
  TypeHistogram h;
  h.group_order = order;
  for (auto& [id, c] : hist) h.entries.emplace_back(id, c);
  return cache.emplace(key, std::move(h)).first->second;
}

BigUint pow_big(uint32_t p, uint64_t e) {
  BigUint r(1);
  for (uint64_t i = 0; i < e; ++i) r.mul_small(p);
  return r;
}

}  // namespace

// ---- orbit counting ----------------------------------------------------------

uint64_t count_all_classes(const MarkedQuiver& mq, const DimVec& dims, const CountLimits& lim) {
  std::lock_guard<std::mutex> lock(count_mutex());
  const Fp& F = mq.field;
  uint32_t p = F.p();
  int nv = mq.quiver.n_vertices();

  std::vector<const TypeHistogram*> hist(nv);
  for (int x = 0; x < nv; ++x)
    hist[x] = &unit_histogram(mq.vectroid_at(x), dims.mult[x], lim);

  // Per-vertex weights: counts x p^(loops * c(t,t)).
  std::vector<std::vector<std::pair<int, BigUint>>> weight(nv);
  std::vector<std::vector<int>> edge_mult(nv, std::vector<int>(nv, 0));
  for (const auto& a : mq.quiver.arrows) {
    if (a.src == a.dst) continue;
    edge_mult[a.src][a.dst] += 1;
    edge_mult[a.dst][a.src] += 1;
  }
  for (int x = 0; x < nv; ++x) {
    int loops = 0;
    for (const auto& a : mq.quiver.arrows)
      if (a.src == x && a.dst == x) ++loops;
    for (auto& [id, cnt] : hist[x]->entries) {
      BigUint w(cnt);
      if (loops) w *= pow_big(p, static_cast<uint64_t>(loops) * c_value(p, id, id));
      weight[x].emplace_back(id, std::move(w));
    }
  }

  std::vector<uint8_t> active(nv, 1);
  int active_count = nv;

  auto contract_leaf = [&]() -> bool {
    for (int v = 0; v < nv; ++v) {
      if (!active[v]) continue;
      int nb = -1, deg = 0;
      for (int u = 0; u < nv; ++u)
        if (u != v && active[u] && edge_mult[v][u] > 0) {
          nb = u;
          ++deg;
        }
      if (deg != 1 || active_count < 2) continue;
      int m = edge_mult[v][nb];
      // absorb v into nb
      std::vector<std::pair<int, BigUint>> nw;
      for (auto& [tu, wu] : weight[nb]) {
        BigUint acc(0);
        for (auto& [tv, wv] : weight[v]) {
          BigUint term = wv;
          term *= pow_big(p, static_cast<uint64_t>(m) * c_value(p, tv, tu));
          acc += term;
        }
        acc *= wu;
        nw.emplace_back(tu, std::move(acc));
      }
      weight[nb] = std::move(nw);
      active[v] = 0;
      --active_count;
      for (int u = 0; u < nv; ++u) {
        edge_mult[v][u] = 0;
        edge_mult[u][v] = 0;
      }
      return true;
    }
    return false;
  };

  while (active_count > 1 && contract_leaf()) {
  }

  std::vector<int> act;
  for (int v = 0; v < nv; ++v)
    if (active[v]) act.push_back(v);

  BigUint total(0);
  if (act.size() == 1) {
    for (auto& [t, w] : weight[act[0]]) total += w;
  } else if (act.size() == 2) {
    int u = act[0], v = act[1];
    int m = edge_mult[u][v];
    for (auto& [tu, wu] : weight[u])
      for (auto& [tv, wv] : weight[v]) {
        BigUint term = pow_big(p, static_cast<uint64_t>(m) * c_value(p, tu, tv));
        term *= wu;
        term *= wv;
        total += term;
      }
  } else if (act.size() == 3) {
    int a = act[0], b = act[1], c3 = act[2];
    for (auto& [ta, wa] : weight[a])
      for (auto& [tb, wb] : weight[b])
        for (auto& [tc, wc] : weight[c3]) {
          uint64_t e = static_cast<uint64_t>(edge_mult[a][b]) * c_value(p, ta, tb) +
                       static_cast<uint64_t>(edge_mult[a][c3]) * c_value(p, ta, tc) +
                       static_cast<uint64_t>(edge_mult[b][c3]) * c_value(p, tb, tc);
          BigUint term = pow_big(p, e);
          term *= wa;
          term *= wb;
          term *= wc;
          total += term;
        }
  } else {
    throw ResourceLimit("count: quiver core too large (more than 3 mutually cyclic vertices)");
  }

  for (int x = 0; x < nv; ++x) {
    uint64_t g = hist[x]->group_order;
    uint64_t r = total.divmod_small(g);
    if (r != 0) throw Error("count_all_classes: orbit sum not divisible (internal error)");
  }
  if (!total.fits_u64()) throw ResourceLimit("count_all_classes: class count exceeds 64 bits");
  return total.to_u64();
}

// ---- Krull-Schmidt deconvolution ---------------------------------------------

IndCounter::IndCounter(const MarkedQuiver& mq, int per_vertex_bound, CountLimits lim)
    : IndCounter(mq, std::vector<int>(mq.quiver.n_vertices(), per_vertex_bound), lim) {}

IndCounter::IndCounter(const MarkedQuiver& mq, const std::vector<int>& per_vertex_bounds,
                       CountLimits lim)
    : mq_(mq), lim_(lim) {
  int nv = mq.quiver.n_vertices();
  std::vector<std::vector<std::vector<int>>> per_vertex;
  for (int x = 0; x < nv; ++x)
    per_vertex.push_back(mult_vectors_up_to(mq.vectroid_at(x), per_vertex_bounds[x]));
  std::vector<int> idx(nv, 0);
  while (true) {
    DimVec d;
    for (int x = 0; x < nv; ++x) d.mult.push_back(per_vertex[x][idx[x]]);
    if (!d.is_zero()) lattice_.push_back(std::move(d));
    int k = nv - 1;
    while (k >= 0) {
      if (++idx[k] < static_cast<int>(per_vertex[k].size())) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  std::sort(lattice_.begin(), lattice_.end(), [&](const DimVec& a, const DimVec& b) {
    int ga = grand_total(mq_, a), gb = grand_total(mq_, b);
    if (ga != gb) return ga < gb;
    return a < b;
  });
  grand_.resize(lattice_.size());
  for (size_t i = 0; i < lattice_.size(); ++i) {
    grand_[i] = grand_total(mq_, lattice_[i]);
    index_[lattice_[i]] = i;
    max_grand_ = std::max(max_grand_, grand_[i]);
  }
  partial_.assign(lattice_.size(), BigUint(0));
  ind_.assign(lattice_.size(), 0);
}

void IndCounter::advance_to(size_t upto) {
  for (; done_ <= upto && done_ < lattice_.size(); ++done_) {
    const DimVec& e = lattice_[done_];
    BigUint t(count_all_classes(mq_, e, lim_));
    BigUint i_val = t;
    i_val -= partial_[done_];
    if (!i_val.fits_u64())
      throw ResourceLimit("IndCounter: indecomposable count exceeds 64 bits");
    uint64_t I = i_val.to_u64();
    ind_[done_] = I;
    if (I == 0) continue;

    // Multiply the running generating function by (1 - x^e)^(-I): for every
    // lattice point q, new(q) = sum_j C(I-1+j, j) * old(q - j e).
    std::vector<BigUint> old = partial_;
    for (size_t qi = 0; qi < lattice_.size(); ++qi) {
      DimVec q = lattice_[qi];
      BigUint acc = old[qi];
      // subtract e repeatedly
      DimVec cur = q;
      uint64_t j = 0;
      while (true) {
        ++j;
        bool ok = true;
        for (size_t x = 0; x < cur.mult.size() && ok; ++x)
          for (size_t a = 0; a < cur.mult[x].size() && ok; ++a) {
            cur.mult[x][a] -= e.mult[x][a];
            if (cur.mult[x][a] < 0) ok = false;
          }
        if (!ok) break;
        // C(I-1+j, j)
        BigUint binom(1);
        for (uint64_t s = 1; s <= j; ++s) {
          binom.mul_small(I - 1 + s);
          uint64_t r = binom.divmod_small(s);
          if (r != 0) throw Error("IndCounter: binomial not integral (internal error)");
        }
        BigUint add;
        if (cur.is_zero()) {
          add = binom;
        } else {
          auto it = index_.find(cur);
          if (it == index_.end()) throw Error("IndCounter: lattice not downward closed");
          if (old[it->second].is_zero()) continue;
          add = old[it->second];
          add *= binom;
        }
        partial_[qi] += add;
      }
    }
  }
}

std::vector<std::pair<DimVec, uint64_t>> IndCounter::level(int grand) {
  size_t last = 0;
  for (size_t i = 0; i < lattice_.size(); ++i)
    if (grand_[i] <= grand) last = i;
  advance_to(last);
  std::vector<std::pair<DimVec, uint64_t>> out;
  for (size_t i = 0; i < lattice_.size(); ++i)
    if (grand_[i] == grand) out.emplace_back(lattice_[i], ind_[i]);
  return out;
}

uint64_t IndCounter::at(const DimVec& dims) {
  if (dims.is_zero()) return 0;
  auto it = index_.find(dims);
  if (it == index_.end()) throw ValidationError("IndCounter: dims outside the lattice");
  advance_to(it->second);
  return ind_[it->second];
}

std::vector<uint64_t> count_indecomposables_by_dim(const MarkedQuiver& mq, const DimVec& dims,
                                                   const std::vector<uint32_t>& fields,
                                                   const CountLimits& lim) {
  std::vector<uint64_t> out;
  for (uint32_t p : fields) {
    MarkedQuiver m2 = with_field(mq, p);
    std::vector<int> bounds;
    for (int x = 0; x < mq.quiver.n_vertices(); ++x) bounds.push_back(total_dim(m2, dims, x));
    IndCounter counter(m2, bounds, lim);
    out.push_back(counter.at(dims));
  }
  return out;
}

}  // namespace mqr
