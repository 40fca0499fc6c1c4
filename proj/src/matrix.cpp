#include "mqr/matrix.hpp"

#include <sstream>

namespace mqr {

Mat mat_add(const Fp& F, const Mat& a, const Mat& b) {
  Mat r(a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = F.add(a.e[i], b.e[i]);
  return r;
}

Mat mat_sub(const Fp& F, const Mat& a, const Mat& b) {
  Mat r(a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = F.sub(a.e[i], b.e[i]);
  return r;
}

Mat mat_scale(const Fp& F, uint32_t c, const Mat& a) {
  Mat r(a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = F.mul(c, a.e[i]);
  return r;
}

Mat mat_mul(const Fp& F, const Mat& a, const Mat& b) {
  Mat r(a.rows, b.cols);
  const uint64_t p = F.p();
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      uint64_t aik = a.at(i, k);
      if (!aik) continue;
      for (int j = 0; j < b.cols; ++j) {
        uint64_t v = r.at(i, j) + aik * b.at(k, j) % p;
        r.at(i, j) = static_cast<uint32_t>(v >= p ? v - p : v);
      }
    }
  return r;
}

Mat mat_pow(const Fp& F, const Mat& a, uint64_t k) {
  Mat r = Mat::identity(a.rows);
  Mat base = a;
  while (k) {
    if (k & 1) r = mat_mul(F, r, base);
    base = mat_mul(F, base, base);
    k >>= 1;
  }
  return r;
}

Mat transpose(const Mat& a) {
  Mat r(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

RrefResult rref(const Fp& F, const Mat& m) {
  RrefResult res;
  res.m = m;
  Mat& a = res.m;
  int r = 0;
  for (int c = 0; c < a.cols && r < a.rows; ++c) {
    int piv = -1;
    for (int i = r; i < a.rows; ++i)
      if (a.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
    uint32_t inv = F.inv(a.at(r, c));
    for (int j = 0; j < a.cols; ++j) a.at(r, j) = F.mul(inv, a.at(r, j));
    for (int i = 0; i < a.rows; ++i) {
      if (i == r) continue;
      uint32_t f = a.at(i, c);
      if (!f) continue;
      for (int j = 0; j < a.cols; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(r, j)));
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int rank_of(const Fp& F, const Mat& m) { return rref(F, m).rank; }

Mat left_nullspace(const Fp& F, const Mat& m) {
  // v * m = 0  <=>  m^T v^T = 0; compute the right kernel of m^T.
  RrefResult R = rref(F, transpose(m));
  int n = m.rows;
  std::vector<uint8_t> is_pivot(n, 0);
  for (int c : R.pivot_cols) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat basis(static_cast<int>(free_cols.size()), n);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.at(static_cast<int>(k), fc) = 1;
    for (int pr = 0; pr < R.rank; ++pr)
      basis.at(static_cast<int>(k), R.pivot_cols[pr]) = F.neg(R.m.at(pr, fc));
  }
  return basis;
}

std::optional<Mat> inverse(const Fp& F, const Mat& m) {
  if (m.rows != m.cols) return std::nullopt;
  if (m.rows == 0) return Mat(0, 0);
  Mat aug = hstack(m, Mat::identity(m.rows));
  RrefResult R = rref(F, aug);
  for (int i = 0; i < m.rows; ++i)
    if (R.m.at(i, i) != 1) return std::nullopt;
  Mat inv(m.rows, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) inv.at(i, j) = R.m.at(i, m.cols + j);
  return inv;
}

bool is_invertible(const Fp& F, const Mat& m) {
  return m.rows == m.cols && rank_of(F, m) == m.rows;
}

bool is_nilpotent(const Fp& F, const Mat& m) {
  if (m.rows != m.cols) return false;
  if (m.rows == 0) return true;
  return mat_pow(F, m, static_cast<uint64_t>(m.rows)).is_zero();
}

std::optional<Mat> solve_left(const Fp& F, const Mat& a, const Mat& b) {
  // X * a = b  <=>  a^T X^T = b^T: solve columnwise via RREF of [a^T | b^T].
  Mat at = transpose(a), bt = transpose(b);
  Mat aug = hstack(at, bt);
  RrefResult R = rref(F, aug);
  // Consistency: no pivot in the b-part.
  for (int c : R.pivot_cols)
    if (c >= at.cols) return std::nullopt;
  Mat xt(at.cols, bt.cols);
  for (int pr = 0; pr < R.rank; ++pr) {
    int pc = R.pivot_cols[pr];
    for (int j = 0; j < bt.cols; ++j) xt.at(pc, j) = R.m.at(pr, at.cols + j);
  }
  // Verify (guards against underdetermined pivots giving a non-solution).
  Mat x = transpose(xt);
  if (mat_mul(F, x, a) != b) return std::nullopt;
  return x;
}

Mat vstack(const Mat& a, const Mat& b) {
  Mat r(a.rows + b.rows, a.cols);
  std::copy(a.e.begin(), a.e.end(), r.e.begin());
  std::copy(b.e.begin(), b.e.end(), r.e.begin() + a.e.size());
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  Mat r(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
  }
  return r;
}

Mat row_space_basis(const Fp& F, const Mat& m) {
  RrefResult R = rref(F, m);
  Mat b(R.rank, m.cols);
  for (int i = 0; i < R.rank; ++i)
    for (int j = 0; j < m.cols; ++j) b.at(i, j) = R.m.at(i, j);
  return b;
}

bool in_row_space(const Fp& F, const Mat& basis, const Mat& v) {
  return rank_of(F, vstack(basis, v)) == basis.rows;
}

std::string mat_key(const Mat& m) {
  std::string s;
  s.reserve(8 + 2 * m.e.size());
  s.push_back(static_cast<char>(m.rows & 0xff));
  s.push_back(static_cast<char>((m.rows >> 8) & 0xff));
  s.push_back(static_cast<char>(m.cols & 0xff));
  s.push_back(static_cast<char>((m.cols >> 8) & 0xff));
  for (uint32_t x : m.e) {
    s.push_back(static_cast<char>(x & 0xff));
    s.push_back(static_cast<char>((x >> 8) & 0xff));
  }
  return s;
}

std::string mat_to_string(const Mat& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mqr
