#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqr/gf.hpp"

namespace mqr {

/// Dense matrix of GF(p) residues, row-major. Zero rows or columns are legal:
/// an r x 0 or 0 x c matrix represents a map to or from the zero space.
///
/// Convention (fixed project-wide): maps compose on the right and matrices act
/// on row vectors from the right. A map A -> B is a dim(A) x dim(B) matrix,
/// and the composite of f: A -> B with g: B -> C is the product f * g.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<uint32_t> e;  // rows * cols entries

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, 0) {}

  uint32_t& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
  uint32_t at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (uint32_t x : e)
      if (x) return false;
    return true;
  }
  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const {  // shape-lex order, used for canonical sorting
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return e < o.e;
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static Mat from_rows(std::vector<std::vector<uint32_t>> rws) {
    Mat m(static_cast<int>(rws.size()), rws.empty() ? 0 : static_cast<int>(rws[0].size()));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
    return m;
  }
};

struct RrefResult {
  Mat m;
  int rank = 0;
  std::vector<int> pivot_cols;
};

Mat mat_add(const Fp& F, const Mat& a, const Mat& b);
Mat mat_sub(const Fp& F, const Mat& a, const Mat& b);
Mat mat_scale(const Fp& F, uint32_t c, const Mat& a);
Mat mat_mul(const Fp& F, const Mat& a, const Mat& b);
Mat mat_pow(const Fp& F, const Mat& a, uint64_t k);
Mat transpose(const Mat& a);

/// Reduced row echelon form; deterministic (columns scanned left to right,
/// first nonzero entry in the scan is the pivot).
RrefResult rref(const Fp& F, const Mat& m);
int rank_of(const Fp& F, const Mat& m);

/// Basis of the left nullspace { v : v * m = 0 }, as rows of the result,
/// in deterministic order (free coordinates ascending, identity at the free
/// positions). Result has m.rows columns.
Mat left_nullspace(const Fp& F, const Mat& m);

/// Two-sided inverse if m is square and of full rank; the 0 x 0 matrix is
/// invertible with inverse itself.
std::optional<Mat> inverse(const Fp& F, const Mat& m);
bool is_invertible(const Fp& F, const Mat& m);
bool is_nilpotent(const Fp& F, const Mat& m);

/// Solve X * a = b for X given a with independent rows spanning the row space
/// containing the rows of b; returns nothing if some row of b lies outside.
std::optional<Mat> solve_left(const Fp& F, const Mat& a, const Mat& b);

/// Stack rows of a on top of rows of b (equal column counts).
Mat vstack(const Mat& a, const Mat& b);
/// Put a and b side by side (equal row counts).
Mat hstack(const Mat& a, const Mat& b);

/// Row space as a canonical matrix: RREF with zero rows dropped.
Mat row_space_basis(const Fp& F, const Mat& m);
bool in_row_space(const Fp& F, const Mat& basis, const Mat& v);

/// Compact byte key for hashing / canonical comparison.
std::string mat_key(const Mat& m);

std::string mat_to_string(const Mat& m);

}  // namespace mqr
