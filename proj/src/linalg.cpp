#include "crn/linalg.hpp"

#include "crn/error.hpp"

namespace crn {

std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

std::vector<RatVec> nullspace(const RatMat& m) {
  if (m.empty()) return {};
  RatMat a = m;
  const size_t cols = a[0].size();
  std::vector<int> pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    RatVec v(cols, Rat(0));
    v[fc] = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
      // Row pi has its pivot at column pivots[pi]; entry at fc gives the
      // dependence of that pivot variable on the free one.
      v[pivots[pi]] = -a[pi][fc];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat det(RatMat m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorCode::Precondition, "det: matrix not square");
  Rat d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    const Rat inv = Rat(1) / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rat f = m[i][c] * inv;
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

std::optional<RatVec> solve(RatMat m, RatVec b) {
  const size_t rows = m.size();
  if (rows == 0) return RatVec{};
  const size_t cols = m[0].size();
  for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  std::vector<int> pivots = rref(m);
  // Inconsistent iff a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == static_cast<int>(cols))
    return std::nullopt;
  RatVec x(cols, Rat(0));
  for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = m[pi][cols];
  return x;
}

}  // namespace crn
