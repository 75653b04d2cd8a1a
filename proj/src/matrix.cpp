#include "frobdesc/matrix.hpp"

namespace frobdesc {

FqMatrix::FqMatrix(const FqField* F, int rows, int cols)
    : F_(F), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, F->zero()) {}

FqMatrix FqMatrix::rref(std::vector<int>* pivot_cols) const {
  FqMatrix m = *this;
  if (pivot_cols) pivot_cols->clear();
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int pivot = -1;
    for (int i = r; i < rows_; ++i) {
      if (!m.at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) {
      for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    }
    FqElem inv = m.at(r, c).inv();
    for (int j = c; j < cols_; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      FqElem f = m.at(i, c);
      for (int j = c; j < cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return m;
}

int FqMatrix::rank() const {
  std::vector<int> pivots;
  rref(&pivots);
  return static_cast<int>(pivots.size());
}

std::vector<std::vector<FqElem>> FqMatrix::nullspace() const {
  std::vector<int> pivots;
  FqMatrix R = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<FqElem>> basis;
  for (int free_c = 0; free_c < cols_; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<FqElem> v(cols_, F_->zero());
    v[free_c] = F_->one();
    // back-substitute: pivot row i has leading 1 at pivots[i]
    for (size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = -R.at(static_cast<int>(i), free_c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace frobdesc
