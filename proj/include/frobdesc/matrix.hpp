// Dense exact linear algebra over F_{p^k}: row reduction, rank, nullspace.
#pragma once

#include <vector>

#include "frobdesc/fq.hpp"

namespace frobdesc {

class FqMatrix {
 public:
  FqMatrix(const FqField* F, int rows, int cols);

  const FqField* field() const { return F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  FqElem& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const FqElem& at(int r, int c) const {
    return e_[static_cast<size_t>(r) * cols_ + c];
  }

  // reduced row echelon form (in place copy), returns pivot columns
  FqMatrix rref(std::vector<int>* pivot_cols = nullptr) const;
  int rank() const;
  // basis of the right kernel {v : Mv = 0}; size = cols - rank
  std::vector<std::vector<FqElem>> nullspace() const;

 private:
  const FqField* F_;
  int rows_, cols_;
  std::vector<FqElem> e_;
};

}  // namespace frobdesc
