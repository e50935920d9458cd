#pragma once

#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "hopfdiag/rational.hpp"

namespace hopfdiag {

// Sparse column-major matrix over exact rationals. Dimensions stay below
// 6^6 in the shipped workloads but densities are tiny (structure maps are
// permutation-like), so columns hold sorted (row, value) pairs.
class SpMat {
 public:
  using Col = std::vector<std::pair<int, Rat>>;

  SpMat() = default;
  SpMat(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

  static SpMat identity(int n) {
    SpMat m(n, n);
    for (int i = 0; i < n; ++i) m.col_[i].emplace_back(i, Rat(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, const Rat& v) {
    Col& col = col_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
      if (v.is_zero()) col.erase(it); else it->second = v;
    } else if (!v.is_zero()) {
      col.insert(it, {r, v});
    }
  }

  Rat at(int r, int c) const {
    for (const auto& [row, v] : col_[c])
      if (row == r) return v;
    return Rat(0);
  }

  const Col& column(int c) const { return col_[c]; }
  Col& column_mut(int c) { return col_[c]; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
  }

  // this * rhs
  SpMat operator*(const SpMat& rhs) const {
    SpMat out(rows_, rhs.cols_);
    std::vector<Rat> acc(rows_);
    std::vector<int> touched;
    for (int j = 0; j < rhs.cols_; ++j) {
      touched.clear();
      for (const auto& [k, bv] : rhs.col_[j]) {
        for (const auto& [i, av] : col_[k]) {
          if (acc[i].is_zero()) touched.push_back(i);
          acc[i] += av * bv;
        }
      }
      std::sort(touched.begin(), touched.end());
      Col& oc = out.col_[j];
      for (int i : touched) {
        if (!acc[i].is_zero()) oc.emplace_back(i, acc[i]);
        acc[i] = Rat(0);
      }
    }
    return out;
  }

  // Kronecker product with the usual index convention:
  // (A x B)[ia*rB+ib, ja*cB+jb] = A[ia,ja] * B[ib,jb].
  static SpMat kron(const SpMat& a, const SpMat& b) {
    SpMat out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int ja = 0; ja < a.cols_; ++ja) {
      for (int jb = 0; jb < b.cols_; ++jb) {
        Col& oc = out.col_[ja * b.cols_ + jb];
        for (const auto& [ia, av] : a.col_[ja])
          for (const auto& [ib, bv] : b.col_[jb])
            oc.emplace_back(ia * b.rows_ + ib, av * bv);
        std::sort(oc.begin(), oc.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
      }
    }
    return out;
  }

  friend bool operator==(const SpMat& a, const SpMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_ == b.col_;
  }
  friend bool operator!=(const SpMat& a, const SpMat& b) { return !(a == b); }

  struct Entry {
    int row = 0, col = 0;
    Rat lhs, rhs;
  };

  // Largest-magnitude differing entry, if any. Exact; no tolerance.
  static std::optional<Entry> max_diff(const SpMat& a, const SpMat& b) {
    std::optional<Entry> best;
    Rat best_abs(0);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      return Entry{-1, -1, Rat(a.rows_), Rat(b.rows_)};
    for (int j = 0; j < a.cols_; ++j) {
      auto ia = a.col_[j].begin(), ea = a.col_[j].end();
      auto ib = b.col_[j].begin(), eb = b.col_[j].end();
      while (ia != ea || ib != eb) {
        int ra = ia != ea ? ia->first : INT32_MAX;
        int rb = ib != eb ? ib->first : INT32_MAX;
        int r = std::min(ra, rb);
        Rat va = ra == r ? (ia++)->second : Rat(0);
        Rat vb = rb == r ? (ib++)->second : Rat(0);
        if (va != vb) {
          Rat d = (va - vb).abs();
          if (!best || best_abs.less(d)) {
            best = Entry{r, j, va, vb};
            best_abs = d;
          }
        }
      }
    }
    return best;
  }

  // Dense row-major dump; stable output for golden tests.
  std::string to_text() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (j) os << ' ';
        os << at(i, j).str();
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Col> col_;
};

}  // namespace hopfdiag
