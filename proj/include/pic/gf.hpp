#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace pic {

bool is_prime(int q);

/// Multiplicative inverse mod prime q (extended Euclid).
int gf_inverse(int value, int q);

/// Dense matrix over GF(q), q prime. Entries live in [0, q).
class GFMatrix {
 public:
  GFMatrix() = default;
  GFMatrix(int q, int rows, int cols);
  GFMatrix(int q, std::initializer_list<std::initializer_list<int>> rows);

  static GFMatrix identity(int q, int n);
  /// Builds a matrix from a list of columns (each of length `rows`).
  static GFMatrix from_columns(int q, int rows,
                               const std::vector<std::vector<int>>& cols);

  int q() const { return q_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, int v);

  std::vector<int> column(int c) const;
  void append_column(const std::vector<int>& col);
  void append_columns(const GFMatrix& other);

  GFMatrix transposed() const;
  bool operator==(const GFMatrix& other) const = default;

 private:
  int q_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

struct RrefResult {
  GFMatrix matrix;
  int rank = 0;
  std::vector<int> pivot_columns;
};

/// Reduced row echelon form over GF(q).
RrefResult rref(const GFMatrix& m);

int rank_of(const GFMatrix& m);

/// True iff v lies in the column space of `basis`. An empty basis (zero
/// columns) spans only the zero vector.
bool in_span(const std::vector<int>& v, const GFMatrix& basis);

/// True iff colspace(a) is contained in colspace(b); both matrices must
/// share q and row count. Computed as rank(b) == rank([b|a]).
bool subspace_contained(const GFMatrix& a, const GFMatrix& b);

}  // namespace pic
