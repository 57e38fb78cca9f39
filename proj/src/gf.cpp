#include "pic/gf.hpp"

namespace pic {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

int gf_inverse(int value, int q) {
  value %= q;
  if (value < 0) value += q;
  if (value == 0) throw std::domain_error("gf_inverse: zero has no inverse");
  int r0 = q, r1 = value, t0 = 0, t1 = 1;
  while (r1 != 0) {
    int k = r0 / r1;
    r0 -= k * r1;
    std::swap(r0, r1);
    t0 -= k * t1;
    std::swap(t0, t1);
  }
  return t0 < 0 ? t0 + q : t0;
}

GFMatrix::GFMatrix(int q, int rows, int cols)
    : q_(q), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {
  if (!is_prime(q)) throw std::invalid_argument("GFMatrix: q must be prime");
  if (rows < 0 || cols < 0) throw std::invalid_argument("GFMatrix: negative dimension");
}

GFMatrix::GFMatrix(int q, std::initializer_list<std::initializer_list<int>> rows)
    : GFMatrix(q, static_cast<int>(rows.size()),
               rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_)
      throw std::invalid_argument("GFMatrix: ragged rows");
    int c = 0;
    for (int v : row) set(r, c++, v);
    ++r;
  }
}

GFMatrix GFMatrix::identity(int q, int n) {
  GFMatrix m(q, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

GFMatrix GFMatrix::from_columns(int q, int rows,
                                const std::vector<std::vector<int>>& cols) {
  GFMatrix m(q, rows, static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    if (static_cast<int>(cols[c].size()) != rows)
      throw std::invalid_argument("from_columns: column length mismatch");
    for (int r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

void GFMatrix::set(int r, int c, int v) {
  v %= q_;
  if (v < 0) v += q_;
  data_[static_cast<size_t>(r) * cols_ + c] = v;
}

std::vector<int> GFMatrix::column(int c) const {
  std::vector<int> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

void GFMatrix::append_column(const std::vector<int>& col) {
  if (static_cast<int>(col.size()) != rows_)
    throw std::invalid_argument("append_column: length mismatch");
  std::vector<int> next(static_cast<size_t>(rows_) * (cols_ + 1));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) next[static_cast<size_t>(r) * (cols_ + 1) + c] = at(r, c);
    int v = col[r] % q_;
    if (v < 0) v += q_;
    next[static_cast<size_t>(r) * (cols_ + 1) + cols_] = v;
  }
  data_ = std::move(next);
  ++cols_;
}

void GFMatrix::append_columns(const GFMatrix& other) {
  if (other.rows_ != rows_ || other.q_ != q_)
    throw std::invalid_argument("append_columns: shape or field mismatch");
  std::vector<int> next(static_cast<size_t>(rows_) * (cols_ + other.cols_));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c)
      next[static_cast<size_t>(r) * (cols_ + other.cols_) + c] = at(r, c);
    for (int c = 0; c < other.cols_; ++c)
      next[static_cast<size_t>(r) * (cols_ + other.cols_) + cols_ + c] = other.at(r, c);
  }
  data_ = std::move(next);
  cols_ += other.cols_;
}

GFMatrix GFMatrix::transposed() const {
  GFMatrix t(q_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

RrefResult rref(const GFMatrix& m) {
  RrefResult out{m, 0, {}};
  GFMatrix& a = out.matrix;
  const int q = a.q();
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < a.rows(); ++r)
      if (a.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < a.cols(); ++c) {
        int tmp = a.at(row, c);
        a.set(row, c, a.at(piv, c));
        a.set(piv, c, tmp);
      }
    const int inv = gf_inverse(a.at(row, col), q);
    for (int c = 0; c < a.cols(); ++c) a.set(row, c, a.at(row, c) * inv % q);
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const int f = a.at(r, col);
      if (f == 0) continue;
      for (int c = 0; c < a.cols(); ++c)
        a.set(r, c, (a.at(r, c) + (q - f) * a.at(row, c)) % q);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.rank = row;
  return out;
}

int rank_of(const GFMatrix& m) {
  // plain elimination, no back-substitution
  GFMatrix a = m;
  const int q = a.q();
  int rank = 0;
  for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
    int piv = -1;
    for (int r = rank; r < a.rows(); ++r)
      if (a.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int c = col; c < a.cols(); ++c) {
        int tmp = a.at(rank, c);
        a.set(rank, c, a.at(piv, c));
        a.set(piv, c, tmp);
      }
    const int inv = gf_inverse(a.at(rank, col), q);
    for (int r = rank + 1; r < a.rows(); ++r) {
      const int f = a.at(r, col);
      if (f == 0) continue;
      const int mult = f * inv % q;
      for (int c = col; c < a.cols(); ++c)
        a.set(r, c, (a.at(r, c) + (q - 1) * mult % q * a.at(rank, c)) % q);
    }
    ++rank;
  }
  return rank;
}

bool in_span(const std::vector<int>& v, const GFMatrix& basis) {
  if (static_cast<int>(v.size()) != basis.rows())
    throw std::invalid_argument("in_span: dimension mismatch");
  GFMatrix ext = basis;
  ext.append_column(v);
  return rank_of(ext) == rank_of(basis);
}

bool subspace_contained(const GFMatrix& a, const GFMatrix& b) {
  if (a.rows() != b.rows() || a.q() != b.q())
    throw std::invalid_argument("subspace_contained: dimension mismatch");
  GFMatrix ext = b;
  ext.append_columns(a);
  return rank_of(ext) == rank_of(b);
}

}  // namespace pic
