#include "pic/lp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pic::lp {

int Problem::add_var(std::string name, Rat lower, std::optional<Rat> upper) {
  names_.push_back(std::move(name));
  objective_.emplace_back(0);
  lower_.push_back(std::move(lower));
  upper_.push_back(std::move(upper));
  return num_vars() - 1;
}

void Problem::set_objective(int var, const Rat& coeff) { objective_.at(var) = coeff; }

int Problem::add_constraint(std::vector<Term> terms, Rel rel, Rat rhs, std::string label) {
  for (const auto& t : terms)
    if (t.var < 0 || t.var >= num_vars())
      throw std::invalid_argument("constraint references undeclared variable");
  constraints_.push_back({std::move(terms), rel, std::move(rhs), std::move(label)});
  return num_constraints() - 1;
}

int Problem::var_by_name(const std::string& name) const {
  for (int i = 0; i < num_vars(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

std::string Problem::dump() const {
  std::ostringstream os;
  auto var = [&](int i) {
    return names_[i].empty() ? "x" + std::to_string(i) : names_[i];
  };
  os << "min";
  bool any = false;
  for (int i = 0; i < num_vars(); ++i)
    if (objective_[i] != 0) {
      os << (any ? " + " : " ") << rat_to_string(objective_[i]) << "*" << var(i);
      any = true;
    }
  if (!any) os << " 0";
  os << "\ns.t.\n";
  for (const auto& c : constraints_) {
    bool first = true;
    for (const auto& t : c.terms) {
      os << (first ? "  " : " + ") << rat_to_string(t.coeff) << "*" << var(t.var);
      first = false;
    }
    if (first) os << "  0";
    os << (c.rel == Rel::Le ? " <= " : c.rel == Rel::Ge ? " >= " : " = ")
       << rat_to_string(c.rhs);
    if (!c.label.empty()) os << "   [" << c.label << "]";
    os << "\n";
  }
  for (int i = 0; i < num_vars(); ++i) {
    os << "  " << rat_to_string(lower_[i]) << " <= " << var(i);
    if (upper_[i]) os << " <= " << rat_to_string(*upper_[i]);
    os << "\n";
  }
  return os.str();
}

std::map<std::string, Rat> Result::named_point(const Problem& p) const {
  std::map<std::string, Rat> out;
  for (int i = 0; i < p.num_vars() && i < static_cast<int>(point.size()); ++i)
    out[p.name(i).empty() ? "x" + std::to_string(i) : p.name(i)] = point[i];
  return out;
}

// ------------------------------------------------------------------------
// number types for the simplex core

namespace {

struct Rat64Overflow {};

/// int64 rational with exact overflow detection; escalates the whole solve
/// to GMP when any value stops fitting.
struct Rat64 {
  int64_t num = 0;
  int64_t den = 1;

  static Rat64 make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat64: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return {0, 1};
    unsigned __int128 an = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    int64_t g = 0;
    {
      unsigned __int128 a = an, b = static_cast<unsigned __int128>(d);
      while (b) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
      }
      if (a > static_cast<unsigned __int128>(INT64_MAX)) throw Rat64Overflow{};
      g = static_cast<int64_t>(a);
    }
    n /= g;
    d /= g;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw Rat64Overflow{};
    return {static_cast<int64_t>(n), static_cast<int64_t>(d)};
  }

  friend Rat64 operator+(const Rat64& a, const Rat64& b) {
    return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rat64 operator-(const Rat64& a, const Rat64& b) {
    return make(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rat64 operator*(const Rat64& a, const Rat64& b) {
    return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rat64 operator/(const Rat64& a, const Rat64& b) {
    return make(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  Rat64 operator-() const { return {-num, den}; }
  int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
  bool is_zero() const { return num == 0; }
  friend bool operator==(const Rat64& a, const Rat64& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rat64& a, const Rat64& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
};

struct NumOpsRat64 {
  using T = Rat64;
  static T zero() { return {0, 1}; }
  static T from_rat(const Rat& r) {
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p()) throw Rat64Overflow{};
    return {r.get_num().get_si(), r.get_den().get_si()};
  }
  static Rat to_rat(const T& v) { return Rat(v.num, v.den); }
  static int sign(const T& v) { return v.sign(); }
};

struct NumOpsRat {
  using T = Rat;
  static T zero() { return 0; }
  static T from_rat(const Rat& r) { return r; }
  static Rat to_rat(const T& v) { return v; }
  static int sign(const T& v) { return sgn(v); }
};

/// Full-tableau two-phase simplex, Bland's rule throughout.
template <class Ops>
class Simplex {
  using T = typename Ops::T;

 public:
  Result run(const Problem& p) {
    build(p);
    if (!phase1()) return {Status::Infeasible, 0, {}};
    const int ph2 = phase2();
    if (ph2 < 0) return {Status::Unbounded, 0, {}};
    Result res;
    res.status = Status::Optimal;
    std::vector<Rat> shifted(n_struct_, 0);
    for (int r = 0; r < m_; ++r)
      if (alive_[r] && basis_[r] < n_struct_) shifted[basis_[r]] = Ops::to_rat(rhs(r));
    res.point.resize(n_struct_);
    Rat value = 0;
    for (int i = 0; i < n_struct_; ++i) {
      res.point[i] = shifted[i] + lower_shift_[i];
      value += obj_[i] * res.point[i];
    }
    res.value = value;
    return res;
  }

 private:
  int m_ = 0;          // rows
  int n_struct_ = 0;   // structural variables
  int n_total_ = 0;    // structural + slack + artificial
  int width_ = 0;      // n_total_ + 1 (rhs)
  int art_begin_ = 0;
  std::vector<T> tab_;          // (m_+1) x width_, last row = cost row
  std::vector<int> basis_;
  std::vector<bool> alive_;
  std::vector<Rat> obj_;          // original objective (structural)
  std::vector<Rat> lower_shift_;  // lower bounds subtracted out

  T& at(int r, int c) { return tab_[static_cast<size_t>(r) * width_ + c]; }
  T& rhs(int r) { return at(r, n_total_); }
  T& cost(int c) { return at(m_, c); }

  void build(const Problem& p) {
    n_struct_ = p.num_vars();
    obj_.resize(n_struct_);
    lower_shift_.resize(n_struct_);
    for (int i = 0; i < n_struct_; ++i) {
      obj_[i] = p.objective(i);
      lower_shift_[i] = p.lower(i);
    }
    // assemble rows: constraints plus upper-bound rows, lower bounds shifted
    struct Row {
      std::vector<std::pair<int, Rat>> terms;
      Rel rel;
      Rat rhs;
    };
    std::vector<Row> rows;
    for (const auto& c : p.constraints()) {
      Row row{{}, c.rel, c.rhs};
      std::map<int, Rat> acc;
      for (const auto& t : c.terms) acc[t.var] += t.coeff;
      for (auto& [v, coeff] : acc) {
        if (coeff == 0) continue;
        row.rhs -= coeff * lower_shift_[v];
        row.terms.emplace_back(v, coeff);
      }
      rows.push_back(std::move(row));
    }
    for (int i = 0; i < n_struct_; ++i)
      if (p.upper(i)) rows.push_back({{{i, Rat(1)}}, Rel::Le, *p.upper(i) - lower_shift_[i]});

    m_ = static_cast<int>(rows.size());
    int n_slack = 0;
    for (const auto& r : rows)
      if (r.rel != Rel::Eq) ++n_slack;
    // artificials: upper bound one per row
    art_begin_ = n_struct_ + n_slack;
    n_total_ = art_begin_;  // artificial columns appended below as needed
    std::vector<int> art_of(m_, -1);
    // first pass: count artificials needed (rhs sign decided after negation)
    std::vector<int> slack_of(m_, -1);
    int slack_idx = n_struct_;
    std::vector<int> sign(m_, 1);
    for (int r = 0; r < m_; ++r) {
      Rat b = rows[r].rhs;
      if (sgn(b) < 0) sign[r] = -1;
    }
    int n_art = 0;
    for (int r = 0; r < m_; ++r) {
      Rel rel = rows[r].rel;
      if (sign[r] < 0 && rel != Rel::Eq) rel = (rel == Rel::Le ? Rel::Ge : Rel::Le);
      if (rel != Rel::Eq) slack_of[r] = slack_idx++;
      const bool needs_art = (rel != Rel::Le);
      if (needs_art) art_of[r] = art_begin_ + n_art++;
    }
    n_total_ = art_begin_ + n_art;
    width_ = n_total_ + 1;
    tab_.assign(static_cast<size_t>(m_ + 1) * width_, Ops::zero());
    basis_.assign(m_, -1);
    alive_.assign(m_, true);

    for (int r = 0; r < m_; ++r) {
      const Rat s = sign[r];
      for (const auto& [v, coeff] : rows[r].terms) at(r, v) = Ops::from_rat(coeff * s);
      rhs(r) = Ops::from_rat(rows[r].rhs * s);
      Rel rel = rows[r].rel;
      if (sign[r] < 0 && rel != Rel::Eq) rel = (rel == Rel::Le ? Rel::Ge : Rel::Le);
      if (slack_of[r] >= 0) at(r, slack_of[r]) = Ops::from_rat(Rat(rel == Rel::Le ? 1 : -1));
      if (art_of[r] >= 0) {
        at(r, art_of[r]) = Ops::from_rat(Rat(1));
        basis_[r] = art_of[r];
      } else {
        basis_[r] = slack_of[r];
      }
    }
  }

  void pivot(int pr, int pc) {
    const T piv = at(pr, pc);
    std::vector<int> nz;
    nz.reserve(width_);
    {
      const T inv = Ops::from_rat(Rat(1)) / piv;
      for (int c = 0; c < width_; ++c)
        if (!is_zero(at(pr, c))) {
          at(pr, c) = at(pr, c) * inv;
          nz.push_back(c);
        }
    }
    for (int r = 0; r <= m_; ++r) {
      if (r == pr || (r < m_ && !alive_[r])) continue;
      const T f = at(r, pc);
      if (is_zero(f)) continue;
      for (int c : nz) at(r, c) = at(r, c) - f * at(pr, c);
      at(r, pc) = Ops::zero();  // cancel exactly
    }
    basis_[pr] = pc;
  }

  static bool is_zero(const T& v) { return Ops::sign(v) == 0; }

  /// Bland: entering = smallest column with negative reduced cost; leaving =
  /// min ratio, ties by smallest basis variable index. `limit` restricts the
  /// entering columns (phase 2 excludes artificials).
  bool optimize(int limit) {
    for (;;) {
      int pc = -1;
      for (int c = 0; c < limit; ++c)
        if (Ops::sign(cost(c)) < 0) {
          pc = c;
          break;
        }
      if (pc < 0) return true;  // optimal
      int pr = -1;
      T best = Ops::zero();
      for (int r = 0; r < m_; ++r) {
        if (!alive_[r] || Ops::sign(at(r, pc)) <= 0) continue;
        T ratio = rhs(r) / at(r, pc);
        if (pr < 0 || ratio < best || (ratio == best && basis_[r] < basis_[pr])) {
          pr = r;
          best = ratio;
        }
      }
      if (pr < 0) return false;  // unbounded direction
      pivot(pr, pc);
    }
  }

  bool phase1() {
    bool any_art = false;
    for (int r = 0; r < m_; ++r)
      if (basis_[r] >= art_begin_) any_art = true;
    if (any_art) {
      // cost row = sum of artificial rows (to be driven to zero)
      for (int c = 0; c < width_; ++c) cost(c) = Ops::zero();
      for (int r = 0; r < m_; ++r) {
        if (basis_[r] < art_begin_) continue;
        for (int c = 0; c < width_; ++c) cost(c) = cost(c) - at(r, c);
      }
      if (!optimize(art_begin_)) return false;  // cannot happen: phase1 bounded
      if (Ops::sign(rhs(m_)) != 0) return false; // leftover infeasibility
      // drive surviving artificials out of the basis
      for (int r = 0; r < m_; ++r) {
        if (!alive_[r] || basis_[r] < art_begin_) continue;
        int pc = -1;
        for (int c = 0; c < art_begin_; ++c)
          if (!is_zero(at(r, c))) {
            pc = c;
            break;
          }
        if (pc < 0) {
          alive_[r] = false;  // redundant row
        } else {
          pivot(r, pc);
        }
      }
    }
    return true;
  }

  int phase2() {
    for (int c = 0; c < width_; ++c) cost(c) = Ops::zero();
    for (int i = 0; i < n_struct_; ++i) cost(i) = Ops::from_rat(obj_[i]);
    for (int r = 0; r < m_; ++r) {
      if (!alive_[r]) continue;
      const int b = basis_[r];
      if (b < n_struct_ && obj_[b] != 0) {
        const T f = cost(b);
        if (!is_zero(f))
          for (int c = 0; c < width_; ++c) at(m_, c) = at(m_, c) - f * at(r, c);
      }
    }
    return optimize(art_begin_) ? 0 : -1;
  }
};

}  // namespace

Result solve(const Problem& p) {
  try {
    return Simplex<NumOpsRat64>().run(p);
  } catch (const Rat64Overflow&) {
    return Simplex<NumOpsRat>().run(p);
  }
}

PointCheck check_point(const Problem& p, const std::vector<Rat>& point) {
  if (static_cast<int>(point.size()) != p.num_vars())
    throw std::invalid_argument("check_point: point must assign every variable");
  PointCheck out;
  out.satisfied = true;
  for (int i = 0; i < p.num_constraints(); ++i) {
    const auto& c = p.constraints()[i];
    Rat lhs = 0;
    for (const auto& t : c.terms) lhs += t.coeff * point[t.var];
    const int cmp = sgn(lhs - c.rhs);
    bool ok = c.rel == Rel::Le ? cmp <= 0 : c.rel == Rel::Ge ? cmp >= 0 : cmp == 0;
    if (!ok) {
      out.satisfied = false;
      out.violated.push_back(i);
    } else if (cmp == 0) {
      out.tight.push_back(i);
    }
  }
  for (int v = 0; v < p.num_vars(); ++v) {
    if (point[v] < p.lower(v) || (p.upper(v) && point[v] > *p.upper(v))) {
      out.satisfied = false;
      out.violated.push_back(p.num_constraints() + v);  // bound pseudo-index
    }
  }
  return out;
}

int rational_rank(std::vector<std::vector<Rat>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const int ncols = static_cast<int>(rows[0].size());
  for (int c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (sgn(rows[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rat f = rows[r][c] / rows[rank][c];
      for (int cc = c; cc < ncols; ++cc) rows[r][cc] -= f * rows[rank][cc];
    }
    ++rank;
  }
  return rank;
}

bool vertex_rank_check(const Problem& region, const std::vector<Rat>& point, int dim) {
  PointCheck pc = check_point(region, point);
  if (!pc.satisfied)
    throw std::invalid_argument("vertex_rank_check: point violates the region");
  std::vector<std::vector<Rat>> normals;
  for (int idx : pc.tight) {
    std::vector<Rat> row(region.num_vars(), 0);
    for (const auto& t : region.constraints()[idx].terms) row[t.var] += t.coeff;
    normals.push_back(std::move(row));
  }
  for (int v = 0; v < region.num_vars(); ++v) {
    const bool at_lower = point[v] == region.lower(v);
    const bool at_upper = region.upper(v) && point[v] == *region.upper(v);
    if (at_lower || at_upper) {
      std::vector<Rat> row(region.num_vars(), 0);
      row[v] = 1;
      normals.push_back(std::move(row));
    }
  }
  return rational_rank(std::move(normals)) == dim;
}

}  // namespace pic::lp
