#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pic/rational.hpp"

namespace pic::lp {

enum class Rel { Le, Ge, Eq };

struct Term {
  int var;
  Rat coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Rel rel = Rel::Le;
  Rat rhs = 0;
  std::string label;
};

/// Exact rational linear program, minimization form. Variables default to
/// lower bound 0 and no upper bound.
class Problem {
 public:
  int add_var(std::string name = "", Rat lower = 0, std::optional<Rat> upper = std::nullopt);
  void set_objective(int var, const Rat& coeff);
  int add_constraint(std::vector<Term> terms, Rel rel, Rat rhs, std::string label = "");

  int num_vars() const { return static_cast<int>(lower_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Rat& objective(int var) const { return objective_[var]; }
  const Rat& lower(int var) const { return lower_[var]; }
  const std::optional<Rat>& upper(int var) const { return upper_[var]; }
  const std::string& name(int var) const { return names_[var]; }
  int var_by_name(const std::string& name) const;  // -1 when absent

  /// Plain-text rendering for debugging; not a stable interface.
  std::string dump() const;

 private:
  std::vector<std::string> names_;
  std::vector<Rat> objective_;
  std::vector<Rat> lower_;
  std::vector<std::optional<Rat>> upper_;
  std::vector<Constraint> constraints_;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rat value = 0;               // objective at optimum
  std::vector<Rat> point;      // one value per variable when optimal
  std::map<std::string, Rat> named_point(const Problem& p) const;
};

/// Two-phase primal simplex with Bland's anti-cycling rule; all arithmetic
/// exact. Deterministic: identical problems yield identical results.
Result solve(const Problem& p);

struct PointCheck {
  bool satisfied = false;
  std::vector<int> violated;  // constraint indices
  std::vector<int> tight;     // constraint indices met with equality
};

/// Exact evaluation of a point against every constraint (bounds are checked
/// for satisfaction but reported separately via vertex_rank_check).
PointCheck check_point(const Problem& p, const std::vector<Rat>& point);

/// True iff the tight constraints at `point` (including tight variable
/// bounds) have normals of rank `dim` over the rationals. Throws if the
/// point violates the region.
bool vertex_rank_check(const Problem& region, const std::vector<Rat>& point, int dim);

/// Rank over Q of a dense matrix given as rows.
int rational_rank(std::vector<std::vector<Rat>> rows);

}  // namespace pic::lp
