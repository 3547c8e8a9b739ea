#ifndef TFB_LP_HPP
#define TFB_LP_HPP

#include <optional>
#include <string>
#include <vector>

#include "tfb/rational.hpp"

namespace tfb::lp {

enum class Rel { le, eq, ge };
enum class Sense { maximize, minimize };
enum class Status { optimal, infeasible, unbounded };

struct Term {
  int var;
  Rational coeff;
};

struct Row {
  std::vector<Term> terms;
  Rel rel = Rel::le;
  Rational rhs;
};

/// Exact LP in bounded-variable form. Bounds may be absent on either side.
class LpModel {
 public:
  /// Returns the new variable's index.
  int add_variable(std::optional<Rational> lower, std::optional<Rational> upper);
  void set_variable_bounds(int var, std::optional<Rational> lower,
                           std::optional<Rational> upper);
  /// Returns the new row's index. Term variable indices must be declared.
  int add_row(Row row);
  void set_objective(Sense sense, std::vector<Term> terms);

  int num_variables() const { return static_cast<int>(lower_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Row& row(int i) const { return rows_[i]; }
  const std::optional<Rational>& lower(int var) const { return lower_[var]; }
  const std::optional<Rational>& upper(int var) const { return upper_[var]; }
  Sense sense() const { return sense_; }
  const std::vector<Term>& objective() const { return objective_; }

  /// Plain-text dump of the model, for debugging.
  std::string to_text() const;

 private:
  void check_var(int var) const;

  std::vector<std::optional<Rational>> lower_, upper_;
  std::vector<Row> rows_;
  Sense sense_ = Sense::maximize;
  std::vector<Term> objective_;
};

struct LpResult {
  Status status = Status::optimal;
  Rational value;                 // objective at the optimum (optimal only)
  std::vector<Rational> point;    // by variable (optimal only)
  std::vector<Rational> farkas;   // by row (infeasible only)
  long pivots = 0;

  const Rational& value_of(int var) const { return point[var]; }
};

/// Bounded-variable primal simplex with Bland's anti-cycling rule, two
/// phases, exact arithmetic throughout. Deterministic: identical models
/// produce identical results.
LpResult solve(const LpModel& model);

/// Appends rows to the model, then solves the extended model from scratch
/// (the correctness baseline; results match a cold solve by construction).
LpResult add_rows_and_resolve(LpModel& model, const std::vector<Row>& rows);

/// Exact verification that the multipliers prove the model infeasible:
/// sign-compatible per relation, and the aggregated inequality contradicts
/// the variable bounds.
bool farkas_proves_infeasible(const LpModel& model, const std::vector<Rational>& multipliers);

}  // namespace tfb::lp

#endif  // TFB_LP_HPP
