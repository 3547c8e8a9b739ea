#include "tfb/lp.hpp"

#include <algorithm>
#include <sstream>

namespace tfb::lp {

void LpModel::check_var(int var) const {
  if (var < 0 || var >= num_variables())
    throw Error("LP term references undeclared variable " + std::to_string(var));
}

int LpModel::add_variable(std::optional<Rational> lower, std::optional<Rational> upper) {
  if (lower && upper && *lower > *upper)
    throw Error("LP variable with lower bound above upper bound");
  lower_.push_back(std::move(lower));
  upper_.push_back(std::move(upper));
  return num_variables() - 1;
}

void LpModel::set_variable_bounds(int var, std::optional<Rational> lower,
                                  std::optional<Rational> upper) {
  check_var(var);
  if (lower && upper && *lower > *upper)
    throw Error("LP variable with lower bound above upper bound");
  lower_[var] = std::move(lower);
  upper_[var] = std::move(upper);
}

int LpModel::add_row(Row row) {
  for (const Term& t : row.terms) check_var(t.var);
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void LpModel::set_objective(Sense sense, std::vector<Term> terms) {
  for (const Term& t : terms) check_var(t.var);
  sense_ = sense;
  objective_ = std::move(terms);
}

std::string LpModel::to_text() const {
  std::ostringstream os;
  os << (sense_ == Sense::maximize ? "max" : "min");
  for (const Term& t : objective_) os << " " << t.coeff.str() << "*x" << t.var;
  os << "\n";
  for (int i = 0; i < num_rows(); ++i) {
    const Row& r = rows_[i];
    os << "r" << i << ":";
    for (const Term& t : r.terms) os << " " << t.coeff.str() << "*x" << t.var;
    os << (r.rel == Rel::le ? " <= " : r.rel == Rel::ge ? " >= " : " == ") << r.rhs.str() << "\n";
  }
  for (int j = 0; j < num_variables(); ++j) {
    os << "x" << j << " in [" << (lower_[j] ? lower_[j]->str() : "-inf") << ", "
       << (upper_[j] ? upper_[j]->str() : "+inf") << "]\n";
  }
  return os.str();
}

namespace {

enum class VarState { basic, at_lower, at_upper, free_at_zero };

// Dense two-phase bounded-variable simplex working on an equality tableau.
// Column layout: structural vars, slacks for inequality rows, artificials
// (one per row). Pivot selection follows Bland's rule with a fixed column
// order, so the whole computation is deterministic.
class Simplex {
 public:
  explicit Simplex(const LpModel& model) : model_(model) { build(); }

  LpResult run() {
    LpResult result;
    // Phase 1: maximize -sum(artificials).
    {
      std::vector<Rational> cost(total_, Rational(0));
      for (int k = 0; k < nrows_; ++k) cost[art0_ + k] = Rational(-1);
      set_objective_row(cost);
      const PhaseEnd end = pivot_loop();
      TFB_CHECK(end == PhaseEnd::optimal, "phase 1 cannot be unbounded");
      Rational infeas(0);
      for (int k = 0; k < nrows_; ++k) infeas += val_[art0_ + k];
      if (infeas.sign() > 0) {
        result.status = Status::infeasible;
        result.farkas = extract_farkas();
        result.pivots = pivots_;
        TFB_CHECK(farkas_proves_infeasible(model_, result.farkas),
                  "computed Farkas certificate failed exact verification");
        return result;
      }
      drive_out_artificials();
    }
    // Phase 2: the real objective.
    {
      std::vector<Rational> cost(total_, Rational(0));
      const Rational flip(model_.sense() == Sense::maximize ? 1 : -1);
      for (const Term& t : model_.objective()) cost[t.var] += flip * t.coeff;
      set_objective_row(cost);
      const PhaseEnd end = pivot_loop();
      if (end == PhaseEnd::unbounded) {
        result.status = Status::unbounded;
        result.pivots = pivots_;
        return result;
      }
    }
    result.status = Status::optimal;
    result.point.assign(val_.begin(), val_.begin() + model_.num_variables());
    result.value = Rational(0);
    for (const Term& t : model_.objective()) result.value += t.coeff * result.point[t.var];
    result.pivots = pivots_;
    return result;
  }

 private:
  enum class PhaseEnd { optimal, unbounded };

  void build() {
    const int n = model_.num_variables();
    nrows_ = model_.num_rows();

    lo_.assign(n, std::nullopt);
    up_.assign(n, std::nullopt);
    for (int j = 0; j < n; ++j) {
      lo_[j] = model_.lower(j);
      up_[j] = model_.upper(j);
    }
    // Slacks: a*x + s = b with s >= 0 for <=, s <= 0 for >=.
    slack_of_.assign(nrows_, -1);
    for (int i = 0; i < nrows_; ++i) {
      if (model_.row(i).rel == Rel::eq) continue;
      slack_of_[i] = static_cast<int>(lo_.size());
      if (model_.row(i).rel == Rel::le) {
        lo_.push_back(Rational(0));
        up_.push_back(std::nullopt);
      } else {
        lo_.push_back(std::nullopt);
        up_.push_back(Rational(0));
      }
    }
    art0_ = static_cast<int>(lo_.size());
    for (int i = 0; i < nrows_; ++i) {
      lo_.push_back(Rational(0));
      up_.push_back(std::nullopt);
    }
    total_ = static_cast<int>(lo_.size());

    // Initial nonbasic values: finite lower preferred, then finite upper,
    // else free at zero.
    state_.assign(total_, VarState::at_lower);
    val_.assign(total_, Rational(0));
    for (int j = 0; j < total_; ++j) {
      if (lo_[j]) {
        state_[j] = VarState::at_lower;
        val_[j] = *lo_[j];
      } else if (up_[j]) {
        state_[j] = VarState::at_upper;
        val_[j] = *up_[j];
      } else {
        state_[j] = VarState::free_at_zero;
        val_[j] = Rational(0);
      }
    }

    // Tableau rows: sigma * (A x + s + sigma a = b) so that the artificial
    // column is +1 and the artificial starts basic at |residual|.
    tab_.assign(nrows_, std::vector<Rational>(total_, Rational(0)));
    rhs_.assign(nrows_, Rational(0));
    basis_.assign(nrows_, -1);
    for (int i = 0; i < nrows_; ++i) {
      const Row& row = model_.row(i);
      Rational residual = row.rhs;
      for (const Term& t : row.terms) {
        tab_[i][t.var] += t.coeff;
        residual -= t.coeff * val_[t.var];
      }
      if (slack_of_[i] >= 0) {
        tab_[i][slack_of_[i]] = Rational(1);
        residual -= val_[slack_of_[i]];
      }
      const int sigma = residual.sign() >= 0 ? 1 : -1;
      if (sigma < 0) {
        for (Rational& c : tab_[i]) c = -c;
        rhs_[i] = -row.rhs;
      } else {
        rhs_[i] = row.rhs;
      }
      sigma_.push_back(sigma);
      tab_[i][art0_ + i] = Rational(1);
      basis_[i] = art0_ + i;
      state_[art0_ + i] = VarState::basic;
      val_[art0_ + i] = sigma < 0 ? -residual : residual;
    }
  }

  bool is_fixed(int j) const { return lo_[j] && up_[j] && *lo_[j] == *up_[j]; }

  void set_objective_row(const std::vector<Rational>& cost) {
    d_ = cost;
    for (int i = 0; i < nrows_; ++i) {
      const Rational f = d_[basis_[i]];
      if (f.is_zero()) continue;
      for (int j = 0; j < total_; ++j)
        if (!tab_[i][j].is_zero()) d_[j] -= f * tab_[i][j];
    }
  }

  // Least-index eligible entering variable; returns (var, direction) or
  // var = -1 when the phase is optimal.
  std::pair<int, int> pick_entering() const {
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::basic || is_fixed(j)) continue;
      const int s = d_[j].sign();
      if (s == 0) continue;
      if (state_[j] == VarState::at_lower && s > 0) return {j, +1};
      if (state_[j] == VarState::at_upper && s < 0) return {j, -1};
      if (state_[j] == VarState::free_at_zero) return {j, s > 0 ? +1 : -1};
    }
    return {-1, 0};
  }

  PhaseEnd pivot_loop() {
    for (;;) {
      const auto [enter, dir] = pick_entering();
      if (enter < 0) return PhaseEnd::optimal;

      // Ratio test: how far the entering variable can move.
      bool limited = false;
      Rational theta(0);
      int leave_row = -1;      // -1 means the entering variable's own bound
      int leave_to_upper = 0;  // bound the leaving basic variable reaches
      if (lo_[enter] && up_[enter]) {
        limited = true;
        theta = *up_[enter] - *lo_[enter];
      }
      for (int i = 0; i < nrows_; ++i) {
        const Rational slope = -tab_[i][enter] * Rational(dir);
        const int s = slope.sign();
        if (s == 0) continue;
        const int bvar = basis_[i];
        std::optional<Rational> limit;
        if (s < 0 && lo_[bvar]) limit = (val_[bvar] - *lo_[bvar]) / (-slope);
        if (s > 0 && up_[bvar]) limit = (*up_[bvar] - val_[bvar]) / slope;
        if (!limit) continue;
        // Bland: strictly shorter ratio wins; among equal ratios the row
        // whose basic variable has the least index wins. A tie with the
        // entering variable's own bound span stays a bound flip.
        if (!limited || *limit < theta) {
          limited = true;
          theta = *limit;
          leave_row = i;
          leave_to_upper = s > 0 ? 1 : 0;
        } else if (*limit == theta && leave_row >= 0 && basis_[i] < basis_[leave_row]) {
          leave_row = i;
          leave_to_upper = s > 0 ? 1 : 0;
        }
      }
      if (!limited) return PhaseEnd::unbounded;

      ++pivots_;
      TFB_CHECK(pivots_ < 50'000'000, "simplex pivot safety cap exceeded");

      if (leave_row < 0) {
        // Bound flip: entering variable jumps to its other bound.
        for (int i = 0; i < nrows_; ++i) {
          const Rational slope = -tab_[i][enter] * Rational(dir);
          if (!slope.is_zero()) val_[basis_[i]] += slope * theta;
        }
        val_[enter] += Rational(dir) * theta;
        state_[enter] = dir > 0 ? VarState::at_upper : VarState::at_lower;
        continue;
      }

      // Basis exchange.
      for (int i = 0; i < nrows_; ++i) {
        if (i == leave_row) continue;
        const Rational slope = -tab_[i][enter] * Rational(dir);
        if (!slope.is_zero()) val_[basis_[i]] += slope * theta;
      }
      const int leave = basis_[leave_row];
      val_[leave] = leave_to_upper ? *up_[leave] : *lo_[leave];
      state_[leave] = leave_to_upper ? VarState::at_upper : VarState::at_lower;
      val_[enter] += Rational(dir) * theta;
      pivot(leave_row, enter);
    }
  }

  void pivot(int prow, int pcol) {
    const Rational piv = tab_[prow][pcol];
    TFB_CHECK(!piv.is_zero(), "pivot on zero element");
    if (piv != Rational(1)) {
      for (Rational& c : tab_[prow]) c /= piv;
      rhs_[prow] /= piv;
    }
    for (int i = 0; i < nrows_; ++i) {
      if (i == prow) continue;
      const Rational f = tab_[i][pcol];
      if (f.is_zero()) continue;
      for (int j = 0; j < total_; ++j)
        if (!tab_[prow][j].is_zero()) tab_[i][j] -= f * tab_[prow][j];
      rhs_[i] -= f * rhs_[prow];
    }
    {
      const Rational f = d_[pcol];
      if (!f.is_zero())
        for (int j = 0; j < total_; ++j)
          if (!tab_[prow][j].is_zero()) d_[j] -= f * tab_[prow][j];
    }
    basis_[prow] = pcol;
    state_[pcol] = VarState::basic;
  }

  // After a feasible phase 1, remove artificials from the basis where
  // possible and freeze them at zero so they can never re-enter.
  void drive_out_artificials() {
    for (int i = 0; i < nrows_; ++i) {
      if (basis_[i] < art0_) continue;
      TFB_CHECK(val_[basis_[i]].is_zero(), "basic artificial with nonzero value after phase 1");
      int enter = -1;
      for (int j = 0; j < art0_; ++j) {
        if (state_[j] == VarState::basic) continue;
        if (!tab_[i][j].is_zero()) {
          enter = j;
          break;
        }
      }
      if (enter < 0) continue;  // redundant row; the artificial stays pinned at 0
      const int leave = basis_[i];
      state_[leave] = VarState::at_lower;
      val_[leave] = Rational(0);
      pivot(i, enter);
      // Degenerate swap: the entering variable keeps its current value,
      // which equals the row's implied value because the artificial was 0.
    }
    for (int k = 0; k < nrows_; ++k) {
      lo_[art0_ + k] = Rational(0);
      up_[art0_ + k] = Rational(0);
    }
  }

  // Row multipliers proving infeasibility, recovered from the phase-1
  // reduced costs under the artificial columns. For artificial i the scaled
  // initial column is e_i, so d[a_i] = -1 - y_i where y are the multipliers
  // against the scaled rows; unscaling gives pi_i = sigma_i * y_i.
  std::vector<Rational> extract_farkas() const {
    std::vector<Rational> pi(nrows_, Rational(0));
    for (int i = 0; i < nrows_; ++i) {
      const Rational y = Rational(-1) - d_[art0_ + i];
      pi[i] = sigma_[i] < 0 ? -y : y;
    }
    return pi;
  }

  const LpModel& model_;
  int nrows_ = 0;
  int art0_ = 0;
  int total_ = 0;
  std::vector<std::optional<Rational>> lo_, up_;
  std::vector<int> slack_of_;
  std::vector<int> sigma_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  std::vector<Rational> val_;
  std::vector<Rational> d_;
  long pivots_ = 0;
};

}  // namespace

LpResult solve(const LpModel& model) {
  Simplex s(model);
  return s.run();
}

LpResult add_rows_and_resolve(LpModel& model, const std::vector<Row>& rows) {
  for (const Row& r : rows) model.add_row(r);
  return solve(model);
}

bool farkas_proves_infeasible(const LpModel& model, const std::vector<Rational>& multipliers) {
  if (static_cast<int>(multipliers.size()) != model.num_rows()) return false;
  for (int i = 0; i < model.num_rows(); ++i) {
    const int s = multipliers[i].sign();
    if (model.row(i).rel == Rel::le && s < 0) return false;
    if (model.row(i).rel == Rel::ge && s > 0) return false;
  }
  std::vector<Rational> h(model.num_variables(), Rational(0));
  Rational bound(0);
  for (int i = 0; i < model.num_rows(); ++i) {
    if (multipliers[i].is_zero()) continue;
    for (const Term& t : model.row(i).terms) h[t.var] += multipliers[i] * t.coeff;
    bound += multipliers[i] * model.row(i).rhs;
  }
  // Every feasible x satisfies h.x <= bound; contradiction if even the box
  // minimum of h.x exceeds the bound.
  Rational minimum(0);
  for (int j = 0; j < model.num_variables(); ++j) {
    const int s = h[j].sign();
    if (s > 0) {
      if (!model.lower(j)) return false;
      minimum += h[j] * *model.lower(j);
    } else if (s < 0) {
      if (!model.upper(j)) return false;
      minimum += h[j] * *model.upper(j);
    }
  }
  return minimum > bound;
}

}  // namespace tfb::lp
