#pragma once

// Dense two-phase simplex for the small linear programs that drive the
// solver: hull membership, maximin responses, verification systems and
// concavification.  Bland's rule is used for both the entering and the
// leaving variable, which rules out cycling and makes every solve
// deterministic for identical input.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace persuasion::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Rel { LE, EQ, GE };

struct Row {
  std::vector<double> a;
  Rel rel = Rel::LE;
  double b = 0.0;
};

struct LinearProgram {
  std::size_t n = 0;            // variable count
  std::vector<double> c;        // objective (empty means all zero)
  bool maximize = true;
  std::vector<Row> rows;
  std::vector<double> lower;    // empty means all zero
  std::vector<double> upper;    // empty means all +inf
  double feas_tol = 1e-9;

  void add_row(std::vector<double> a, Rel rel, double b) {
    rows.push_back(Row{std::move(a), rel, b});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct LpResult {
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> x;        // primal solution in original variables
  std::vector<double> duals;    // one multiplier per input row
};

// Global solve counter, surfaced in CLI diagnostics.
inline std::atomic<std::uint64_t>& solve_counter() {
  static std::atomic<std::uint64_t> n{0};
  return n;
}

namespace detail {

inline constexpr double kOptEps = 1e-10;   // reduced cost threshold
inline constexpr double kPivEps = 1e-11;   // smallest usable pivot

// Internal column bookkeeping for the bound transformation.
enum class VarMode { ShiftPos, ShiftNeg, Split };

struct VarMap {
  VarMode mode = VarMode::ShiftPos;
  double shift = 0.0;
  std::size_t col = 0;          // first internal column
};

class Simplex {
 public:
  explicit Simplex(const LinearProgram& prog) : prog_(prog) {
    validate();
    transform_variables();
    build_rows();
    build_tableau();
  }

  LpResult run() {
    LpResult res;
    // Phase one: minimize the artificial total.
    std::vector<double> cost1(n_cols_, 0.0);
    for (std::size_t j = art_begin_; j < n_cols_; ++j) cost1[j] = 1.0;
    make_reduced(cost1);
    if (!iterate(cost1, /*allow_artificial=*/true)) {
      throw std::runtime_error("lp: phase one reported unbounded");
    }
    if (-cost1.back() > prog_.feas_tol) {
      res.status = Status::Infeasible;
      return res;
    }
    expel_artificials(cost1);

    // Phase two: the real objective over internal columns.
    std::vector<double> cost2(n_cols_, 0.0);
    for (std::size_t j = 0; j < internal_c_.size(); ++j) cost2[j] = internal_c_[j];
    make_reduced(cost2);
    if (!iterate(cost2, /*allow_artificial=*/false)) {
      res.status = Status::Unbounded;
      return res;
    }

    res.status = Status::Optimal;
    res.x = recover_primal();
    res.value = 0.0;
    if (!prog_.c.empty()) {
      for (std::size_t j = 0; j < prog_.n; ++j) res.value += prog_.c[j] * res.x[j];
    }
    res.duals = recover_duals(cost2);
    return res;
  }

 private:
  const LinearProgram& prog_;
  std::vector<VarMap> vmap_;
  std::size_t n_internal_ = 0;
  std::vector<double> internal_c_;              // phase-two cost on internal columns

  // normalized rows: coefficients over internal columns, all with rhs >= 0
  struct NRow {
    std::vector<double> a;
    Rel rel;
    double b;
    int orig = -1;             // index of the source row, -1 for bound rows
    bool flipped = false;
  };
  std::vector<NRow> nrows_;

  std::vector<std::vector<double>> t_;          // tableau rows, rhs last
  std::vector<std::size_t> basis_;
  std::size_t n_cols_ = 0;                      // structural columns (no rhs)
  std::size_t slack_begin_ = 0;
  std::size_t art_begin_ = 0;
  std::vector<int> row_of_orig_;                // normalized row index per original row, -1 if dropped

  void validate() const {
    if (prog_.n == 0) throw std::invalid_argument("lp: empty program");
    if (!prog_.c.empty() && prog_.c.size() != prog_.n)
      throw std::invalid_argument("lp: objective size mismatch");
    if (!prog_.lower.empty() && prog_.lower.size() != prog_.n)
      throw std::invalid_argument("lp: lower bound size mismatch");
    if (!prog_.upper.empty() && prog_.upper.size() != prog_.n)
      throw std::invalid_argument("lp: upper bound size mismatch");
    for (const Row& r : prog_.rows) {
      if (r.a.size() != prog_.n) throw std::invalid_argument("lp: row size mismatch");
      if (!std::isfinite(r.b)) throw std::invalid_argument("lp: non-finite rhs");
      for (double v : r.a)
        if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite coefficient");
    }
    for (std::size_t j = 0; j < prog_.n; ++j) {
      const double lo = prog_.lower.empty() ? 0.0 : prog_.lower[j];
      const double hi = prog_.upper.empty() ? kInf : prog_.upper[j];
      if (lo > hi) throw std::invalid_argument("lp: crossed bounds");
    }
  }

  void transform_variables() {
    vmap_.resize(prog_.n);
    internal_c_.clear();
    const double sense = prog_.maximize ? -1.0 : 1.0;   // internal problem minimizes
    for (std::size_t j = 0; j < prog_.n; ++j) {
      const double lo = prog_.lower.empty() ? 0.0 : prog_.lower[j];
      const double hi = prog_.upper.empty() ? kInf : prog_.upper[j];
      const double cj = prog_.c.empty() ? 0.0 : prog_.c[j];
      VarMap m;
      m.col = n_internal_;
      if (std::isfinite(lo)) {
        m.mode = VarMode::ShiftPos;
        m.shift = lo;
        internal_c_.push_back(sense * cj);
        n_internal_ += 1;
      } else if (std::isfinite(hi)) {
        m.mode = VarMode::ShiftNeg;     // x = hi - y
        m.shift = hi;
        internal_c_.push_back(-sense * cj);
        n_internal_ += 1;
      } else {
        m.mode = VarMode::Split;        // x = y+ - y-
        internal_c_.push_back(sense * cj);
        internal_c_.push_back(-sense * cj);
        n_internal_ += 2;
      }
      vmap_[j] = m;
    }
  }

  // Coefficient of original variable j expressed on its internal columns.
  void scatter(std::vector<double>& dst, std::size_t j, double coeff) const {
    const VarMap& m = vmap_[j];
    switch (m.mode) {
      case VarMode::ShiftPos: dst[m.col] += coeff; break;
      case VarMode::ShiftNeg: dst[m.col] -= coeff; break;
      case VarMode::Split:
        dst[m.col] += coeff;
        dst[m.col + 1] -= coeff;
        break;
    }
  }

  void build_rows() {
    row_of_orig_.assign(prog_.rows.size(), -1);
    for (std::size_t i = 0; i < prog_.rows.size(); ++i) {
      const Row& r = prog_.rows[i];
      NRow nr;
      nr.a.assign(n_internal_, 0.0);
      nr.rel = r.rel;
      nr.orig = static_cast<int>(i);
      // Both shift modes move the bound into the rhs: x = lo + y and
      // x = hi - y each contribute a_j * shift to the left side.
      double b = r.b;
      for (std::size_t j = 0; j < prog_.n; ++j) {
        if (r.a[j] == 0.0) continue;
        scatter(nr.a, j, r.a[j]);
        if (vmap_[j].mode != VarMode::Split) b -= r.a[j] * vmap_[j].shift;
      }
      nr.b = b;
      nrows_.push_back(std::move(nr));
    }
    // Upper bounds on shifted variables become explicit rows.
    for (std::size_t j = 0; j < prog_.n; ++j) {
      const double lo = prog_.lower.empty() ? 0.0 : prog_.lower[j];
      const double hi = prog_.upper.empty() ? kInf : prog_.upper[j];
      if (vmap_[j].mode == VarMode::ShiftPos && std::isfinite(hi)) {
        NRow nr;
        nr.a.assign(n_internal_, 0.0);
        nr.a[vmap_[j].col] = 1.0;
        nr.rel = Rel::LE;
        nr.b = hi - lo;
        nrows_.push_back(std::move(nr));
      }
    }
    // Normalize to nonnegative rhs.
    for (NRow& nr : nrows_) {
      if (nr.b < 0.0) {
        for (double& v : nr.a) v = -v;
        nr.b = -nr.b;
        nr.flipped = true;
        if (nr.rel == Rel::LE) nr.rel = Rel::GE;
        else if (nr.rel == Rel::GE) nr.rel = Rel::LE;
      }
    }
  }

  void build_tableau() {
    const std::size_t m = nrows_.size();
    std::size_t n_slack = 0, n_art = 0;
    for (const NRow& nr : nrows_) {
      if (nr.rel != Rel::EQ) n_slack += 1;
      if (nr.rel != Rel::LE) n_art += 1;
    }
    slack_begin_ = n_internal_;
    art_begin_ = n_internal_ + n_slack;
    n_cols_ = art_begin_ + n_art;

    t_.assign(m, std::vector<double>(n_cols_ + 1, 0.0));
    basis_.assign(m, 0);

    std::size_t s = slack_begin_, a = art_begin_;
    for (std::size_t i = 0; i < m; ++i) {
      const NRow& nr = nrows_[i];
      for (std::size_t j = 0; j < n_internal_; ++j) t_[i][j] = nr.a[j];
      t_[i][n_cols_] = nr.b;
      switch (nr.rel) {
        case Rel::LE:
          t_[i][s] = 1.0;
          basis_[i] = s;
          ++s;
          break;
        case Rel::GE:
          t_[i][s] = -1.0;
          ++s;
          t_[i][a] = 1.0;
          basis_[i] = a;
          ++a;
          break;
        case Rel::EQ:
          t_[i][a] = 1.0;
          basis_[i] = a;
          ++a;
          break;
      }
      if (nr.orig >= 0) row_of_orig_[static_cast<std::size_t>(nr.orig)] = static_cast<int>(i);
    }
  }

  // Reduce a raw cost vector against the current basis; the last entry
  // carries minus the objective value.
  void make_reduced(std::vector<double>& cost) const {
    cost.resize(n_cols_ + 1, 0.0);
    cost[n_cols_] = 0.0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const double cb = cost[basis_[i]];
      if (cb != 0.0) {
        for (std::size_t j = 0; j <= n_cols_; ++j) cost[j] -= cb * t_[i][j];
      }
    }
  }

  void pivot(std::size_t row, std::size_t col, std::vector<double>& cost) {
    std::vector<double>& pr = t_[row];
    const double inv = 1.0 / pr[col];
    for (double& v : pr) v *= inv;
    pr[col] = 1.0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_cols_; ++j) t_[i][j] -= f * pr[j];
      t_[i][col] = 0.0;
    }
    const double fc = cost[col];
    if (fc != 0.0) {
      for (std::size_t j = 0; j <= n_cols_; ++j) cost[j] -= fc * pr[j];
      cost[col] = 0.0;
    }
    basis_[row] = col;
  }

  // Bland: smallest eligible entering column, smallest basis index on ratio ties.
  bool iterate(std::vector<double>& cost, bool allow_artificial) {
    const std::size_t limit = 2000 + 200 * (t_.size() + n_cols_);
    for (std::size_t it = 0; it < limit; ++it) {
      std::size_t enter = n_cols_;
      const std::size_t scan_end = allow_artificial ? n_cols_ : art_begin_;
      for (std::size_t j = 0; j < scan_end; ++j) {
        if (cost[j] < -kOptEps) { enter = j; break; }
      }
      if (enter == n_cols_) return true;   // optimal

      std::size_t leave = t_.size();
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        const double aij = t_[i][enter];
        if (aij > kPivEps) {
          const double ratio = t_[i][n_cols_] / aij;
          if (leave == t_.size() || ratio < best_ratio - 1e-12 ||
              (std::abs(ratio - best_ratio) <= 1e-12 && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave == t_.size()) return false;   // unbounded direction
      pivot(leave, enter, cost);
    }
    throw std::runtime_error("lp: iteration limit exceeded");
  }

  // After phase one, no artificial may stay basic: pivot it onto a structural
  // column when the row has one, otherwise the row is redundant and dropped.
  void expel_artificials(std::vector<double>& cost1) {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < art_begin_) { ++i; continue; }
      std::size_t enter = n_cols_;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (std::abs(t_[i][j]) > 1e-9) { enter = j; break; }
      }
      if (enter != n_cols_) {
        pivot(i, enter, cost1);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        for (int& r : row_of_orig_) {
          if (r == static_cast<int>(i)) r = -1;
          else if (r > static_cast<int>(i)) r -= 1;
        }
      }
    }
  }

  std::vector<double> recover_primal() const {
    std::vector<double> y(n_cols_, 0.0);
    for (std::size_t i = 0; i < t_.size(); ++i) y[basis_[i]] = t_[i][n_cols_];
    std::vector<double> x(prog_.n, 0.0);
    for (std::size_t j = 0; j < prog_.n; ++j) {
      const VarMap& m = vmap_[j];
      switch (m.mode) {
        case VarMode::ShiftPos: x[j] = m.shift + y[m.col]; break;
        case VarMode::ShiftNeg: x[j] = m.shift - y[m.col]; break;
        case VarMode::Split: x[j] = y[m.col] - y[m.col + 1]; break;
      }
    }
    return x;
  }

  // Row multipliers read off the final reduced costs of each row's slack or
  // artificial column, mapped back through sign flips and the outer sense.
  std::vector<double> recover_duals(const std::vector<double>& cost2) const {
    std::vector<double> duals(prog_.rows.size(), 0.0);
    for (std::size_t i = 0; i < prog_.rows.size(); ++i) {
      const int nrow = row_of_orig_[i];
      if (nrow < 0) continue;
      // Find the normalized-row record to learn flip state and dual column.
      const NRow* rec = nullptr;
      for (const NRow& nr : nrows_) {
        if (nr.orig == static_cast<int>(i)) { rec = &nr; break; }
      }
      if (rec == nullptr) continue;
      const int col = row_dual_col_by_orig(i);
      if (col < 0) continue;
      double pi;
      if (static_cast<std::size_t>(col) >= art_begin_) {
        pi = -cost2[static_cast<std::size_t>(col)];          // artificial column, +e_i
      } else if (rec->rel == Rel::GE) {
        pi = cost2[static_cast<std::size_t>(col)];           // surplus column, -e_i
      } else {
        pi = -cost2[static_cast<std::size_t>(col)];          // slack column, +e_i
      }
      if (rec->flipped) pi = -pi;
      if (prog_.maximize) pi = -pi;
      duals[i] = pi;
    }
    return duals;
  }

  // Columns are never deleted, so replaying the build-order counters gives
  // the slack/artificial column attached to an original row.
  int row_dual_col_by_orig(std::size_t orig) const {
    std::size_t s = slack_begin_, a = art_begin_;
    for (const NRow& nr : nrows_) {
      int dual_col = -1;
      switch (nr.rel) {
        case Rel::LE: dual_col = static_cast<int>(s); ++s; break;
        case Rel::GE: ++s; dual_col = static_cast<int>(a); ++a; break;
        case Rel::EQ: dual_col = static_cast<int>(a); ++a; break;
      }
      if (nr.orig == static_cast<int>(orig)) return dual_col;
    }
    return -1;
  }
};

}  // namespace detail

inline LpResult lp_solve(const LinearProgram& prog) {
  solve_counter().fetch_add(1, std::memory_order_relaxed);
  detail::Simplex s(prog);
  return s.run();
}

// Feasibility of a constraint system under default (or given) bounds.
inline std::optional<std::vector<double>> lp_feasible(
    std::size_t n, const std::vector<Row>& rows,
    const std::vector<double>& lower = {}, const std::vector<double>& upper = {},
    double feas_tol = 1e-9) {
  LinearProgram prog;
  prog.n = n;
  prog.rows = rows;
  prog.lower = lower;
  prog.upper = upper;
  prog.feas_tol = feas_tol;
  LpResult res = lp_solve(prog);
  if (res.status != Status::Optimal) return std::nullopt;
  return res.x;
}

}  // namespace persuasion::lp
