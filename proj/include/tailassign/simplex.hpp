#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

// Dense two-phase revised simplex for the restricted master problems of
// this project. Problems are stated as
//
//   min c^T x   s.t.   A_E x = b_E,  A_I x <= b_I,  x >= 0
//
// and solved with an explicit basis inverse, Dantzig pricing, and a switch
// to Bland's rule when degeneracy stalls progress. Master problems here
// are a few hundred rows, so dense linear algebra is the right tool.

namespace tailassign {

enum class RowSense { equal, less_equal };

struct LinearProgram {
  struct Row {
    RowSense sense;
    double rhs;
  };
  struct Entry {
    int row;
    double coef;
  };
  struct Column {
    double cost;
    std::vector<Entry> entries;
  };

  std::vector<Row> rows;
  std::vector<Column> columns;

  int add_row(RowSense sense, double rhs) {
    rows.push_back({sense, rhs});
    return static_cast<int>(rows.size()) - 1;
  }
  int add_column(double cost, std::vector<Entry> entries) {
    columns.push_back({cost, std::move(entries)});
    return static_cast<int>(columns.size()) - 1;
  }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct SimplexSolution {
  LpStatus status = LpStatus::iteration_limit;
  double objective = 0.0;
  std::vector<double> x;      // one value per user column
  std::vector<double> duals;  // one value per row
  // Final basis, one internal column per row: user columns as their index,
  // the slack of <= row r as -(r+2), anything else as -1. Feed it back via
  // basis_hint to warm-start after adding columns.
  std::vector<int> basis;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-9;
  int max_iterations = 200000;
  int bland_after = 5000;   // iterations of Dantzig pricing before Bland's rule
  int refactor_every = 64;  // rebuild the basis inverse periodically
  // Optional starting basis (one column index per row; -1 picks the row's
  // own slack, -(r+2) the slack of <= row r). Used when it is non-singular
  // and primal feasible, otherwise phase 1 runs as usual.
  std::vector<int> basis_hint;
};

namespace detail {

class SimplexSolver {
 public:
  SimplexSolver(const LinearProgram& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {
    m_ = static_cast<int>(lp.rows.size());
    n_user_ = static_cast<int>(lp.columns.size());
    build_internal_columns();
  }

  SimplexSolution run() {
    SimplexSolution sol;
    sol.x.assign(n_user_, 0.0);
    sol.duals.assign(m_, 0.0);

    if (m_ == 0) {
      // Only non-negativity: any negative cost is a ray.
      for (int j = 0; j < n_user_; ++j) {
        if (lp_.columns[j].cost < -opt_.cost_tolerance) {
          sol.status = LpStatus::unbounded;
          return sol;
        }
      }
      sol.status = LpStatus::optimal;
      return sol;
    }

    bool have_start = try_basis_hint();
    if (!have_start) {
      install_artificial_basis();
      if (!phase1(sol)) return sol;  // infeasible or iteration limit
    }

    // Phase 2 on the real objective; artificials may remain basic at zero
    // but are never allowed to enter again.
    for (int j = 0; j < n_internal_; ++j)
      cost_[j] = j < n_user_ ? lp_.columns[j].cost : 0.0;
    if (!iterate(sol, /*phase1=*/false)) return sol;

    extract(sol);
    sol.status = LpStatus::optimal;
    return sol;
  }

 private:
  const LinearProgram& lp_;
  SimplexOptions opt_;
  int m_ = 0, n_user_ = 0, n_internal_ = 0, first_artificial_ = 0;

  // Internal columns: user columns, then slacks for <= rows, then artificials.
  std::vector<std::vector<LinearProgram::Entry>> col_;
  std::vector<double> cost_;
  std::vector<double> rhs_;

  std::vector<int> basis_;      // basic column per row
  std::vector<char> in_basis_;  // per internal column
  std::vector<std::vector<double>> binv_;
  std::vector<double> xb_;
  int iterations_ = 0;
  int pivots_since_refactor_ = 0;

  void build_internal_columns() {
    col_.clear();
    rhs_.resize(m_);
    for (int i = 0; i < m_; ++i) rhs_[i] = lp_.rows[i].rhs;
    for (int j = 0; j < n_user_; ++j) {
      col_.push_back(lp_.columns[j].entries);
      for (const auto& e : col_.back())
        if (e.row < 0 || e.row >= m_) throw std::invalid_argument("column entry row out of range");
    }
    for (int i = 0; i < m_; ++i)
      if (lp_.rows[i].sense == RowSense::less_equal) col_.push_back({{i, 1.0}});
    first_artificial_ = static_cast<int>(col_.size());
    // One artificial per row, signed so its basic value is |rhs|.
    for (int i = 0; i < m_; ++i) col_.push_back({{i, rhs_[i] >= 0.0 ? 1.0 : -1.0}});
    n_internal_ = static_cast<int>(col_.size());
    cost_.assign(n_internal_, 0.0);
  }

  bool is_artificial(int j) const { return j >= first_artificial_; }

  void scatter(int j, std::vector<double>& dense) const {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (const auto& e : col_[j]) dense[e.row] += e.coef;
  }

  // direction = B^{-1} * column, with the column given densely.
  void apply_binv(const std::vector<double>& dense, std::vector<double>& direction) const {
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += binv_[i][k] * dense[k];
      direction[i] = v;
    }
  }

  bool refactorize() {
    // Gauss-Jordan on [B | I]; the row operations R with R*B = I are B^{-1}.
    std::vector<std::vector<double>> tab(m_, std::vector<double>(2 * m_, 0.0));
    for (int c = 0; c < m_; ++c)
      for (const auto& e : col_[basis_[c]]) tab[e.row][c] += e.coef;
    for (int i = 0; i < m_; ++i) tab[i][m_ + i] = 1.0;

    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = 1e-11;
      for (int r = c; r < m_; ++r)
        if (std::fabs(tab[r][c]) > best) {
          best = std::fabs(tab[r][c]);
          piv = r;
        }
      if (piv < 0) return false;  // singular basis
      std::swap(tab[c], tab[piv]);
      double p = tab[c][c];
      for (int k = 0; k < 2 * m_; ++k) tab[c][k] /= p;
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        double f = tab[r][c];
        if (f == 0.0) continue;
        for (int k = 0; k < 2 * m_; ++k) tab[r][k] -= f * tab[c][k];
      }
    }
    for (int i = 0; i < m_; ++i)
      for (int k = 0; k < m_; ++k) binv_[i][k] = tab[i][m_ + k];
    recompute_xb();
    pivots_since_refactor_ = 0;
    return true;
  }

  void recompute_xb() {
    apply_binv(rhs_, xb_);
    for (double& v : xb_)
      if (v < 0.0 && v > -1e-9) v = 0.0;
  }

  bool try_basis_hint() {
    if (static_cast<int>(opt_.basis_hint.size()) != m_) return false;
    std::vector<int> slack_of(m_, -1);
    {
      int s = n_user_;
      for (int i = 0; i < m_; ++i)
        if (lp_.rows[i].sense == RowSense::less_equal) slack_of[i] = s++;
    }
    basis_ = opt_.basis_hint;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] == -1) basis_[i] = slack_of[i];  // row's own slack
      else if (basis_[i] <= -2) {
        int row = -basis_[i] - 2;
        basis_[i] = (row >= 0 && row < m_) ? slack_of[row] : -1;
      }
      if (basis_[i] < 0 || basis_[i] >= first_artificial_) return false;
    }
    in_basis_.assign(n_internal_, 0);
    for (int j : basis_) {
      if (in_basis_[j]) return false;  // duplicate column in hint
      in_basis_[j] = 1;
    }
    binv_.assign(m_, std::vector<double>(m_, 0.0));
    xb_.assign(m_, 0.0);
    if (!refactorize()) return false;
    for (double v : xb_)
      if (v < -1e-7) return false;
    for (double& v : xb_)
      if (v < 0.0) v = 0.0;
    return true;
  }

  void install_artificial_basis() {
    basis_.resize(m_);
    in_basis_.assign(n_internal_, 0);
    // Prefer slacks where they are directly feasible.
    std::vector<int> slack_of(m_, -1);
    int s = n_user_;
    for (int i = 0; i < m_; ++i)
      if (lp_.rows[i].sense == RowSense::less_equal) slack_of[i] = s++;
    for (int i = 0; i < m_; ++i) {
      basis_[i] = (slack_of[i] >= 0 && rhs_[i] >= 0.0) ? slack_of[i] : first_artificial_ + i;
      in_basis_[basis_[i]] = 1;
    }
    binv_.assign(m_, std::vector<double>(m_, 0.0));
    xb_.assign(m_, 0.0);
    if (!refactorize()) throw std::logic_error("artificial basis must be non-singular");
  }

  bool phase1(SimplexSolution& sol) {
    for (int j = 0; j < n_internal_; ++j) cost_[j] = is_artificial(j) ? 1.0 : 0.0;
    if (!iterate(sol, /*phase1=*/true)) return false;
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i)
      if (is_artificial(basis_[i])) infeas += xb_[i];
    if (infeas > 1e-7) {
      sol.status = LpStatus::infeasible;
      sol.iterations = iterations_;
      return false;
    }
    drive_out_artificials();
    return true;
  }

  // Pivot remaining zero-level artificials out of the basis wherever some
  // non-artificial column has a usable pivot element in their row. A row
  // where no column does is redundant; its artificial stays basic at zero
  // and never moves again.
  void drive_out_artificials() {
    std::vector<double> dense(m_), direction(m_);
    for (int r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (in_basis_[j]) continue;
        scatter(j, dense);
        apply_binv(dense, direction);
        if (std::fabs(direction[r]) > 1e-7) {
          pivot(j, r, direction);
          break;
        }
      }
    }
  }

  // One simplex phase. Returns false when the status is already decided
  // (unbounded / iteration limit); infeasibility is phase 1's call.
  bool iterate(SimplexSolution& sol, bool phase1) {
    std::vector<double> y(m_), dense(m_), direction(m_);
    // Entering tolerance scaled to the cost magnitudes: with penalty-sized
    // coefficients an absolute 1e-9 chases roundoff noise forever.
    double cmax = 1.0;
    for (int j = 0; j < n_internal_; ++j) cmax = std::max(cmax, std::fabs(cost_[j]));
    const double enter_tol =
        std::max(opt_.cost_tolerance, std::min(1e-7, 1e-12 * cmax));
    const int bland_start = iterations_ + opt_.bland_after;
    while (true) {
      if (iterations_ >= opt_.max_iterations) {
        sol.status = LpStatus::iteration_limit;
        sol.iterations = iterations_;
        return false;
      }
      bool bland = iterations_ >= bland_start;

      // y = c_B B^{-1}.
      for (int k = 0; k < m_; ++k) {
        double v = 0.0;
        for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * binv_[i][k];
        y[k] = v;
      }

      int entering = -1;
      double best = -enter_tol;
      for (int j = 0; j < n_internal_; ++j) {
        if (in_basis_[j]) continue;
        if (is_artificial(j) && !phase1) continue;  // banned after phase 1
        double rc = cost_[j];
        for (const auto& e : col_[j]) rc -= y[e.row] * e.coef;
        if (rc < best) {
          entering = j;
          if (bland) break;  // first eligible index
          best = rc;
        }
      }
      if (entering < 0) {
        sol.iterations = iterations_;
        return true;  // priced out: optimal for this phase
      }

      scatter(entering, dense);
      apply_binv(dense, direction);

      // In phase 2 a leftover basic artificial must never grow; swap one
      // out on any nonzero pivot element as a degenerate step.
      int leaving = -1;
      if (!phase1) {
        for (int i = 0; i < m_; ++i) {
          if (is_artificial(basis_[i]) && std::fabs(direction[i]) > opt_.pivot_tolerance &&
              xb_[i] <= 1e-9) {
            leaving = i;
            break;
          }
        }
      }

      if (leaving < 0) {
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m_; ++i) {
          if (direction[i] <= opt_.pivot_tolerance) continue;
          double ratio = xb_[i] / direction[i];
          if (leaving < 0 || ratio < best_ratio - 1e-12) {
            best_ratio = ratio;
            leaving = i;
          } else if (ratio < best_ratio + 1e-12) {
            if (ratio < best_ratio) best_ratio = ratio;
            // Tie-break: Bland needs the lowest column index; otherwise
            // prefer evicting artificials.
            bool take;
            if (bland) {
              take = basis_[i] < basis_[leaving];
            } else if (is_artificial(basis_[i]) != is_artificial(basis_[leaving])) {
              take = is_artificial(basis_[i]);
            } else {
              take = basis_[i] < basis_[leaving];
            }
            if (take) leaving = i;
          }
        }
        if (leaving < 0) {
          sol.status = LpStatus::unbounded;
          sol.iterations = iterations_;
          return false;
        }
      }

      pivot(entering, leaving, direction);
      ++iterations_;
    }
  }

  // Replace basis_[leaving_row] by `entering`, direction = B^{-1} A_entering.
  void pivot(int entering, int leaving_row, const std::vector<double>& direction) {
    double p = direction[leaving_row];
    in_basis_[basis_[leaving_row]] = 0;
    basis_[leaving_row] = entering;
    in_basis_[entering] = 1;

    double step = xb_[leaving_row] / p;
    for (int i = 0; i < m_; ++i) {
      if (i == leaving_row) continue;
      xb_[i] -= step * direction[i];
      if (xb_[i] < 0.0 && xb_[i] > -1e-9) xb_[i] = 0.0;
    }
    xb_[leaving_row] = step;

    // Product-form update of the inverse.
    for (int k = 0; k < m_; ++k) binv_[leaving_row][k] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == leaving_row) continue;
      double f = direction[i];
      if (f == 0.0) continue;
      for (int k = 0; k < m_; ++k) binv_[i][k] -= f * binv_[leaving_row][k];
    }

    if (++pivots_since_refactor_ >= opt_.refactor_every) {
      if (!refactorize()) throw std::runtime_error("basis became singular");
    }
  }

  void extract(SimplexSolution& sol) {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_user_) sol.x[basis_[i]] = xb_[i] < 0.0 ? 0.0 : xb_[i];
    double obj = 0.0;
    for (int j = 0; j < n_user_; ++j) obj += lp_.columns[j].cost * sol.x[j];
    sol.objective = obj;
    for (int k = 0; k < m_; ++k) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * binv_[i][k];
      sol.duals[k] = v;
    }
    std::vector<int> row_of_slack(n_internal_, -1);
    {
      int s = n_user_;
      for (int i = 0; i < m_; ++i)
        if (lp_.rows[i].sense == RowSense::less_equal) row_of_slack[s++] = i;
    }
    sol.basis.resize(m_);
    for (int i = 0; i < m_; ++i) {
      int j = basis_[i];
      if (j < n_user_)
        sol.basis[i] = j;
      else if (j < first_artificial_)
        sol.basis[i] = -(row_of_slack[j] + 2);
      else
        sol.basis[i] = -1;  // leftover artificial: not reusable as a hint
    }
    sol.iterations = iterations_;
  }
};

}  // namespace detail

inline SimplexSolution solve_simplex(const LinearProgram& lp, const SimplexOptions& opt = {}) {
  detail::SimplexSolver solver(lp, opt);
  return solver.run();
}

}  // namespace tailassign
