#include "simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace oscm {

namespace {
constexpr double pivot_tol = 1e-9;
constexpr std::size_t npos = static_cast<std::size_t>(-1);
}  // namespace

simplex_solver::simplex_solver(std::size_t n_cols)
    : n_cols_(n_cols),
      cost_(n_cols, 0.0),
      lower_(n_cols, 0.0),
      upper_(n_cols, 1.0),
      col_entries_(n_cols),
      state_(n_cols, var_state::at_lower),
      values_(n_cols, 0.0) {}

void simplex_solver::set_cost(std::size_t col, double cost) {
    assert(col < n_cols_);
    cost_[col] = cost;
}

void simplex_solver::set_col_bounds(std::size_t col, double lo, double up) {
    assert(col < n_cols_ && lo <= up);
    lower_[col] = lo;
    upper_[col] = up;
    if (state_[col] != var_state::basic && lo == up) state_[col] = var_state::at_lower;
}

std::size_t simplex_solver::add_row(const std::vector<row_entry>& entries, double lo, double up) {
    assert(lo <= up);
    std::size_t row_id = rows_.size();
    std::size_t old_m = basic_var_.size();
    for (const auto& e : entries) {
        assert(e.col < n_cols_);
        col_entries_[e.col].push_back({row_id, e.coeff});
    }
    rows_.push_back(entries);
    lower_.push_back(lo);
    upper_.push_back(up);
    state_.push_back(var_state::basic);
    values_.push_back(0.0);

    // block extension of the inverse: with the new logical basic,
    // B' = [[B, 0], [r_B, -1]] gives B'^{-1} = [[B^{-1}, 0], [r_B B^{-1}, -1]]
    std::vector<double> r_b(old_m, 0.0);
    for (const auto& e : entries)
        if (state_[e.col] == var_state::basic)
            for (std::size_t pos = 0; pos < old_m; ++pos)
                if (basic_var_[pos] == e.col) {
                    r_b[pos] = e.coeff;
                    break;
                }
    std::size_t new_m = old_m + 1;
    std::vector<double> grown(new_m * new_m, 0.0);
    for (std::size_t i = 0; i < old_m; ++i)
        for (std::size_t j = 0; j < old_m; ++j) grown[i * new_m + j] = binv_[i * old_m + j];
    for (std::size_t j = 0; j < old_m; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < old_m; ++k) acc += r_b[k] * binv_[k * old_m + j];
        grown[old_m * new_m + j] = acc;
    }
    grown[old_m * new_m + old_m] = -1.0;
    binv_ = std::move(grown);
    basic_var_.push_back(n_cols_ + row_id);
    return row_id;
}

std::vector<double> simplex_solver::dual_prices() const {
    std::size_t m = basic_var_.size();
    std::vector<double> y(m, 0.0);
    for (std::size_t pos = 0; pos < m; ++pos) {
        std::size_t var = basic_var_[pos];
        double cb = var < n_cols_ ? cost_[var] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) y[j] += cb * binv_at(pos, j);
    }
    return y;
}

double simplex_solver::column_dot(const std::vector<double>& vec, std::size_t var) const {
    if (var < n_cols_) {
        double acc = 0.0;
        for (const auto& e : col_entries_[var]) acc += vec[e.col] * e.coeff;  // e.col = row id
        return acc;
    }
    return -vec[var - n_cols_];
}

void simplex_solver::snap_nonbasic_to_duals() {
    std::vector<double> y = dual_prices();
    std::size_t n_vars = n_cols_ + rows_.size();
    for (std::size_t var = 0; var < n_vars; ++var) {
        if (state_[var] == var_state::basic) continue;
        if (!movable(var)) {
            state_[var] = var_state::at_lower;
            continue;
        }
        double c = var < n_cols_ ? cost_[var] : 0.0;
        double d = c - column_dot(y, var);
        if (state_[var] == var_state::at_lower && d < -dual_tol)
            state_[var] = var_state::at_upper;
        else if (state_[var] == var_state::at_upper && d > dual_tol)
            state_[var] = var_state::at_lower;
    }
}

void simplex_solver::compute_values() {
    std::size_t m = basic_var_.size();
    std::size_t n_vars = n_cols_ + m;
    for (std::size_t var = 0; var < n_vars; ++var)
        if (state_[var] != var_state::basic) values_[var] = bound_value(var);
    std::vector<double> acc(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (const auto& e : rows_[i])
            if (state_[e.col] != var_state::basic) s += e.coeff * values_[e.col];
        if (state_[n_cols_ + i] != var_state::basic) s -= values_[n_cols_ + i];
        acc[i] = s;
    }
    for (std::size_t pos = 0; pos < m; ++pos) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s -= binv_at(pos, j) * acc[j];
        values_[basic_var_[pos]] = s;
    }
}

std::vector<double> simplex_solver::tableau_row(std::size_t pos) const {
    std::size_t m = basic_var_.size();
    std::size_t n_vars = n_cols_ + m;
    std::vector<double> alpha(n_vars, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double b = binv_at(pos, i);
        if (b == 0.0) continue;
        for (const auto& e : rows_[i]) alpha[e.col] += b * e.coeff;
        alpha[n_cols_ + i] -= b;
    }
    return alpha;
}

std::vector<double> simplex_solver::ftran(std::size_t var) const {
    std::size_t m = basic_var_.size();
    std::vector<double> w(m, 0.0);
    if (var < n_cols_) {
        for (const auto& e : col_entries_[var]) {
            double coeff = e.coeff;
            std::size_t row = e.col;
            for (std::size_t pos = 0; pos < m; ++pos) w[pos] += binv_at(pos, row) * coeff;
        }
    } else {
        std::size_t row = var - n_cols_;
        for (std::size_t pos = 0; pos < m; ++pos) w[pos] = -binv_at(pos, row);
    }
    return w;
}

void simplex_solver::pivot(std::size_t pos, std::size_t entering) {
    std::size_t m = basic_var_.size();
    std::vector<double> w = ftran(entering);
    double piv = w[pos];
    if (std::abs(piv) < pivot_tol) throw simplex_error("vanishing pivot element");
    for (std::size_t i = 0; i < m; ++i) {
        if (i == pos) continue;
        double f = w[i] / piv;
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) binv_at(i, j) -= f * binv_at(pos, j);
    }
    for (std::size_t j = 0; j < m; ++j) binv_at(pos, j) /= piv;
    basic_var_[pos] = entering;
    state_[entering] = var_state::basic;
    ++pivots_;
    if (++pivots_since_refactor_ >= refactor_interval) refactor();
}

void simplex_solver::refactor() {
    pivots_since_refactor_ = 0;
    std::size_t m = basic_var_.size();
    if (m == 0) return;
    // dense Gauss-Jordan on [B | I] with partial pivoting
    std::vector<double> b(m * m, 0.0), inv(m * m, 0.0);
    for (std::size_t pos = 0; pos < m; ++pos) {
        std::size_t var = basic_var_[pos];
        if (var < n_cols_)
            for (const auto& e : col_entries_[var]) b[e.col * m + pos] = e.coeff;
        else
            b[(var - n_cols_) * m + pos] = -1.0;
        inv[pos * m + pos] = 1.0;
    }
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t best = k;
        for (std::size_t i = k + 1; i < m; ++i)
            if (std::abs(b[i * m + k]) > std::abs(b[best * m + k])) best = i;
        if (std::abs(b[best * m + k]) < 1e-11)
            throw simplex_error("singular basis during refactorization");
        if (best != k)
            for (std::size_t j = 0; j < m; ++j) {
                std::swap(b[best * m + j], b[k * m + j]);
                std::swap(inv[best * m + j], inv[k * m + j]);
            }
        double piv = b[k * m + k];
        for (std::size_t j = 0; j < m; ++j) {
            b[k * m + j] /= piv;
            inv[k * m + j] /= piv;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == k) continue;
            double f = b[i * m + k];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) {
                b[i * m + j] -= f * b[k * m + j];
                inv[i * m + j] -= f * inv[k * m + j];
            }
        }
    }
    binv_ = std::move(inv);
}

double simplex_solver::reduced_cost(std::size_t col) {
    std::vector<double> y = dual_prices();
    double c = col < n_cols_ ? cost_[col] : 0.0;
    return c - column_dot(y, col);
}

double simplex_solver::objective() const {
    double obj = 0.0;
    for (std::size_t j = 0; j < n_cols_; ++j) obj += cost_[j] * values_[j];
    return obj;
}

lp_status simplex_solver::solve() {
    snap_nonbasic_to_duals();
    compute_values();
    std::size_t m = basic_var_.size();
    std::size_t n_vars = n_cols_ + m;
    std::size_t max_iter = 2000 + 300 * n_vars;
    degenerate_streak_ = 0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool bland = degenerate_streak_ > bland_threshold;
        // leaving: most-violated basic (smallest variable index under Bland)
        std::size_t pos_r = npos;
        double best_viol = feas_tol;
        for (std::size_t pos = 0; pos < m; ++pos) {
            std::size_t var = basic_var_[pos];
            double viol = std::max(lower_[var] - values_[var], values_[var] - upper_[var]);
            if (viol <= feas_tol) continue;
            if (bland) {
                if (pos_r == npos || var < basic_var_[pos_r]) pos_r = pos;
            } else if (viol > best_viol) {
                best_viol = viol;
                pos_r = pos;
            }
        }
        if (pos_r == npos) return lp_status::optimal;

        std::size_t var_r = basic_var_[pos_r];
        bool above = values_[var_r] > upper_[var_r];
        double sigma = above ? 1.0 : -1.0;
        std::vector<double> alpha = tableau_row(pos_r);
        std::vector<double> y = dual_prices();

        // entering: bounded-variable dual ratio test
        std::size_t entering = npos;
        double best_ratio = std::numeric_limits<double>::infinity();
        double best_mag = 0.0;
        for (std::size_t var = 0; var < n_vars; ++var) {
            if (state_[var] == var_state::basic || !movable(var)) continue;
            double a = sigma * alpha[var];
            bool ok = state_[var] == var_state::at_lower ? a > pivot_tol : a < -pivot_tol;
            if (!ok) continue;
            double c = var < n_cols_ ? cost_[var] : 0.0;
            double d = c - column_dot(y, var);
            // dual feasibility keeps d >= 0 at lower, <= 0 at upper; clamp drift
            d = state_[var] == var_state::at_lower ? std::max(d, 0.0) : std::min(d, 0.0);
            double ratio = std::abs(d) / std::abs(alpha[var]);
            if (bland) {
                if (entering == npos || var < entering) {
                    entering = var;
                    best_ratio = ratio;
                }
            } else if (ratio < best_ratio - dual_tol ||
                       (ratio < best_ratio + dual_tol && std::abs(alpha[var]) > best_mag)) {
                best_ratio = ratio;
                best_mag = std::abs(alpha[var]);
                entering = var;
            }
        }
        if (entering == npos) {
            // dual unbounded: the tableau row of pos_r certifies primal infeasibility
            farkas_.assign(m, 0.0);
            for (std::size_t j = 0; j < m; ++j) farkas_[j] = binv_at(pos_r, j);
            return lp_status::infeasible;
        }
        if (best_ratio <= dual_tol)
            ++degenerate_streak_;
        else
            degenerate_streak_ = 0;

        pivot(pos_r, entering);
        state_[var_r] = above ? var_state::at_upper : var_state::at_lower;
        if (!movable(var_r)) state_[var_r] = var_state::at_lower;
        compute_values();
    }
    throw simplex_error("dual simplex iteration limit exceeded");
}

}  // namespace oscm
