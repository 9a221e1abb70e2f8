#ifndef OSCM_SIMPLEX_HPP
#define OSCM_SIMPLEX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscm {

enum class lp_status { optimal, infeasible };

// numeric breakdown (singular basis, iteration runaway); distinct from the
// logic errors thrown on caller misuse
class simplex_error : public std::runtime_error {
public:
    explicit simplex_error(const std::string& what) : std::runtime_error(what) {}
};

// bounded-variable revised simplex for
//     minimize c^T x   s.t.   rlo_i <= a_i^T x <= rup_i,   lo_j <= x_j <= up_j
// internally each row gets a logical variable s_i with a_i^T x - s_i = 0 and
// bounds [rlo_i, rup_i]; the all-logical basis is dual feasible once nonbasic
// columns are snapped to their cost-sign bounds, so the dual simplex is the
// single engine: it absorbs warm starts after row additions (new logicals
// enter the basis via a block update of the dense inverse) and after bound
// changes (branching), both of which perturb only primal feasibility
class simplex_solver {
public:
    explicit simplex_solver(std::size_t n_cols);

    // --- model building ---
    void set_cost(std::size_t col, double cost);
    void set_col_bounds(std::size_t col, double lo, double up);

    struct row_entry {
        std::size_t col;
        double coeff;
    };
    std::size_t add_row(const std::vector<row_entry>& entries, double lo, double up);

    // --- solving ---
    lp_status solve();

    // --- results ---
    double objective() const;  // over structural columns only
    double col_value(std::size_t col) const { return values_[col]; }
    double col_lower(std::size_t col) const { return lower_[col]; }
    double col_upper(std::size_t col) const { return upper_[col]; }

    // row multipliers beta of the violated tableau row at dual-unbounded exit;
    // the aggregated row g = beta^T [A | -I] satisfies g * vars = 0 identically
    // while the interval of g * vars over the variable bounds excludes 0
    const std::vector<double>& farkas_multipliers() const { return farkas_; }

    std::size_t n_cols() const { return n_cols_; }
    std::size_t n_rows() const { return rows_.size(); }
    const std::vector<row_entry>& row(std::size_t i) const { return rows_[i]; }
    double row_lower(std::size_t i) const { return lower_[n_cols_ + i]; }
    double row_upper(std::size_t i) const { return upper_[n_cols_ + i]; }

    // --- introspection for tests ---
    bool col_is_basic(std::size_t col) const { return state_[col] == var_state::basic; }
    double reduced_cost(std::size_t col);
    std::size_t pivot_count() const { return pivots_; }

    static constexpr double feas_tol = 1e-6;
    static constexpr double dual_tol = 1e-9;

private:
    enum class var_state : unsigned char { at_lower, at_upper, basic };

    // variable indexing: 0..n_cols-1 structural, n_cols+i = logical of row i
    std::size_t n_cols_;
    std::vector<double> cost_;           // structurals (logicals cost 0)
    std::vector<double> lower_, upper_;  // all variables
    std::vector<std::vector<row_entry>> rows_;          // structural entries per row
    std::vector<std::vector<row_entry>> col_entries_;   // (row, coeff) per structural
    std::vector<var_state> state_;       // all variables
    std::vector<std::size_t> basic_var_; // variable in basis position i (row i)
    std::vector<double> binv_;           // dense row-major basis inverse
    std::vector<double> values_;         // all variables, refreshed by solve()
    std::vector<double> farkas_;
    std::size_t pivots_ = 0;
    std::size_t pivots_since_refactor_ = 0;
    std::size_t degenerate_streak_ = 0;

    static constexpr std::size_t refactor_interval = 64;
    static constexpr std::size_t bland_threshold = 100;

    double& binv_at(std::size_t i, std::size_t j) { return binv_[i * basic_var_.size() + j]; }
    double binv_at(std::size_t i, std::size_t j) const {
        return binv_[i * basic_var_.size() + j];
    }

    bool movable(std::size_t var) const { return lower_[var] + feas_tol < upper_[var]; }
    double bound_value(std::size_t var) const {
        return state_[var] == var_state::at_upper ? upper_[var] : lower_[var];
    }

    void snap_nonbasic_to_duals();              // bound flips restoring dual feasibility
    void compute_values();                      // x_B = -B^{-1} M_N x_N
    std::vector<double> dual_prices() const;    // y with y^T B = c_B^T
    double column_dot(const std::vector<double>& vec, std::size_t var) const;
    std::vector<double> tableau_row(std::size_t pos) const;   // beta^T M over all vars
    std::vector<double> ftran(std::size_t var) const;         // B^{-1} M_var
    void pivot(std::size_t pos, std::size_t entering);
    void refactor();
};

}  // namespace oscm

#endif
