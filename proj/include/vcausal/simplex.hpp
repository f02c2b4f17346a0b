#pragma once

#include <string>
#include <vector>

#include "vcausal/errors.hpp"
#include "vcausal/rational.hpp"

namespace vcausal::lp {

enum class Relation { Eq, Le };

struct Row {
    std::vector<Rational> coeff;
    Relation rel = Relation::Eq;
    Rational rhs{0};
};

/// maximize objective . x  subject to rows (<= or =) and x >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rational> objective;
    std::vector<Row> rows;
};

/// Exact optimality or infeasibility proof.
///
/// Optimal:    primal feasible, dual feasible, equal objectives.
/// Infeasible: Farkas vector y with y_i >= 0 on <= rows,
///             sum_i y_i row_i >= 0 componentwise and sum_i y_i rhs_i < 0,
///             which no feasible x >= 0 can satisfy.
struct Certificate {
    enum class Kind { Optimal, Infeasible };
    Kind kind = Kind::Optimal;
    Rational objective{0};
    std::vector<Rational> primal;  // structural variables (Optimal)
    std::vector<Rational> dual;    // one multiplier per row (Optimal)
    std::vector<Rational> farkas;  // one multiplier per row (Infeasible)
};

struct SolveInfo {
    long phase1_pivots = 0;
    long phase2_pivots = 0;
    int dropped_rows = 0;  // redundant equalities eliminated after phase 1
};

/// Dense tableau simplex over exact rationals, Bland's entering/leaving rule
/// throughout, so the pivot sequence (and hence the certificate) is a
/// deterministic function of the input. Two phases; redundant rows are
/// detected at the end of phase 1 and dropped.
class SimplexSolver {
public:
    explicit SimplexSolver(const LinearProgram& lp) : lp_(lp) { build(); }

    Certificate solve(SolveInfo* info = nullptr) {
        phase1();
        if (info) info->phase1_pivots = pivots_;
        if (phase1_objective_ < 0) return infeasible_certificate();
        remove_artificial_basics(info);
        const long before = pivots_;
        phase2();
        if (info) info->phase2_pivots = pivots_ - before;
        return optimal_certificate();
    }

private:
    const LinearProgram& lp_;

    int n_struct_ = 0, n_slack_ = 0, n_art_ = 0;
    int art_begin_ = 0, total_cols_ = 0, rhs_col_ = 0;

    std::vector<std::vector<Rational>> tab_;  // active rows only
    std::vector<Rational> obj_;               // reduced costs + objective value at rhs_col_
    std::vector<int> basis_;                  // per active row: basic column
    std::vector<int> row_of_;                 // active row -> original row index
    std::vector<int> sign_;                   // per original row: +1 / -1 (rhs made nonnegative)
    std::vector<int> slack_col_;              // per original row: slack column or -1
    std::vector<int> art_col_;                // per original row: artificial column or -1
    Rational phase1_objective_{0};
    long pivots_ = 0;

    void build() {
        const int m = static_cast<int>(lp_.rows.size());
        n_struct_ = lp_.num_vars;
        slack_col_.assign(m, -1);
        art_col_.assign(m, -1);
        sign_.assign(m, 1);

        for (int i = 0; i < m; ++i)
            if (lp_.rows[i].rel == Relation::Le) slack_col_[i] = n_struct_ + n_slack_++;
        // a <= row with nonnegative rhs starts with its slack basic; everything
        // else needs an artificial variable
        for (int i = 0; i < m; ++i) {
            if (lp_.rows[i].rhs < 0) sign_[i] = -1;
            if (!(lp_.rows[i].rel == Relation::Le && sign_[i] == 1))
                art_col_[i] = n_struct_ + n_slack_ + n_art_++;
        }
        art_begin_ = n_struct_ + n_slack_;
        total_cols_ = art_begin_ + n_art_;
        rhs_col_ = total_cols_;

        tab_.assign(m, std::vector<Rational>(total_cols_ + 1, Rational(0)));
        basis_.assign(m, -1);
        row_of_.resize(m);
        for (int i = 0; i < m; ++i) {
            row_of_[i] = i;
            const Rational s(sign_[i]);
            for (int j = 0; j < n_struct_; ++j) tab_[i][j] = s * lp_.rows[i].coeff[j];
            if (slack_col_[i] >= 0) tab_[i][slack_col_[i]] = s;
            if (art_col_[i] >= 0) tab_[i][art_col_[i]] = 1;
            tab_[i][rhs_col_] = s * lp_.rows[i].rhs;
            basis_[i] = art_col_[i] >= 0 ? art_col_[i] : slack_col_[i];
        }
    }

    void set_objective_from_costs(const std::vector<Rational>& cost) {
        obj_.assign(total_cols_ + 1, Rational(0));
        for (int j = 0; j <= total_cols_; ++j) {
            Rational z(0);
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                const Rational& cb = cost[basis_[i]];
                if (cb != 0 && tab_[i][j] != 0) z += cb * tab_[i][j];
            }
            obj_[j] = z;
            if (j < total_cols_) obj_[j] -= cost[j];
        }
    }

    std::vector<int> nz_;  // scratch: nonzero columns of the pivot row

    void pivot(int row, int col) {
        ++pivots_;
        const Rational inv = Rational(1) / tab_[row][col];
        if (inv != 1)
            for (auto& v : tab_[row])
                if (v != 0) v *= inv;
        nz_.clear();
        for (int j = 0; j <= total_cols_; ++j)
            if (tab_[row][j] != 0) nz_.push_back(j);
        for (std::size_t r = 0; r < tab_.size(); ++r) {
            if (static_cast<int>(r) == row || tab_[r][col] == 0) continue;
            const Rational f = tab_[r][col];
            for (int j : nz_) tab_[r][j] -= f * tab_[row][j];
        }
        if (obj_[col] != 0) {
            const Rational f = obj_[col];
            for (int j : nz_) obj_[j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    /// Bland's rule: entering = lowest-index column with negative reduced
    /// cost; leaving = lexicographic minimum ratio, ties broken by lowest
    /// basic-variable index. Returns false at optimality.
    bool bland_step(int eligible_cols) {
        int enter = -1;
        for (int j = 0; j < eligible_cols; ++j)
            if (obj_[j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0) return false;

        int leave = -1;
        Rational best;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (tab_[i][enter] <= 0) continue;
            Rational ratio = tab_[i][rhs_col_] / tab_[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave]))
                best = ratio, leave = static_cast<int>(i);
        }
        if (leave < 0) throw Unbounded("no leaving row for column " + std::to_string(enter));
        pivot(leave, enter);
        return true;
    }

    void phase1() {
        std::vector<Rational> cost(total_cols_, Rational(0));
        for (int k = art_begin_; k < total_cols_; ++k) cost[k] = -1;
        set_objective_from_costs(cost);
        while (bland_step(total_cols_)) {
        }
        phase1_objective_ = obj_[rhs_col_];
    }

    /// After a feasible phase 1, any artificial still basic sits at zero.
    /// Pivot it out on any nonzero structural/slack entry; if the whole row is
    /// zero there, the original row was redundant and is dropped.
    void remove_artificial_basics(SolveInfo* info) {
        for (std::size_t i = 0; i < tab_.size();) {
            if (basis_[i] < art_begin_) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < art_begin_; ++j)
                if (tab_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(static_cast<int>(i), col);
                ++i;
            } else {
                tab_.erase(tab_.begin() + static_cast<long>(i));
                basis_.erase(basis_.begin() + static_cast<long>(i));
                row_of_.erase(row_of_.begin() + static_cast<long>(i));
                if (info) ++info->dropped_rows;
            }
        }
    }

    void phase2() {
        std::vector<Rational> cost(total_cols_, Rational(0));
        for (int j = 0; j < n_struct_; ++j) cost[j] = lp_.objective[j];
        set_objective_from_costs(cost);
        while (bland_step(art_begin_)) {  // artificials may not re-enter
        }
    }

    Certificate infeasible_certificate() const {
        Certificate cert;
        cert.kind = Certificate::Kind::Infeasible;
        cert.farkas.assign(lp_.rows.size(), Rational(0));
        for (std::size_t i = 0; i < lp_.rows.size(); ++i) {
            if (art_col_[i] >= 0)
                cert.farkas[i] = Rational(sign_[i]) * (obj_[art_col_[i]] - 1);
            else
                cert.farkas[i] = obj_[slack_col_[i]];
        }
        return cert;
    }

    Certificate optimal_certificate() const {
        Certificate cert;
        cert.kind = Certificate::Kind::Optimal;
        cert.objective = obj_[rhs_col_];
        cert.primal.assign(n_struct_, Rational(0));
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (basis_[i] < n_struct_) cert.primal[basis_[i]] = tab_[i][rhs_col_];
        cert.dual.assign(lp_.rows.size(), Rational(0));
        for (std::size_t i = 0; i < lp_.rows.size(); ++i) {
            if (art_col_[i] >= 0)
                cert.dual[i] = Rational(sign_[i]) * obj_[art_col_[i]];
            else
                cert.dual[i] = obj_[slack_col_[i]];
        }
        return cert;
    }
};

inline Certificate maximize(const LinearProgram& lp, SolveInfo* info = nullptr) {
    SimplexSolver solver(lp);
    return solver.solve(info);
}

struct VerifyResult {
    bool ok = true;
    std::string reason;
};

/// Re-checks a certificate against the program in exact arithmetic, sharing no
/// state with the solver.
inline VerifyResult verify(const LinearProgram& lp, const Certificate& cert) {
    auto fail = [](std::string r) { return VerifyResult{false, std::move(r)}; };
    const std::size_t m = lp.rows.size();

    if (cert.kind == Certificate::Kind::Infeasible) {
        if (cert.farkas.size() != m) return fail("farkas vector has wrong size");
        for (std::size_t i = 0; i < m; ++i)
            if (lp.rows[i].rel == Relation::Le && cert.farkas[i] < 0)
                return fail("farkas multiplier of <= row " + std::to_string(i) + " is negative");
        for (int j = 0; j < lp.num_vars; ++j) {
            Rational combo(0);
            for (std::size_t i = 0; i < m; ++i)
                if (cert.farkas[i] != 0 && lp.rows[i].coeff[j] != 0)
                    combo += cert.farkas[i] * lp.rows[i].coeff[j];
            if (combo < 0) return fail("farkas combination negative on variable " + std::to_string(j));
        }
        Rational rhs_combo(0);
        for (std::size_t i = 0; i < m; ++i) rhs_combo += cert.farkas[i] * lp.rows[i].rhs;
        if (!(rhs_combo < 0)) return fail("farkas rhs combination is not negative");
        return {};
    }

    // primal feasibility
    if (cert.primal.size() != static_cast<std::size_t>(lp.num_vars)) return fail("primal has wrong size");
    for (int j = 0; j < lp.num_vars; ++j)
        if (cert.primal[j] < 0) return fail("primal variable " + std::to_string(j) + " is negative");
    for (std::size_t i = 0; i < m; ++i) {
        Rational dot(0);
        for (int j = 0; j < lp.num_vars; ++j)
            if (lp.rows[i].coeff[j] != 0 && cert.primal[j] != 0) dot += lp.rows[i].coeff[j] * cert.primal[j];
        if (lp.rows[i].rel == Relation::Eq ? dot != lp.rows[i].rhs : dot > lp.rows[i].rhs)
            return fail("primal violates row " + std::to_string(i));
    }
    Rational primal_obj(0);
    for (int j = 0; j < lp.num_vars; ++j)
        if (lp.objective[j] != 0 && cert.primal[j] != 0) primal_obj += lp.objective[j] * cert.primal[j];
    if (primal_obj != cert.objective) return fail("stated objective differs from c . x");

    // dual feasibility
    if (cert.dual.size() != m) return fail("dual has wrong size");
    for (std::size_t i = 0; i < m; ++i)
        if (lp.rows[i].rel == Relation::Le && cert.dual[i] < 0)
            return fail("dual multiplier of <= row " + std::to_string(i) + " is negative");
    for (int j = 0; j < lp.num_vars; ++j) {
        Rational combo(0);
        for (std::size_t i = 0; i < m; ++i)
            if (cert.dual[i] != 0 && lp.rows[i].coeff[j] != 0) combo += cert.dual[i] * lp.rows[i].coeff[j];
        if (combo < lp.objective[j]) return fail("dual constraint violated on variable " + std::to_string(j));
    }
    Rational dual_obj(0);
    for (std::size_t i = 0; i < m; ++i) dual_obj += cert.dual[i] * lp.rows[i].rhs;
    if (dual_obj != cert.objective) return fail("strong duality gap: dual objective differs");
    return {};
}

} // namespace vcausal::lp
