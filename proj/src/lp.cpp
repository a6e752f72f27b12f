#include "itembound/lp.hpp"

#include <stdexcept>

namespace itembound {

void LinearProgram::add_dense_constraint(const std::vector<Rational>& coefficients, Rational rhs) {
    LinearConstraint row;
    for (std::size_t j = 0; j < coefficients.size(); ++j)
        if (!coefficients[j].is_zero()) row.terms.emplace_back(static_cast<int>(j), coefficients[j]);
    row.rhs = std::move(rhs);
    constraints.push_back(std::move(row));
}

std::string to_string(LPStatus status) {
    switch (status) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x) {
    Rational sum;
    for (int j = 0; j < lp.variables; ++j)
        if (!lp.objective[static_cast<std::size_t>(j)].is_zero()) sum += lp.objective[static_cast<std::size_t>(j)] * x.at(static_cast<std::size_t>(j));
    return sum;
}

bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != static_cast<std::size_t>(lp.variables)) return false;
    for (const auto& v : x)
        if (v.sign() < 0) return false;
    for (const auto& row : lp.constraints) {
        Rational lhs;
        for (const auto& [j, a] : row.terms) lhs += a * x[static_cast<std::size_t>(j)];
        if (lhs != row.rhs) return false;
    }
    return true;
}

namespace {

struct Entry {
    int row;
    Rational value;
    int unit;  // +1 / -1 when value is ±1, else 0
};

class RevisedSimplex {
public:
    explicit RevisedSimplex(const LinearProgram& lp)
        : m_(static_cast<int>(lp.constraints.size())), n_(lp.variables), columns_(static_cast<std::size_t>(n_)) {
        b_.reserve(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            const auto& row = lp.constraints[static_cast<std::size_t>(i)];
            const bool flip = row.rhs.sign() < 0;
            b_.push_back(flip ? -row.rhs : row.rhs);
            for (const auto& [j, a] : row.terms) {
                if (j < 0 || j >= n_) throw std::invalid_argument("constraint references a missing variable");
                if (a.is_zero()) continue;
                Rational v = flip ? -a : a;
                const int unit = v == Rational(1) ? 1 : v == Rational(-1) ? -1 : 0;
                columns_[static_cast<std::size_t>(j)].push_back({i, std::move(v), unit});
            }
        }
        // Artificial basis.
        basis_.resize(static_cast<std::size_t>(m_));
        basic_.assign(static_cast<std::size_t>(n_ + m_), 0);
        binv_.assign(static_cast<std::size_t>(m_), std::vector<Rational>(static_cast<std::size_t>(m_)));
        for (int i = 0; i < m_; ++i) {
            basis_[static_cast<std::size_t>(i)] = n_ + i;
            basic_[static_cast<std::size_t>(n_ + i)] = 1;
            binv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
        }
        xb_ = b_;
    }

    LPResult run(const LinearProgram& lp) {
        LPResult result;

        std::vector<Rational> phase1(static_cast<std::size_t>(n_ + m_));
        for (int i = 0; i < m_; ++i) phase1[static_cast<std::size_t>(n_ + i)] = Rational(1);
        if (iterate(phase1, result.iterations) != LPStatus::Optimal) {
            throw std::logic_error("phase one of the simplex method cannot be unbounded");
        }
        for (int i = 0; i < m_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] >= n_ && !xb_[static_cast<std::size_t>(i)].is_zero()) {
                result.status = LPStatus::Infeasible;
                return result;
            }
        }
        drive_out_artificials();

        std::vector<Rational> costs(static_cast<std::size_t>(n_ + m_));
        for (int j = 0; j < n_; ++j) {
            const Rational& c = lp.objective.at(static_cast<std::size_t>(j));
            costs[static_cast<std::size_t>(j)] = lp.sense == Sense::Maximize ? -c : c;
        }
        if (iterate(costs, result.iterations) == LPStatus::Unbounded) {
            result.status = LPStatus::Unbounded;
            return result;
        }

        result.status = LPStatus::Optimal;
        result.witness.assign(static_cast<std::size_t>(n_), Rational(0));
        for (int i = 0; i < m_; ++i) {
            const int j = basis_[static_cast<std::size_t>(i)];
            if (j < n_) result.witness[static_cast<std::size_t>(j)] = xb_[static_cast<std::size_t>(i)];
        }
        result.value = objective_value(lp, result.witness);
        return result;
    }

private:
    std::vector<Rational> duals(const std::vector<Rational>& costs) const {
        std::vector<Rational> y(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = costs[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
            if (cb.is_zero()) continue;
            const auto& row = binv_[static_cast<std::size_t>(i)];
            for (int k = 0; k < m_; ++k)
                if (!row[static_cast<std::size_t>(k)].is_zero()) y[static_cast<std::size_t>(k)] += cb * row[static_cast<std::size_t>(k)];
        }
        return y;
    }

    Rational reduced_cost(int j, const std::vector<Rational>& costs, const std::vector<Rational>& y) const {
        Rational d = costs[static_cast<std::size_t>(j)];
        if (j >= n_) {
            d -= y[static_cast<std::size_t>(j - n_)];
            return d;
        }
        for (const auto& e : columns_[static_cast<std::size_t>(j)]) {
            const Rational& yi = y[static_cast<std::size_t>(e.row)];
            if (yi.is_zero()) continue;
            if (e.unit == 1) d -= yi;
            else if (e.unit == -1) d += yi;
            else d.sub_mul(yi, e.value);
        }
        return d;
    }

    std::vector<Rational> entering_column(int j) const {
        std::vector<Rational> u(static_cast<std::size_t>(m_));
        if (j >= n_) {
            for (int i = 0; i < m_; ++i) u[static_cast<std::size_t>(i)] = binv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - n_)];
            return u;
        }
        for (int i = 0; i < m_; ++i) {
            const auto& row = binv_[static_cast<std::size_t>(i)];
            Rational s;
            for (const auto& e : columns_[static_cast<std::size_t>(j)]) {
                const Rational& r = row[static_cast<std::size_t>(e.row)];
                if (r.is_zero()) continue;
                if (e.unit == 1) s += r;
                else if (e.unit == -1) s -= r;
                else s += r * e.value;
            }
            u[static_cast<std::size_t>(i)] = std::move(s);
        }
        return u;
    }

    void pivot(int r, int j, const std::vector<Rational>& u) {
        const auto rs = static_cast<std::size_t>(r);
        const Rational p = u[rs];
        auto& pivot_row = binv_[rs];
        for (auto& v : pivot_row)
            if (!v.is_zero()) v /= p;
        xb_[rs] /= p;
        for (int i = 0; i < m_; ++i) {
            const auto is = static_cast<std::size_t>(i);
            if (i == r || u[is].is_zero()) continue;
            auto& row = binv_[is];
            for (int k = 0; k < m_; ++k) {
                const auto ks = static_cast<std::size_t>(k);
                if (!pivot_row[ks].is_zero()) row[ks].sub_mul(u[is], pivot_row[ks]);
            }
            xb_[is].sub_mul(u[is], xb_[rs]);
        }
        basic_[static_cast<std::size_t>(basis_[rs])] = 0;
        basis_[rs] = j;
        basic_[static_cast<std::size_t>(j)] = 1;
    }

    /// Bland's rule; artificial columns never re-enter.
    LPStatus iterate(const std::vector<Rational>& costs, int& iterations) {
        constexpr int kIterationGuard = 50'000'000;
        while (true) {
            if (++iterations > kIterationGuard) throw std::runtime_error("simplex iteration guard exceeded");
            const auto y = duals(costs);
            int entering = -1;
            for (int j = 0; j < n_; ++j) {
                if (basic_[static_cast<std::size_t>(j)]) continue;
                if (reduced_cost(j, costs, y).sign() < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return LPStatus::Optimal;

            const auto u = entering_column(entering);
            int leaving = -1;
            Rational best;
            for (int i = 0; i < m_; ++i) {
                const auto is = static_cast<std::size_t>(i);
                if (u[is].sign() <= 0) continue;
                Rational ratio = xb_[is] / u[is];
                if (leaving < 0 || ratio < best ||
                    (ratio == best && basis_[is] < basis_[static_cast<std::size_t>(leaving)])) {
                    leaving = i;
                    best = std::move(ratio);
                }
            }
            if (leaving < 0) return LPStatus::Unbounded;
            pivot(leaving, entering, u);
        }
    }

    /// Replaces zero-level artificials by structural columns where possible;
    /// the ones left mark redundant rows and stay basic at zero.
    void drive_out_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (basis_[static_cast<std::size_t>(r)] < n_) continue;
            const auto& row = binv_[static_cast<std::size_t>(r)];
            for (int j = 0; j < n_; ++j) {
                if (basic_[static_cast<std::size_t>(j)]) continue;
                Rational s;
                for (const auto& e : columns_[static_cast<std::size_t>(j)]) {
                    const Rational& v = row[static_cast<std::size_t>(e.row)];
                    if (!v.is_zero()) s += v * e.value;
                }
                if (!s.is_zero()) {
                    pivot(r, j, entering_column(j));
                    break;
                }
            }
        }
    }

    int m_;
    int n_;
    std::vector<std::vector<Entry>> columns_;
    std::vector<Rational> b_;
    std::vector<int> basis_;
    std::vector<char> basic_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<Rational> xb_;
};

}  // namespace

LPResult solve(const LinearProgram& lp) {
    if (lp.objective.size() != static_cast<std::size_t>(lp.variables)) {
        throw std::invalid_argument("objective length differs from the variable count");
    }
    return RevisedSimplex(lp).run(lp);
}

}  // namespace itembound
