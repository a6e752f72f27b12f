#pragma once

// Exact linear programs of the form
//
//     min / max  c^T x   subject to  A x = b,  x >= 0
//
// solved by a two-phase revised simplex method over exact rationals with
// Bland's rule for both the entering and the leaving variable.

#include <string>
#include <utility>
#include <vector>

#include "itembound/rational.hpp"

namespace itembound {

enum class Sense { Minimize, Maximize };

struct LinearConstraint {
    std::vector<std::pair<int, Rational>> terms;  ///< (variable, coefficient)
    Rational rhs;
};

struct LinearProgram {
    int variables = 0;
    std::vector<LinearConstraint> constraints;
    std::vector<Rational> objective;  ///< dense, one entry per variable
    Sense sense = Sense::Minimize;

    void add_constraint(std::vector<std::pair<int, Rational>> terms, Rational rhs) {
        constraints.push_back({std::move(terms), std::move(rhs)});
    }
    /// Adds a row given densely; zero coefficients are dropped.
    void add_dense_constraint(const std::vector<Rational>& coefficients, Rational rhs);
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LPStatus status);

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value;
    std::vector<Rational> witness;
    int iterations = 0;
};

LPResult solve(const LinearProgram& lp);

/// Σ objective · x
Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x);

/// x >= 0 and every constraint holds exactly.
bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace itembound
