#pragma once

#include "dgmg/field.hpp"

#include <functional>
#include <vector>

namespace dgmg {

class LevelHierarchy;

using LinearOperator = std::function<void(const Field& in, Field& out)>;

/// Outcome of an iterative solve. `history` holds ||r_k|| for k = 0..iterations.
struct SolveResult {
    Field solution;
    std::vector<double> history;
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
};

struct IterationControl {
    double tolerance = 1e-10; ///< stop once ||r_n|| / ||r_0|| <= tolerance
    int max_iterations = 100;
    double divergence = 1e3; ///< flag once ||r_n|| / ||r_0|| exceeds this
};

enum class BetaFormula {
    Flexible, ///< <z_k, r_k - r_{k-1}> / <z_{k-1}, r_{k-1}>
    Standard, ///< <z_k, r_k> / <z_{k-1}, r_{k-1}>
};

/// CG for a symmetric PSD operator whose null space is the constant vector.
/// The right side and every residual are projected onto the mean-free complement.
/// Throws SolveError when the residual fails to improve for 50 iterations or the
/// iteration cap is reached.
Field cg_projected(const LinearOperator& apply, const Field& f, double tolerance, int cap);

/// Preconditioned CG; the flexible coefficient tolerates nonsymmetric preconditioners.
/// Throws SolveError on a non-finite inner product.
SolveResult pcg(const LinearOperator& apply, const LinearOperator& precondition, const Field& f,
                const Field& u0, const IterationControl& control,
                BetaFormula beta = BetaFormula::Flexible);

/// Flexible PCG with one V-cycle (zero initial guess) as preconditioner.
SolveResult mgcg_solve(const LevelHierarchy& h, const Field& f, const Field& u0,
                       const IterationControl& control, BetaFormula beta = BetaFormula::Flexible);

/// Stationary multigrid: repeated V-cycles, mean re-anchored after each cycle.
SolveResult mg_solve(const LevelHierarchy& h, const Field& f, const Field& u0,
                     const IterationControl& control);

} // namespace dgmg
