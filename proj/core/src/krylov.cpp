#include "dgmg/krylov.hpp"

#include "dgmg/errors.hpp"
#include "dgmg/multigrid.hpp"

#include <cmath>
#include <sstream>

namespace dgmg {

namespace {

void remove_plain_mean(Field& v)
{
    if (v.size() == 0)
        return;
    double s = 0.0;
    for (double x : v.values())
        s += x;
    const double mean = s / static_cast<double>(v.size());
    for (double& x : v.values())
        x -= mean;
}

std::string trace_tail(const std::vector<double>& trace)
{
    std::ostringstream os;
    const std::size_t start = trace.size() > 8 ? trace.size() - 8 : 0;
    os << "residual trace (last " << trace.size() - start << " of " << trace.size() << "):";
    for (std::size_t i = start; i < trace.size(); ++i)
        os << ' ' << trace[i];
    return os.str();
}

} // namespace

Field cg_projected(const LinearOperator& apply, const Field& f, double tolerance, int cap)
{
    Field x = f;
    x.fill(0.0);
    Field r = f;
    remove_plain_mean(r);
    const double r0 = norm2(r);
    if (r0 == 0.0)
        return x;

    Field p = r;
    Field q = r;
    double rho = dot(r, r);
    double best = r0;
    int since_best = 0;
    std::vector<double> trace{r0};

    for (int it = 1; it <= cap; ++it) {
        apply(p, q);
        const double pq = dot(p, q);
        if (!(pq > 0.0) || !std::isfinite(pq))
            throw SolveError("cg_projected: breakdown, <p, Ap> = " + std::to_string(pq) + "; "
                             + trace_tail(trace));
        const double alpha = rho / pq;
        axpy(alpha, p, x);
        axpy(-alpha, q, r);
        remove_plain_mean(r);
        const double rn = norm2(r);
        trace.push_back(rn);
        if (rn <= tolerance * r0) {
            remove_plain_mean(x);
            return x;
        }
        if (rn < best) {
            best = rn;
            since_best = 0;
        } else if (++since_best >= 50) {
            throw SolveError("cg_projected: no progress over 50 iterations; " + trace_tail(trace));
        }
        const double rho_new = dot(r, r);
        const double beta = rho_new / rho;
        rho = rho_new;
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = r[i] + beta * p[i];
    }
    throw SolveError("cg_projected: iteration cap " + std::to_string(cap) + " reached; " + trace_tail(trace));
}

SolveResult pcg(const LinearOperator& apply, const LinearOperator& precondition, const Field& f,
                const Field& u0, const IterationControl& control, BetaFormula beta)
{
    require_compatible(f, u0, "pcg");
    SolveResult res;
    res.solution = u0;
    Field& u = res.solution;

    Field q = f;
    apply(u, q);
    Field r = f - q;
    const double r0 = norm2(r);
    res.history.push_back(r0);
    if (r0 == 0.0) {
        res.converged = true;
        return res;
    }

    Field z = f;
    precondition(r, z);
    Field p = z;
    double zr = dot(z, r);
    Field r_prev = r;

    for (int k = 1; k <= control.max_iterations; ++k) {
        apply(p, q);
        const double pq = dot(p, q);
        if (!std::isfinite(pq) || !std::isfinite(zr) || pq == 0.0)
            throw SolveError("pcg: non-finite or zero inner product (divergence); "
                             + trace_tail(res.history));
        const double alpha = zr / pq;
        axpy(alpha, p, u);
        r_prev = r;
        axpy(-alpha, q, r);
        const double rn = norm2(r);
        res.history.push_back(rn);
        res.iterations = k;
        if (rn <= control.tolerance * r0) {
            res.converged = true;
            break;
        }
        if (!std::isfinite(rn) || rn > control.divergence * r0) {
            res.diverged = true;
            break;
        }
        precondition(r, z);
        double num = dot(z, r);
        const double zr_new = num;
        if (beta == BetaFormula::Flexible)
            num -= dot(z, r_prev);
        const double b = num / zr;
        zr = zr_new;
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = z[i] + b * p[i];
    }
    return res;
}

SolveResult mgcg_solve(const LevelHierarchy& h, const Field& f, const Field& u0,
                       const IterationControl& control, BetaFormula beta)
{
    const LevelOperators& ops = h.finest().ops;
    const LinearOperator apply = [&ops](const Field& in, Field& out) { apply_A(ops, in, out); };
    const LinearOperator precondition = [&h](const Field& r, Field& z) {
        Field zero = r;
        zero.fill(0.0);
        z = v_cycle(h, zero, r);
    };
    SolveResult res = pcg(apply, precondition, f, u0, control, beta);
    remove_mean(ops, res.solution);
    return res;
}

SolveResult mg_solve(const LevelHierarchy& h, const Field& f, const Field& u0,
                     const IterationControl& control)
{
    const LevelOperators& ops = h.finest().ops;
    SolveResult res;
    res.solution = u0;
    const double r0 = norm2(residual(ops, u0, f));
    res.history.push_back(r0);
    if (r0 == 0.0) {
        res.converged = true;
        return res;
    }
    for (int k = 1; k <= control.max_iterations; ++k) {
        res.solution = v_cycle(h, res.solution, f);
        remove_mean(ops, res.solution);
        const double rn = norm2(residual(ops, res.solution, f));
        res.history.push_back(rn);
        res.iterations = k;
        if (rn <= control.tolerance * r0) {
            res.converged = true;
            break;
        }
        if (!std::isfinite(rn) || rn > control.divergence * r0) {
            res.diverged = true;
            break;
        }
    }
    return res;
}

} // namespace dgmg
