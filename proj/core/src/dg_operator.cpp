#include "dgmg/dg_operator.hpp"

#include "dgmg/errors.hpp"
#include "dgmg/parallel.hpp"

#include <iostream>
#include <string>

namespace dgmg {

double penalty_min(int degree, double width)
{
    return degree * (degree + 1.0) / width;
}

double DirectionalOperator::stiffness_entry(std::size_t row, std::size_t col) const
{
    const std::size_t n = nodes_per_element();
    const std::size_t er = row / n, ec = col / n;
    const std::size_t i = row % n, j = col % n;
    const std::size_t ne = static_cast<std::size_t>(num_elements);
    const std::size_t delta = (ec + ne - er) % ne;
    if (delta == 0)
        return diag(i, j);
    if (delta == 1)
        return upper(i, j);
    if (delta == ne - 1)
        return lower(i, j);
    return 0.0;
}

DenseMatrix DirectionalOperator::dense_stiffness() const
{
    const std::size_t n = global_size();
    DenseMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a(r, c) = stiffness_entry(r, c);
    return a;
}

DirectionalOperator assemble_directional(const Basis1D& basis, double width, int num_elements,
                                         double penalty)
{
    if (!(penalty > 0.0))
        throw InputError("assemble_directional: penalty must be positive");
    if (!(width > 0.0))
        throw InputError("assemble_directional: width must be positive");
    if (num_elements < 3)
        throw InputError("assemble_directional: at least 3 elements required");
    if (penalty < penalty_min(basis.degree, width))
        std::clog << "dgmg: warning: penalty " << penalty << " below stability threshold "
                  << penalty_min(basis.degree, width) << '\n';

    const std::size_t n = basis.size();
    const double jac = 2.0 / width;

    DirectionalOperator op;
    op.basis = basis;
    op.width = width;
    op.num_elements = num_elements;
    op.penalty = penalty;
    op.mass.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        op.mass[i] = basis.weights[i] * width / 2.0;

    // Volume term: sum_q w_q phi_i'(x_q) phi_j'(x_q) * 2/width.
    DenseMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < n; ++q)
                s += basis.weights[q] * basis.diff(q, i) * basis.diff(q, j);
            d(i, j) = s * jac;
        }

    // Face between element e (minus side, its right end) and e+1 (plus side, its left end),
    // with [v] = v- - v+ and {v'} = (v-' + v+')/2. Face form: -{u'}[v] - [u]{v'} + mu [u][v].
    const auto& a = basis.right_value;
    const auto& b = basis.left_value;
    std::vector<double> da(n), db(n);
    for (std::size_t i = 0; i < n; ++i) {
        da[i] = jac * basis.right_deriv[i];
        db[i] = jac * basis.left_deriv[i];
    }

    DenseMatrix up(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // right face of this element
            d(i, j) += -0.5 * (a[i] * da[j] + da[i] * a[j]) + penalty * a[i] * a[j];
            // left face of this element
            d(i, j) += 0.5 * (b[i] * db[j] + db[i] * b[j]) + penalty * b[i] * b[j];
            // test function in e, trial in e+1
            up(i, j) = -0.5 * a[i] * db[j] + 0.5 * da[i] * b[j] - penalty * a[i] * b[j];
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (d(i, j) + d(j, i));
            d(i, j) = d(j, i) = s;
        }

    op.diag = std::move(d);
    op.lower = up.transposed();
    op.upper = std::move(up);
    return op;
}

LevelOperators LevelOperators::build(const Grid& grid, const Basis1D& basis, double penalty_factor)
{
    return build(grid, basis, penalty_factor, basis.degree);
}

LevelOperators LevelOperators::build(const Grid& grid, const Basis1D& basis, double penalty_factor,
                                     int penalty_degree)
{
    if (!(penalty_factor > 0.0))
        throw InputError("LevelOperators: penalty factor must be positive");
    LevelOperators ops;
    ops.grid = grid;
    for (int d = 0; d < 3; ++d) {
        const double h = grid.spacing(d);
        ops.dir[d] = assemble_directional(basis, h, grid.counts()[d],
                                          penalty_factor * penalty_min(penalty_degree, h));
    }
    return ops;
}

namespace {

void check_field(const LevelOperators& ops, const Field& u, const char* where)
{
    if (u.degree() != ops.degree() || u.num_elements() != ops.grid.num_elements())
        throw DimensionError(std::string(where) + ": field does not match grid or degree");
}

} // namespace

void apply_A(const LevelOperators& ops, const Field& u, Field& out)
{
    check_field(ops, u, "apply_A");
    if (!out.compatible(u))
        out = Field(ops.grid, ops.degree());

    const std::size_t n = ops.dir[0].nodes_per_element();
    const auto& mx = ops.dir[0].mass;
    const auto& my = ops.dir[1].mass;
    const auto& mz = ops.dir[2].mass;
    const Grid& grid = ops.grid;

    parallel_for(grid.num_elements(), [&](std::size_t e) {
        auto o = out.element(e);
        std::fill(o.begin(), o.end(), 0.0);
        std::vector<double> line(n);

        for (int off = -1; off <= 1; ++off) {
            // x: Mz ⊗ My ⊗ Lx
            {
                const DenseMatrix& blk = off < 0 ? ops.dir[0].lower : off == 0 ? ops.dir[0].diag : ops.dir[0].upper;
                const auto v = u.element(grid.neighbor(e, {off, 0, 0}));
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t j = 0; j < n; ++j) {
                        const double s = mz[k] * my[j];
                        const double* vr = v.data() + (k * n + j) * n;
                        double* orow = o.data() + (k * n + j) * n;
                        for (std::size_t i = 0; i < n; ++i) {
                            const double* br = blk.data().data() + i * n;
                            double acc = 0.0;
                            for (std::size_t q = 0; q < n; ++q)
                                acc += br[q] * vr[q];
                            orow[i] += s * acc;
                        }
                    }
            }
            // y: Mz ⊗ Ly ⊗ Mx
            {
                const DenseMatrix& blk = off < 0 ? ops.dir[1].lower : off == 0 ? ops.dir[1].diag : ops.dir[1].upper;
                const auto v = u.element(grid.neighbor(e, {0, off, 0}));
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t j = 0; j < n; ++j) {
                        std::fill(line.begin(), line.end(), 0.0);
                        for (std::size_t q = 0; q < n; ++q) {
                            const double b = blk(j, q);
                            const double* vr = v.data() + (k * n + q) * n;
                            for (std::size_t i = 0; i < n; ++i)
                                line[i] += b * vr[i];
                        }
                        double* orow = o.data() + (k * n + j) * n;
                        for (std::size_t i = 0; i < n; ++i)
                            orow[i] += mz[k] * mx[i] * line[i];
                    }
            }
            // z: Lz ⊗ My ⊗ Mx
            {
                const DenseMatrix& blk = off < 0 ? ops.dir[2].lower : off == 0 ? ops.dir[2].diag : ops.dir[2].upper;
                const auto v = u.element(grid.neighbor(e, {0, 0, off}));
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t j = 0; j < n; ++j) {
                        std::fill(line.begin(), line.end(), 0.0);
                        for (std::size_t q = 0; q < n; ++q) {
                            const double b = blk(k, q);
                            const double* vr = v.data() + (q * n + j) * n;
                            for (std::size_t i = 0; i < n; ++i)
                                line[i] += b * vr[i];
                        }
                        double* orow = o.data() + (k * n + j) * n;
                        for (std::size_t i = 0; i < n; ++i)
                            orow[i] += my[j] * mx[i] * line[i];
                    }
            }
        }
    });
}

Field apply_A(const LevelOperators& ops, const Field& u)
{
    Field out(ops.grid, ops.degree());
    apply_A(ops, u, out);
    return out;
}

double node_coordinate(const Grid& grid, const Basis1D& basis, int dir, int element, std::size_t node)
{
    const double h = grid.spacing(dir);
    return h * element + 0.5 * h * (basis.nodes[node] + 1.0);
}

Field assemble_rhs(const Grid& grid, const Basis1D& basis,
                   const std::function<double(double, double, double)>& f)
{
    Field rhs(grid, basis.degree);
    const std::size_t n = basis.size();
    const double jac = grid.spacing(0) * grid.spacing(1) * grid.spacing(2) / 8.0;
    parallel_for(grid.num_elements(), [&](std::size_t e) {
        const auto c = grid.element_coords(e);
        auto blk = rhs.element(e);
        for (std::size_t k = 0; k < n; ++k) {
            const double z = node_coordinate(grid, basis, 2, c[2], k);
            for (std::size_t j = 0; j < n; ++j) {
                const double y = node_coordinate(grid, basis, 1, c[1], j);
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = node_coordinate(grid, basis, 0, c[0], i);
                    blk[(k * n + j) * n + i] =
                        basis.weights[i] * basis.weights[j] * basis.weights[k] * jac * f(x, y, z);
                }
            }
        }
    });
    return rhs;
}

Field residual(const LevelOperators& ops, const Field& u, const Field& f)
{
    require_compatible(u, f, "residual");
    Field r = apply_A(ops, u);
    auto rv = r.values();
    const auto fv = f.values();
    for (std::size_t i = 0; i < rv.size(); ++i)
        rv[i] = fv[i] - rv[i];
    return r;
}

Field mass_diagonal(const LevelOperators& ops)
{
    Field m(ops.grid, ops.degree());
    const std::size_t n = ops.dir[0].nodes_per_element();
    for (std::size_t e = 0; e < m.num_elements(); ++e) {
        auto blk = m.element(e);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i)
                    blk[(k * n + j) * n + i] = ops.dir[2].mass[k] * ops.dir[1].mass[j] * ops.dir[0].mass[i];
    }
    return m;
}

} // namespace dgmg
