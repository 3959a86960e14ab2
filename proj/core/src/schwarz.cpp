#include "dgmg/schwarz.hpp"

#include "dgmg/errors.hpp"
#include "dgmg/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace dgmg {

OverlapSpec OverlapSpec::fixed_nodes(int n, std::optional<int> floor)
{
    OverlapSpec s{OverlapMode::FixedNodes, n, 0.0, floor};
    s.validate();
    return s;
}

OverlapSpec OverlapSpec::relative(double alpha, std::optional<int> floor)
{
    OverlapSpec s{OverlapMode::Relative, 0, alpha, floor};
    s.validate();
    return s;
}

OverlapSpec OverlapSpec::max_relative(double alpha, std::optional<int> floor)
{
    OverlapSpec s{OverlapMode::MaxRelative, 0, alpha, floor};
    s.validate();
    return s;
}

void OverlapSpec::validate() const
{
    if (mode == OverlapMode::FixedNodes) {
        if (nodes < 0)
            throw InputError("overlap: node layer count must be >= 0");
    } else if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InputError("overlap: relative width must lie in (0, 1]");
    }
    if (floor && *floor < 0)
        throw InputError("overlap: floor must be >= 0");
}

std::string to_string(const OverlapSpec& spec)
{
    std::ostringstream os;
    switch (spec.mode) {
    case OverlapMode::FixedNodes:
        os << "nodes:" << spec.nodes;
        break;
    case OverlapMode::Relative:
        os << "rel:" << spec.alpha;
        break;
    case OverlapMode::MaxRelative:
        os << "max:" << spec.alpha;
        break;
    }
    if (spec.floor)
        os << ",floor:" << *spec.floor;
    return os.str();
}

namespace {

template <class T>
T parse_number(std::string_view text, std::string_view what)
{
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw InputError("overlap: cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return value;
}

} // namespace

OverlapSpec parse_overlap(std::string_view text)
{
    std::optional<int> floor;
    if (const auto comma = text.find(','); comma != std::string_view::npos) {
        const auto tail = text.substr(comma + 1);
        if (!tail.starts_with("floor:"))
            throw InputError("overlap: expected ',floor:N' suffix in '" + std::string(text) + "'");
        floor = parse_number<int>(tail.substr(6), "floor");
        text = text.substr(0, comma);
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw InputError("overlap: expected MODE:VALUE, got '" + std::string(text) + "'");
    const auto mode = text.substr(0, colon);
    const auto value = text.substr(colon + 1);
    if (mode == "nodes")
        return OverlapSpec::fixed_nodes(parse_number<int>(value, "node count"), floor);
    if (mode == "rel")
        return OverlapSpec::relative(parse_number<double>(value, "width"), floor);
    if (mode == "max")
        return OverlapSpec::max_relative(parse_number<double>(value, "width"), floor);
    throw InputError("overlap: unknown mode '" + std::string(mode) + "' (nodes, rel, max)");
}

int resolve_overlap_1d(const OverlapSpec& spec, const Basis1D& basis, double width, double max_width)
{
    spec.validate();
    const int full = static_cast<int>(basis.size());
    int layers = 0;
    if (spec.mode == OverlapMode::FixedNodes) {
        layers = spec.nodes;
    } else {
        double physical = spec.alpha * width;
        if (spec.mode == OverlapMode::MaxRelative)
            physical = std::min(spec.alpha * max_width, width);
        const double reach = 2.0 * physical / width;
        for (double d : node_distance_to_face(basis, Side::Right))
            if (d <= reach * (1.0 + 1e-12) + 1e-14)
                ++layers;
    }
    layers = std::max(layers, spec.floor_for(basis.kind));
    return std::min(layers, full);
}

OverlapLayers resolve_overlap(const OverlapSpec& spec, const Basis1D& basis,
                              const std::array<double, 3>& widths)
{
    const double hmax = *std::max_element(widths.begin(), widths.end());
    OverlapLayers out;
    for (int d = 0; d < 3; ++d) {
        const int n = resolve_overlap_1d(spec, basis, widths[d], hmax);
        out.left[d] = n;
        out.right[d] = n;
    }
    return out;
}

double smoothstep5(double t)
{
    t = std::clamp(t, 0.0, 1.0);
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double hat_weight(double xi, double delta_left, double delta_right, double core)
{
    const double lo = -core - delta_left;
    const double hi = core + delta_right;
    const double tol = 1e-12 * (hi - lo);
    if (xi < lo - tol || xi > hi + tol)
        throw DomainError("hat_weight: coordinate outside the subdomain");

    const double dl = std::min(delta_left, core);
    const double dr = std::min(delta_right, core);
    if (xi < -core + dl) {
        if (xi <= -core - dl)
            return 0.0;
        return smoothstep5((xi + core + dl) / (2.0 * dl));
    }
    if (xi > core - dr) {
        if (xi >= core + dr)
            return 0.0;
        return smoothstep5((core + dr - xi) / (2.0 * dr));
    }
    return 1.0;
}

namespace {

SubdomainAxis build_axis(const DirectionalOperator& op, int left, int right)
{
    const int n = static_cast<int>(op.nodes_per_element());
    if (left < 0 || right < 0 || left > n || right > n)
        throw InputError("build_subdomain_solver: overlap layers must lie in [0, P+1]");

    SubdomainAxis ax;
    ax.left = left;
    ax.right = right;
    const auto dist = node_distance_to_face(op.basis, Side::Right);
    // the outermost adopted node marks the subdomain boundary (weight 0)
    ax.delta_left = left > 0 ? dist[left - 1] : 0.0;
    ax.delta_right = right > 0 ? dist[right - 1] : 0.0;

    const int size = left + n + right;
    for (int w = 0; w < size; ++w) {
        if (w < left)
            ax.source.emplace_back(-1, n - left + w);
        else if (w < left + n)
            ax.source.emplace_back(0, w - left);
        else
            ax.source.emplace_back(1, w - left - n);
    }

    // Global 1D indices of the window around element 1 (grid has >= 3 elements).
    std::vector<std::size_t> global(size);
    for (int w = 0; w < size; ++w) {
        const auto [off, node] = ax.source[w];
        global[w] = static_cast<std::size_t>(1 + off) * n + node;
    }
    ax.stiffness = DenseMatrix(size, size);
    ax.mass.resize(size);
    for (int a = 0; a < size; ++a) {
        ax.mass[a] = op.mass_entry(global[a]);
        for (int b = 0; b < size; ++b)
            ax.stiffness(a, b) = op.stiffness_entry(global[a], global[b]);
    }

    auto eig = sym_generalized_eig(ax.stiffness, ax.mass);
    ax.vectors = std::move(eig.vectors);
    ax.vectors_t = ax.vectors.transposed();
    ax.lambda = std::move(eig.values);

    ax.coords.resize(size);
    ax.weights.resize(size);
    for (int w = 0; w < size; ++w) {
        const auto [off, node] = ax.source[w];
        ax.coords[w] = op.basis.nodes[node] + 2.0 * off;
        const double delta = off < 0 ? ax.delta_left : ax.delta_right;
        if (off != 0 && delta == 0.0)
            ax.weights[w] = 0.0; // face-collocated node of a zero-width overlap
        else
            ax.weights[w] = hat_weight(ax.coords[w], ax.delta_left, ax.delta_right);
    }
    return ax;
}

} // namespace

SubdomainSolver build_subdomain_solver(const LevelOperators& ops, const OverlapLayers& layers)
{
    SubdomainSolver s;
    for (int d = 0; d < 3; ++d)
        s.axis[d] = build_axis(ops.dir[d], layers.left[d], layers.right[d]);

    const auto& lx = s.axis[0].lambda;
    const auto& ly = s.axis[1].lambda;
    const auto& lz = s.axis[2].lambda;
    s.inv_eigen_sum.resize(s.size());
    std::size_t p = 0;
    for (double c : lz)
        for (double b : ly)
            for (double a : lx) {
                const double sum = a + b + c;
                if (!(sum > 0.0))
                    throw SolveError("build_subdomain_solver: restricted system is singular");
                s.inv_eigen_sum[p++] = 1.0 / sum;
            }
    return s;
}

void SubdomainSolver::solve(std::span<const double> r, std::span<double> out, Kron3Workspace& ws) const
{
    auto& tmp = ws.stage;
    tmp.resize(size());
    kron3_apply(axis[2].vectors_t, axis[1].vectors_t, axis[0].vectors_t, r, tmp, ws);
    for (std::size_t i = 0; i < tmp.size(); ++i)
        tmp[i] *= inv_eigen_sum[i];
    kron3_apply(axis[2].vectors, axis[1].vectors, axis[0].vectors, tmp, out, ws);
}

std::vector<double> SubdomainSolver::solve(std::span<const double> r) const
{
    std::vector<double> out(size());
    Kron3Workspace ws;
    solve(r, out, ws);
    return out;
}

std::vector<double> SubdomainSolver::apply_restricted(std::span<const double> v) const
{
    const DenseMatrix mx = DenseMatrix::diagonal(axis[0].mass);
    const DenseMatrix my = DenseMatrix::diagonal(axis[1].mass);
    const DenseMatrix mz = DenseMatrix::diagonal(axis[2].mass);
    auto out = kron3_apply(mz, my, axis[0].stiffness, v);
    const auto t2 = kron3_apply(mz, axis[1].stiffness, mx, v);
    const auto t3 = kron3_apply(axis[2].stiffness, my, mx, v);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += t2[i] + t3[i];
    return out;
}

std::vector<double> SubdomainSolver::weight_block() const
{
    std::vector<double> w;
    w.reserve(size());
    for (double c : axis[2].weights)
        for (double b : axis[1].weights)
            for (double a : axis[0].weights)
                w.push_back(a * b * c);
    return w;
}

SchwarzSmoother::SchwarzSmoother(const LevelOperators& ops, const OverlapLayers& layers)
    : solver_(build_subdomain_solver(ops, layers)), layers_(layers), degree_(ops.degree())
{
    const int n = ops.degree() + 1;
    for (int d = 0; d < 3; ++d) {
        const auto& ax = solver_.axis[d];
        auto& map = scatter_[d];
        map.assign(n, {});
        for (int i = 0; i < n; ++i) {
            // Fixed order: left-centered, own, right-centered subdomain.
            if (i < ax.right)
                map[i].push_back({-1, ax.left + n + i});
            map[i].push_back({0, ax.left + i});
            if (i >= n - ax.left)
                map[i].push_back({1, i - (n - ax.left)});
        }
    }
}

void SchwarzSmoother::gather(const Grid& grid, const Field& v, std::size_t e, std::span<double> window) const
{
    const auto& ax = solver_.axis;
    const std::size_t n = v.nodes_per_dir();
    if (window.size() != solver_.size())
        throw DimensionError("SchwarzSmoother::gather: window size mismatch");

    std::array<std::span<const double>, 27> nb;
    for (int oz = -1; oz <= 1; ++oz)
        for (int oy = -1; oy <= 1; ++oy)
            for (int ox = -1; ox <= 1; ++ox)
                nb[(oz + 1) * 9 + (oy + 1) * 3 + (ox + 1)] = v.element(grid.neighbor(e, {ox, oy, oz}));

    std::size_t p = 0;
    for (const auto& [oz, kz] : ax[2].source)
        for (const auto& [oy, ky] : ax[1].source) {
            for (const auto& [ox, kx] : ax[0].source) {
                const auto& blk = nb[(oz + 1) * 9 + (oy + 1) * 3 + (ox + 1)];
                window[p++] = blk[(kz * n + ky) * n + kx];
            }
        }
}

Field SchwarzSmoother::scatter(const Grid& grid, int degree, std::span<const double> windows) const
{
    Field out(grid, degree);
    const std::size_t n = out.nodes_per_dir();
    const std::size_t wx = solver_.axis[0].size();
    const std::size_t wy = solver_.axis[1].size();
    const std::size_t wsize = solver_.size();

    parallel_for(grid.num_elements(), [&](std::size_t e) {
        std::array<const double*, 27> src;
        for (int oz = -1; oz <= 1; ++oz)
            for (int oy = -1; oy <= 1; ++oy)
                for (int ox = -1; ox <= 1; ++ox)
                    src[(oz + 1) * 9 + (oy + 1) * 3 + (ox + 1)] =
                        windows.data() + grid.neighbor(e, {ox, oy, oz}) * wsize;

        auto blk = out.element(e);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    double s = 0.0;
                    for (const auto& cz : scatter_[2][k])
                        for (const auto& cy : scatter_[1][j])
                            for (const auto& cx : scatter_[0][i]) {
                                const double* w = src[(cz.offset + 1) * 9 + (cy.offset + 1) * 3 + (cx.offset + 1)];
                                s += w[(cz.window * wy + cy.window) * wx + cx.window];
                            }
                    blk[(k * n + j) * n + i] = s;
                }
    });
    return out;
}

template <class Local>
Field SchwarzSmoother::accumulate(const Grid& grid, const Field& v, Local&& local) const
{
    if (v.num_elements() != grid.num_elements() || v.degree() != degree_)
        throw DimensionError("SchwarzSmoother: field does not match the smoother's level");

    const std::size_t wsize = solver_.size();
    const auto weights = solver_.weight_block();
    std::vector<double> windows(grid.num_elements() * wsize);
    parallel_for(grid.num_elements(), [&](std::size_t e) {
        thread_local std::vector<double> rs;
        thread_local Kron3Workspace ws;
        rs.resize(wsize);
        std::span<double> out(windows.data() + e * wsize, wsize);
        gather(grid, v, e, rs);
        local(std::span<const double>(rs), out, ws);
        for (std::size_t p = 0; p < wsize; ++p)
            out[p] *= weights[p];
    });
    return scatter(grid, v.degree(), windows);
}

Field SchwarzSmoother::correction(const Grid& grid, const Field& r) const
{
    return accumulate(grid, r, [this](std::span<const double> in, std::span<double> out, Kron3Workspace& ws) {
        solver_.solve(in, out, ws);
    });
}

Field SchwarzSmoother::weighted_sum(const Grid& grid, const Field& v) const
{
    return accumulate(grid, v, [](std::span<const double> in, std::span<double> out, Kron3Workspace&) {
        std::copy(in.begin(), in.end(), out.begin());
    });
}

void SchwarzSmoother::smooth(const LevelOperators& ops, Field& u, const Field& f, int steps) const
{
    require_compatible(u, f, "SchwarzSmoother::smooth");
    for (int s = 0; s < steps; ++s)
        u += correction(ops.grid, residual(ops, u, f));
}

} // namespace dgmg
