#include "dgmg/field.hpp"

#include "dgmg/errors.hpp"
#include "dgmg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dgmg {

Grid::Grid(std::array<double, 3> extents, std::array<int, 3> counts)
    : extents_(extents), counts_(counts)
{
    for (int d = 0; d < 3; ++d) {
        if (!(extents[d] > 0.0) || !std::isfinite(extents[d]))
            throw InputError("Grid: extents must be positive");
        if (counts[d] < 3)
            throw InputError("Grid: at least 3 elements per direction are required, got "
                             + std::to_string(counts[d]));
    }
}

std::size_t Grid::neighbor(std::size_t e, std::array<int, 3> offset) const
{
    auto c = element_coords(e);
    for (int d = 0; d < 3; ++d)
        c[d] = ((c[d] + offset[d]) % counts_[d] + counts_[d]) % counts_[d];
    return element_index(c[0], c[1], c[2]);
}

Field::Field(const Grid& grid, int degree, double fill)
    : degree_(degree)
{
    if (degree < 1)
        throw InputError("Field: degree must be >= 1");
    const std::size_t n = nodes_per_dir();
    block_ = n * n * n;
    values_.assign(grid.num_elements() * block_, fill);
}

void Field::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

Field& Field::operator+=(const Field& other)
{
    require_compatible(*this, other, "Field::operator+=");
    for (std::size_t i = 0; i < values_.size(); ++i)
        values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other)
{
    require_compatible(*this, other, "Field::operator-=");
    for (std::size_t i = 0; i < values_.size(); ++i)
        values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(double s)
{
    for (double& v : values_)
        v *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }

void axpy(double a, const Field& x, Field& y)
{
    require_compatible(x, y, "axpy");
    const auto xs = x.values();
    auto ys = y.values();
    for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] += a * xs[i];
}

double dot(const Field& a, const Field& b)
{
    require_compatible(a, b, "dot");
    const std::size_t ne = a.num_elements();
    std::vector<double> partial(ne);
    parallel_for(ne, [&](std::size_t e) {
        const auto x = a.element(e);
        const auto y = b.element(e);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += x[i] * y[i];
        partial[e] = s;
    });
    return ordered_sum(partial);
}

double norm2(const Field& a) { return std::sqrt(dot(a, a)); }

void require_compatible(const Field& a, const Field& b, const char* where)
{
    if (!a.compatible(b))
        throw DimensionError(std::string(where) + ": fields differ in degree or size");
}

} // namespace dgmg
