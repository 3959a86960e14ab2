#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace dgmg {

/// Periodic Cartesian grid of [0, l_x] x [0, l_y] x [0, l_z].
class Grid {
public:
    Grid() = default;
    /// Throws InputError for non-positive extents or fewer than 3 elements per direction.
    Grid(std::array<double, 3> extents, std::array<int, 3> counts);

    [[nodiscard]] const std::array<double, 3>& extents() const { return extents_; }
    [[nodiscard]] const std::array<int, 3>& counts() const { return counts_; }
    [[nodiscard]] double spacing(int dir) const { return extents_[dir] / counts_[dir]; }
    [[nodiscard]] std::array<double, 3> spacings() const
    {
        return {spacing(0), spacing(1), spacing(2)};
    }
    [[nodiscard]] std::size_t num_elements() const
    {
        return static_cast<std::size_t>(counts_[0]) * counts_[1] * counts_[2];
    }
    [[nodiscard]] double volume() const { return extents_[0] * extents_[1] * extents_[2]; }

    /// Linear element index, x fastest.
    [[nodiscard]] std::size_t element_index(int ex, int ey, int ez) const
    {
        return static_cast<std::size_t>(ex) + counts_[0] * (static_cast<std::size_t>(ey) + static_cast<std::size_t>(counts_[1]) * ez);
    }
    [[nodiscard]] std::array<int, 3> element_coords(std::size_t e) const
    {
        const int ex = static_cast<int>(e % counts_[0]);
        const std::size_t r = e / counts_[0];
        return {ex, static_cast<int>(r % counts_[1]), static_cast<int>(r / counts_[1])};
    }
    /// Periodic neighbor of element e shifted by offsets per direction.
    [[nodiscard]] std::size_t neighbor(std::size_t e, std::array<int, 3> offset) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::array<double, 3> extents_{};
    std::array<int, 3> counts_{};
};

/// Coefficient vector u^e_ijk over all elements of one level: element-major,
/// (P+1)^3 coefficients per element with i (x) fastest.
class Field {
public:
    Field() = default;
    Field(const Grid& grid, int degree, double fill = 0.0);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::size_t nodes_per_dir() const { return static_cast<std::size_t>(degree_) + 1; }
    [[nodiscard]] std::size_t block_size() const { return block_; }
    [[nodiscard]] std::size_t num_elements() const { return block_ == 0 ? 0 : values_.size() / block_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }

    [[nodiscard]] std::span<double> element(std::size_t e) { return {values_.data() + e * block_, block_}; }
    [[nodiscard]] std::span<const double> element(std::size_t e) const
    {
        return {values_.data() + e * block_, block_};
    }

    [[nodiscard]] std::span<double> values() { return values_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Same degree and length.
    [[nodiscard]] bool compatible(const Field& other) const
    {
        return degree_ == other.degree_ && values_.size() == other.values_.size();
    }

    void fill(double v);

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

private:
    int degree_ = 0;
    std::size_t block_ = 0;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);

/// y += a x
void axpy(double a, const Field& x, Field& y);
/// Euclidean inner product with an element-ordered reduction.
double dot(const Field& a, const Field& b);
double norm2(const Field& a);

/// Throws DimensionError unless a and b are compatible.
void require_compatible(const Field& a, const Field& b, const char* where);

} // namespace dgmg
