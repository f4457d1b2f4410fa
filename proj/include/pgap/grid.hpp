#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pgap {

inline constexpr int kMaxDim = 3;

enum class Shape { Interval, Rectangle, Box };

std::string_view to_string(Shape shape) noexcept;

/// Axis-aligned box in N <= 3 dimensions with a uniform grid of interior nodes.
/// Boundary nodes are implicit and always carry the value 0.
class MeshedDomain {
public:
    MeshedDomain() = default;

    /// One (low, high) extent and one interior node count per axis.
    static MeshedDomain make(std::span<const std::array<double, 2>> extents,
                             std::span<const int> resolution);

    /// (0, 1)^N with `grid` interior nodes per axis.
    static MeshedDomain unit_box(int n_dim, int grid);

    /// (-1/2, 1/2)^N with `grid` interior nodes per axis.
    static MeshedDomain centered_unit_box(int n_dim, int grid);

    [[nodiscard]] int n_dim() const noexcept { return n_dim_; }
    [[nodiscard]] Shape shape() const noexcept;
    [[nodiscard]] double low(int axis) const { return extents_.at(axis)[0]; }
    [[nodiscard]] double high(int axis) const { return extents_.at(axis)[1]; }
    [[nodiscard]] double length(int axis) const { return high(axis) - low(axis); }
    [[nodiscard]] int resolution(int axis) const { return resolution_.at(axis); }
    [[nodiscard]] double spacing(int axis) const {
        return length(axis) / (resolution(axis) + 1);
    }

    /// Number of interior nodes.
    [[nodiscard]] std::size_t size() const noexcept;
    /// Product of the spacings: quadrature weight of a node and volume of a cell.
    [[nodiscard]] double node_volume() const noexcept;

    /// Coordinate of interior node index k (0-based) along an axis.
    [[nodiscard]] double coordinate(int axis, int k) const {
        return low(axis) + (k + 1) * spacing(axis);
    }

    /// Per-axis interior indices of a flat (row-major, last axis fastest) index.
    [[nodiscard]] std::array<int, kMaxDim> unflatten(std::size_t flat) const noexcept;
    [[nodiscard]] std::array<double, kMaxDim> position(std::size_t flat) const noexcept;

    [[nodiscard]] std::array<double, kMaxDim> center() const noexcept;

    /// True if the point coincides with a grid node, boundary nodes included.
    [[nodiscard]] bool is_node(std::span<const double> point) const;

    /// Moves every coordinate that sits on a grid line by half a spacing so that the
    /// point is strictly between nodes.
    [[nodiscard]] std::array<double, kMaxDim> off_node(std::span<const double> point) const;

    friend bool operator==(const MeshedDomain&, const MeshedDomain&) = default;

private:
    int n_dim_ = 0;
    std::array<std::array<double, 2>, kMaxDim> extents_{};
    std::array<int, kMaxDim> resolution_{};
};

/// Nodal values on the interior nodes of a domain.
struct ScalarField {
    MeshedDomain domain;
    std::vector<double> values;

    ScalarField() = default;
    ScalarField(MeshedDomain d, std::vector<double> v);

    /// Samples f at every interior node.
    static ScalarField sample(const MeshedDomain& d,
                              const std::function<double(std::span<const double>)>& f);
};

/// Pieces of the discrete Rayleigh quotient R = numerator / denominator.
struct RayleighParts {
    double numerator = 0.0;    ///< sum over cells |forward gradient|_2^p * cell volume
    double denominator = 0.0;  ///< sum over nodes |u|^p * node volume
    /// (1/p) d numerator / du_k: the discrete -Delta_p u weighted by node volume.
    std::vector<double> stiffness_action;
    /// (1/p) d denominator / du_k = |u_k|^{p-2} u_k * node volume.
    std::vector<double> mass_action;
};

/// Gradient magnitudes below this are treated as zero for 1 < p < 2.
inline constexpr double kSingularGradientCutoff = 1e-12;

RayleighParts rayleigh_parts(const ScalarField& field, double p, bool with_actions = true);

/// Discrete Rayleigh quotient with ghost-zero forward differences. Throws InvalidInput if
/// the field is identically zero.
double rayleigh(const ScalarField& field, double p);

/// d R / d u_k at every interior node.
ScalarField rayleigh_gradient(const ScalarField& field, double p);

/// sum_nodes |u|^p * node volume.
double lp_integral(const ScalarField& field, double p);

enum class NormKind { L2, Lp };
enum class ExponentSign { Plus, Minus };

/// ||x||_2 or (sum |x_i|^p)^{1/p}.
double point_norm(std::span<const double> x, NormKind kind, double p);

/// integral of |u|^p ||x - origin||^{+-p} by nodal quadrature. The Minus variant throws
/// InvalidInput if the origin coincides with a node.
double weighted_moment(const ScalarField& field, double p, std::span<const double> origin,
                       NormKind norm, ExponentSign sign);

/// Text snapshot: one header line (shape, extents, resolution), then one value per line in
/// row-major order.
void write_field(std::ostream& out, const ScalarField& field);
ScalarField read_field(std::istream& in);

}  // namespace pgap
