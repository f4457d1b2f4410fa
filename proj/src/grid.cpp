#include "pgap/grid.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pgap/errors.hpp"

namespace pgap {

std::string_view to_string(Shape shape) noexcept {
    switch (shape) {
        case Shape::Interval: return "INTERVAL";
        case Shape::Rectangle: return "RECTANGLE";
        case Shape::Box: return "BOX";
    }
    return "UNKNOWN";
}

MeshedDomain MeshedDomain::make(std::span<const std::array<double, 2>> extents,
                                std::span<const int> resolution) {
    if (extents.empty() || extents.size() > kMaxDim) {
        throw InvalidParameter("domain dimension must be 1, 2 or 3");
    }
    if (extents.size() != resolution.size()) {
        throw InvalidParameter("need one resolution per axis");
    }
    MeshedDomain d;
    d.n_dim_ = static_cast<int>(extents.size());
    for (int i = 0; i < d.n_dim_; ++i) {
        const auto [lo, hi] = extents[static_cast<std::size_t>(i)];
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
            throw InvalidParameter("degenerate extent on axis " + std::to_string(i));
        }
        if (resolution[static_cast<std::size_t>(i)] < 1) {
            throw InvalidParameter("resolution must be >= 1 on every axis");
        }
        d.extents_[static_cast<std::size_t>(i)] = {lo, hi};
        d.resolution_[static_cast<std::size_t>(i)] = resolution[static_cast<std::size_t>(i)];
    }
    for (int i = d.n_dim_; i < kMaxDim; ++i) {
        d.extents_[static_cast<std::size_t>(i)] = {0.0, 1.0};
        d.resolution_[static_cast<std::size_t>(i)] = 1;
    }
    return d;
}

MeshedDomain MeshedDomain::unit_box(int n_dim, int grid) {
    if (n_dim < 1 || n_dim > kMaxDim) throw InvalidParameter("dimension must be 1, 2 or 3");
    std::vector<std::array<double, 2>> ext(static_cast<std::size_t>(n_dim), {0.0, 1.0});
    std::vector<int> res(static_cast<std::size_t>(n_dim), grid);
    return make(ext, res);
}

MeshedDomain MeshedDomain::centered_unit_box(int n_dim, int grid) {
    if (n_dim < 1 || n_dim > kMaxDim) throw InvalidParameter("dimension must be 1, 2 or 3");
    std::vector<std::array<double, 2>> ext(static_cast<std::size_t>(n_dim), {-0.5, 0.5});
    std::vector<int> res(static_cast<std::size_t>(n_dim), grid);
    return make(ext, res);
}

Shape MeshedDomain::shape() const noexcept {
    switch (n_dim_) {
        case 1: return Shape::Interval;
        case 2: return Shape::Rectangle;
        default: return Shape::Box;
    }
}

std::size_t MeshedDomain::size() const noexcept {
    std::size_t n = 1;
    for (int i = 0; i < n_dim_; ++i) n *= static_cast<std::size_t>(resolution_[static_cast<std::size_t>(i)]);
    return n;
}

double MeshedDomain::node_volume() const noexcept {
    double v = 1.0;
    for (int i = 0; i < n_dim_; ++i) v *= spacing(i);
    return v;
}

std::array<int, kMaxDim> MeshedDomain::unflatten(std::size_t flat) const noexcept {
    std::array<int, kMaxDim> idx{};
    for (int i = n_dim_ - 1; i >= 0; --i) {
        const auto n = static_cast<std::size_t>(resolution_[static_cast<std::size_t>(i)]);
        idx[static_cast<std::size_t>(i)] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

std::array<double, kMaxDim> MeshedDomain::position(std::size_t flat) const noexcept {
    const auto idx = unflatten(flat);
    std::array<double, kMaxDim> x{};
    for (int i = 0; i < n_dim_; ++i) x[static_cast<std::size_t>(i)] = coordinate(i, idx[static_cast<std::size_t>(i)]);
    return x;
}

std::array<double, kMaxDim> MeshedDomain::center() const noexcept {
    std::array<double, kMaxDim> c{};
    for (int i = 0; i < n_dim_; ++i) c[static_cast<std::size_t>(i)] = 0.5 * (low(i) + high(i));
    return c;
}

namespace {

// Distance of a coordinate to the nearest grid line, in units of the spacing.
double lattice_offset(const MeshedDomain& d, int axis, double x) {
    const double t = (x - d.low(axis)) / d.spacing(axis);
    return std::abs(t - std::round(t));
}

constexpr double kOnLatticeTol = 1e-9;

}  // namespace

bool MeshedDomain::is_node(std::span<const double> point) const {
    if (static_cast<int>(point.size()) < n_dim_) throw InvalidInput("point has too few coordinates");
    for (int i = 0; i < n_dim_; ++i) {
        const double x = point[static_cast<std::size_t>(i)];
        if (x < low(i) - kOnLatticeTol * spacing(i) || x > high(i) + kOnLatticeTol * spacing(i)) {
            return false;
        }
        if (lattice_offset(*this, i, x) > kOnLatticeTol) return false;
    }
    return true;
}

std::array<double, kMaxDim> MeshedDomain::off_node(std::span<const double> point) const {
    if (static_cast<int>(point.size()) < n_dim_) throw InvalidInput("point has too few coordinates");
    std::array<double, kMaxDim> out{};
    for (int i = 0; i < n_dim_; ++i) {
        double x = point[static_cast<std::size_t>(i)];
        if (lattice_offset(*this, i, x) <= kOnLatticeTol) x += 0.5 * spacing(i);
        out[static_cast<std::size_t>(i)] = x;
    }
    return out;
}

ScalarField::ScalarField(MeshedDomain d, std::vector<double> v)
    : domain(std::move(d)), values(std::move(v)) {
    if (values.size() != domain.size()) {
        throw InvalidInput("field has " + std::to_string(values.size()) + " values, domain has " +
                           std::to_string(domain.size()) + " interior nodes");
    }
    for (double x : values) {
        if (!std::isfinite(x)) throw InvalidInput("field contains non-finite values");
    }
}

ScalarField ScalarField::sample(const MeshedDomain& d,
                                const std::function<double(std::span<const double>)>& f) {
    std::vector<double> v(d.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto x = d.position(k);
        v[k] = f(std::span<const double>(x.data(), static_cast<std::size_t>(d.n_dim())));
    }
    return ScalarField(d, std::move(v));
}

namespace {

// Zero-padded copy of the interior values: padded size n + 2 along each used axis.
struct Padded {
    std::array<std::size_t, kMaxDim> dims{1, 1, 1};
    std::array<std::size_t, kMaxDim> stride{0, 0, 0};
    std::vector<double> data;

    explicit Padded(const MeshedDomain& d) {
        for (int i = 0; i < d.n_dim(); ++i) dims[static_cast<std::size_t>(i)] = static_cast<std::size_t>(d.resolution(i)) + 2;
        stride[2] = 1;
        stride[1] = dims[2];
        stride[0] = dims[1] * dims[2];
        data.assign(dims[0] * dims[1] * dims[2], 0.0);
    }

    [[nodiscard]] std::size_t interior_offset(int n_dim) const {
        std::size_t o = 0;
        for (int i = 0; i < n_dim; ++i) o += stride[static_cast<std::size_t>(i)];
        return o;
    }

    template <class F>
    void for_each_interior(const MeshedDomain& d, F&& f) {
        const int nd = d.n_dim();
        const std::size_t r0 = static_cast<std::size_t>(d.resolution(0));
        const std::size_t r1 = nd > 1 ? static_cast<std::size_t>(d.resolution(1)) : 1;
        const std::size_t r2 = nd > 2 ? static_cast<std::size_t>(d.resolution(2)) : 1;
        const std::size_t base = interior_offset(nd);
        std::size_t flat = 0;
        for (std::size_t i = 0; i < r0; ++i)
            for (std::size_t j = 0; j < r1; ++j)
                for (std::size_t k = 0; k < r2; ++k, ++flat)
                    f(flat, base + i * stride[0] + j * (nd > 1 ? stride[1] : 0) +
                                k * (nd > 2 ? stride[2] : 0));
    }
};

Padded pad(const ScalarField& field) {
    Padded p(field.domain);
    p.for_each_interior(field.domain, [&](std::size_t flat, std::size_t at) {
        p.data[at] = field.values[flat];
    });
    return p;
}

void require_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidParameter("p must be a finite number > 1");
}

}  // namespace

RayleighParts rayleigh_parts(const ScalarField& field, double p, bool with_actions) {
    require_p(p);
    const MeshedDomain& d = field.domain;
    const int nd = d.n_dim();
    const double vol = d.node_volume();
    Padded u = pad(field);

    std::array<double, kMaxDim> inv_h{};
    std::array<std::size_t, kMaxDim> axis_stride{};
    for (int i = 0; i < nd; ++i) {
        inv_h[static_cast<std::size_t>(i)] = 1.0 / d.spacing(i);
        axis_stride[static_cast<std::size_t>(i)] = u.stride[static_cast<std::size_t>(i)];
    }

    Padded action(d);
    RayleighParts parts;

    // Cells are anchored at padded indices 0..n along each used axis.
    const std::size_t a0 = static_cast<std::size_t>(d.resolution(0)) + 1;
    const std::size_t a1 = nd > 1 ? static_cast<std::size_t>(d.resolution(1)) + 1 : 1;
    const std::size_t a2 = nd > 2 ? static_cast<std::size_t>(d.resolution(2)) + 1 : 1;
    double energy = 0.0;
    std::array<double, kMaxDim> g{};
    for (std::size_t i = 0; i < a0; ++i) {
        for (std::size_t j = 0; j < a1; ++j) {
            for (std::size_t k = 0; k < a2; ++k) {
                const std::size_t at = i * u.stride[0] + j * u.stride[1] + k * u.stride[2];
                const double here = u.data[at];
                double g2 = 0.0;
                for (int ax = 0; ax < nd; ++ax) {
                    const auto a = static_cast<std::size_t>(ax);
                    g[a] = (u.data[at + axis_stride[a]] - here) * inv_h[a];
                    g2 += g[a] * g[a];
                }
                if (g2 == 0.0) continue;
                const double gnorm = std::sqrt(g2);
                if (p < 2.0 && gnorm < kSingularGradientCutoff) continue;
                const double w = std::pow(gnorm, p - 2.0);
                energy += w * g2;
                if (!with_actions) continue;
                for (int ax = 0; ax < nd; ++ax) {
                    const auto a = static_cast<std::size_t>(ax);
                    const double flux = w * g[a] * inv_h[a];
                    action.data[at + axis_stride[a]] += flux;
                    action.data[at] -= flux;
                }
            }
        }
    }
    parts.numerator = energy * vol;

    double mass = 0.0;
    for (double x : field.values) mass += std::pow(std::abs(x), p);
    parts.denominator = mass * vol;

    if (with_actions) {
        parts.stiffness_action.resize(field.values.size());
        parts.mass_action.resize(field.values.size());
        action.for_each_interior(d, [&](std::size_t flat, std::size_t at) {
            parts.stiffness_action[flat] = action.data[at] * vol;
        });
        for (std::size_t k = 0; k < field.values.size(); ++k) {
            const double x = field.values[k];
            parts.mass_action[k] = x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), p - 1.0), x) * vol;
        }
    }
    return parts;
}

double rayleigh(const ScalarField& field, double p) {
    const auto parts = rayleigh_parts(field, p, false);
    if (!(parts.denominator > 0.0)) throw InvalidInput("Rayleigh quotient of a zero field");
    return parts.numerator / parts.denominator;
}

ScalarField rayleigh_gradient(const ScalarField& field, double p) {
    const auto parts = rayleigh_parts(field, p, true);
    if (!(parts.denominator > 0.0)) throw InvalidInput("Rayleigh quotient of a zero field");
    const double r = parts.numerator / parts.denominator;
    const double scale = p / parts.denominator;
    std::vector<double> grad(field.values.size());
    for (std::size_t k = 0; k < grad.size(); ++k) {
        grad[k] = scale * (parts.stiffness_action[k] - r * parts.mass_action[k]);
    }
    return ScalarField(field.domain, std::move(grad));
}

double lp_integral(const ScalarField& field, double p) {
    double s = 0.0;
    for (double x : field.values) s += std::pow(std::abs(x), p);
    return s * field.domain.node_volume();
}

double point_norm(std::span<const double> x, NormKind kind, double p) {
    if (kind == NormKind::L2) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

double weighted_moment(const ScalarField& field, double p, std::span<const double> origin,
                       NormKind norm, ExponentSign sign) {
    require_p(p);
    const MeshedDomain& d = field.domain;
    const int nd = d.n_dim();
    if (static_cast<int>(origin.size()) < nd) throw InvalidInput("origin has too few coordinates");
    if (sign == ExponentSign::Minus && d.is_node(origin)) {
        throw InvalidInput("singular weight with the origin on a grid node");
    }
    const double exponent = sign == ExponentSign::Plus ? p : -p;
    double s = 0.0;
    std::array<double, kMaxDim> rel{};
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        const double u = field.values[k];
        if (u == 0.0) continue;
        const auto x = d.position(k);
        for (int i = 0; i < nd; ++i) rel[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - origin[static_cast<std::size_t>(i)];
        const std::span<const double> r(rel.data(), static_cast<std::size_t>(nd));
        double weight;
        if (norm == NormKind::Lp && sign == ExponentSign::Plus) {
            weight = 0.0;
            for (double v : r) weight += std::pow(std::abs(v), p);
        } else {
            weight = std::pow(point_norm(r, norm, p), exponent);
        }
        s += std::pow(std::abs(u), p) * weight;
    }
    return s * d.node_volume();
}

void write_field(std::ostream& out, const ScalarField& field) {
    const MeshedDomain& d = field.domain;
    std::ostringstream header;
    header << std::setprecision(std::numeric_limits<double>::max_digits10);
    header << "shape=" << to_string(d.shape()) << " n_dim=" << d.n_dim() << " extents=";
    for (int i = 0; i < d.n_dim(); ++i) header << (i ? "," : "") << d.low(i) << ":" << d.high(i);
    header << " resolution=";
    for (int i = 0; i < d.n_dim(); ++i) header << (i ? "," : "") << d.resolution(i);
    out << header.str() << '\n';
    std::ostringstream body;
    body << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (double v : field.values) body << v << '\n';
    out << body.str();
}

namespace {

std::string header_value(const std::string& line, const std::string& key) {
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) {
        if (token.rfind(key + "=", 0) == 0) return token.substr(key.size() + 1);
    }
    throw InvalidInput("snapshot header lacks '" + key + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidInput("bad number '" + s + "' in snapshot");
    }
    if (used != s.size()) throw InvalidInput("bad number '" + s + "' in snapshot");
    return v;
}

}  // namespace

ScalarField read_field(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("empty snapshot");
    const int nd = static_cast<int>(parse_double(header_value(line, "n_dim")));
    const auto ext_tokens = split(header_value(line, "extents"), ',');
    const auto res_tokens = split(header_value(line, "resolution"), ',');
    if (nd < 1 || nd > kMaxDim || static_cast<int>(ext_tokens.size()) != nd ||
        static_cast<int>(res_tokens.size()) != nd) {
        throw InvalidInput("inconsistent snapshot header: " + line);
    }
    std::vector<std::array<double, 2>> ext;
    std::vector<int> res;
    for (int i = 0; i < nd; ++i) {
        const auto lh = split(ext_tokens[static_cast<std::size_t>(i)], ':');
        if (lh.size() != 2) throw InvalidInput("bad extent in snapshot header");
        ext.push_back({parse_double(lh[0]), parse_double(lh[1])});
        res.push_back(static_cast<int>(parse_double(res_tokens[static_cast<std::size_t>(i)])));
    }
    const auto domain = MeshedDomain::make(ext, res);
    if (header_value(line, "shape") != to_string(domain.shape())) {
        throw InvalidInput("snapshot shape does not match its dimension");
    }
    std::vector<double> values;
    values.reserve(domain.size());
    while (values.size() < domain.size() && std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(parse_double(line));
    }
    if (values.size() != domain.size()) throw InvalidInput("snapshot is truncated");
    return ScalarField(domain, std::move(values));
}

}  // namespace pgap
