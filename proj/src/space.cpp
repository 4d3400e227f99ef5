#include "pmc/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "pmc/kernels.hpp"

namespace pmc {

Tolerances& global_tolerances() {
    static Tolerances tol = [] {
        Tolerances t;
        /* Environment override for both knobs at once: a single scale
         * factor applied to the defaults.  The CLI exposes --tol with the
         * same meaning. */
        if (const char* env = std::getenv("PMC_TOL_SCALE")) {
            char* end = nullptr;
            double s = std::strtod(env, &end);
            if (end != env && std::isfinite(s) && s > 0) {
                t.absolute *= s;
                t.relative *= s;
            }
        }
        return t;
    }();
    return tol;
}

double norm_p(std::span<const double> v, NormP p) {
    switch (p) {
        case NormP::one: {
            double s = 0;
            for (double x : v) s += std::abs(x);
            return s;
        }
        case NormP::two: {
            double s = 0;
            for (double x : v) s += x * x;
            return std::sqrt(s);
        }
        case NormP::inf: {
            double m = 0;
            for (double x : v) m = std::max(m, std::abs(x));
            return m;
        }
    }
    throw Error("norm_p: invalid norm tag");
}

double dual_norm_p(std::span<const double> v, NormP p) {
    switch (p) {
        case NormP::one:
            return norm_p(v, NormP::inf);
        case NormP::two:
            return norm_p(v, NormP::two);
        case NormP::inf:
            return norm_p(v, NormP::one);
    }
    throw Error("dual_norm_p: invalid norm tag");
}

EmbeddedSpace::EmbeddedSpace(int dimension, NormP p) : dim_(dimension), p_(p) {
    if (dimension < 1) throw ValidationError("embedded space: dimension must be positive");
}

EmbeddedSpace::EmbeddedSpace(int dimension, NormP p, const std::vector<std::vector<double>>& points)
    : EmbeddedSpace(dimension, p) {
    coords_.reserve(points.size() * static_cast<std::size_t>(dimension));
    for (const auto& pt : points) append_point(pt);
}

void EmbeddedSpace::check_index(int i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= count_) {
        std::ostringstream msg;
        msg << "embedded space: point index " << i << " out of range [0, " << count_ << ")";
        throw ValidationError(msg.str());
    }
}

std::span<const double> EmbeddedSpace::point(int i) const {
    check_index(i);
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
}

double EmbeddedSpace::distance(int i, int j) const {
    check_index(i);
    check_index(j);
    if (i == j) return 0.0;
    const double* a = coords_.data() + static_cast<std::size_t>(i) * dim_;
    const double* b = coords_.data() + static_cast<std::size_t>(j) * dim_;
    return kernels::point_distance(a, b, dim_, p_);
}

int EmbeddedSpace::append_point(std::span<const double> coords) {
    if (static_cast<int>(coords.size()) != dim_) {
        std::ostringstream msg;
        msg << "embedded space: point has " << coords.size() << " coordinates, expected " << dim_;
        throw ValidationError(msg.str());
    }
    for (double c : coords) {
        if (!std::isfinite(c)) throw ValidationError("embedded space: non-finite coordinate");
    }
    std::vector<double> key(coords.begin(), coords.end());
    auto [it, inserted] = lookup_.try_emplace(std::move(key), static_cast<int>(count_));
    if (!inserted) {
        std::ostringstream msg;
        msg << "embedded space: duplicate coordinates for indices " << it->second << " and "
            << count_;
        throw ValidationError(msg.str());
    }
    coords_.insert(coords_.end(), coords.begin(), coords.end());
    return static_cast<int>(count_++);
}

int EmbeddedSpace::find_or_append(std::span<const double> coords) {
    std::vector<double> key(coords.begin(), coords.end());
    auto it = lookup_.find(key);
    if (it != lookup_.end()) return it->second;
    return append_point(coords);
}

bool EmbeddedSpace::operator==(const EmbeddedSpace& other) const {
    return dim_ == other.dim_ && p_ == other.p_ && coords_ == other.coords_;
}

MetricReport validate_metric(const std::vector<std::vector<double>>& d, double tol) {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(d[i].size()) != n) {
            std::ostringstream msg;
            msg << "metric validation: row " << i << " has " << d[i].size() << " entries, expected "
                << n;
            throw ValidationError(msg.str());
        }
    }
    MetricReport report;
    using Kind = MetricViolation::Kind;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = d[i][j];
            if (!std::isfinite(v)) {
                report.violations.push_back({Kind::nonfinite, i, j, -1, v, 0.0});
                continue;
            }
            if (i == j && v != 0.0) {
                report.violations.push_back({Kind::nonzero_diagonal, i, j, -1, v, 0.0});
            }
            if (i != j && v <= 0.0) {
                report.violations.push_back({Kind::nonpositive_off_diagonal, i, j, -1, v, 0.0});
            }
            if (j > i && d[i][j] != d[j][i]) {
                report.violations.push_back({Kind::asymmetric, i, j, -1, d[i][j], d[j][i]});
            }
        }
    }
    /* Triangle scan only makes sense on finite data. */
    if (report.ok()) {
        auto triangles = kernels::triangle_violations(d, tol);
        for (const auto& t : triangles) {
            report.violations.push_back({Kind::triangle, t.i, t.j, t.k, t.lhs, t.rhs});
        }
    }
    return report;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> d) : d_(std::move(d)) {
    if (d_.empty()) throw ValidationError("metric space: empty distance matrix");
    MetricReport report = validate_metric(d_, global_tolerances().absolute);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        std::ostringstream msg;
        msg << "metric space: matrix is not a metric (" << report.violations.size()
            << " violation(s); first at indices " << v.i << "," << v.j;
        if (v.k >= 0) msg << "," << v.k;
        msg << ")";
        throw ValidationError(msg.str());
    }
}

double FiniteMetricSpace::distance(int i, int j) const {
    const int n = size();
    if (i < 0 || i >= n || j < 0 || j >= n) {
        std::ostringstream msg;
        msg << "metric space: index pair (" << i << ", " << j << ") out of range [0, " << n << ")";
        throw ValidationError(msg.str());
    }
    return d_[i][j];
}

const EmbeddedSpace& Space::embedded() const {
    if (!is_embedded()) throw ValidationError("space: expected an embedded space");
    return std::get<EmbeddedSpace>(rep_);
}

EmbeddedSpace& Space::embedded() {
    if (!is_embedded()) throw ValidationError("space: expected an embedded space");
    return std::get<EmbeddedSpace>(rep_);
}

const FiniteMetricSpace& Space::metric() const {
    if (is_embedded()) throw ValidationError("space: expected a finite metric space");
    return std::get<FiniteMetricSpace>(rep_);
}

int Space::size() const {
    return is_embedded() ? std::get<EmbeddedSpace>(rep_).size()
                         : std::get<FiniteMetricSpace>(rep_).size();
}

double Space::distance(int i, int j) const {
    return is_embedded() ? std::get<EmbeddedSpace>(rep_).distance(i, j)
                         : std::get<FiniteMetricSpace>(rep_).distance(i, j);
}

SpacePtr make_space(EmbeddedSpace s) { return std::make_shared<const Space>(std::move(s)); }
SpacePtr make_space(FiniteMetricSpace s) { return std::make_shared<const Space>(std::move(s)); }

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Path geodesic_chord(EmbeddedSpace& space, int i, int j, int k) {
    if (i == j) throw ValidationError("geodesic chord: endpoints coincide");
    if (k < 1) throw ValidationError("geodesic chord: need at least one step");
    std::span<const double> a = space.point(i);
    std::span<const double> b = space.point(j);
    const int dim = space.dimension();

    std::vector<int> vertices;
    vertices.reserve(static_cast<std::size_t>(k) + 1);
    vertices.push_back(i);
    std::vector<double> x(dim);
    /* Copy the endpoint coordinates before appending: growth may
     * reallocate the backing store. */
    std::vector<double> av(a.begin(), a.end()), bv(b.begin(), b.end());
    for (int s = 1; s < k; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(k);
        for (int c = 0; c < dim; ++c) x[c] = (1.0 - t) * av[c] + t * bv[c];
        int idx = space.find_or_append(x);
        if (idx != vertices.back()) vertices.push_back(idx);
    }
    if (vertices.back() != j) vertices.push_back(j);
    return Path(std::move(vertices));
}

Path geodesic_chord(Space& space, int i, int j, int k) {
    if (!space.is_embedded()) {
        throw UnsupportedGeodesicError(
            "geodesic chord: space has no linear structure (bare metric)");
    }
    return geodesic_chord(space.embedded(), i, j, k);
}

}  // namespace pmc
