#pragma once

#include <map>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "pmc/core.hpp"
#include "pmc/path.hpp"

namespace pmc {

/* Which l^p norm an embedded space carries.  Only 1, 2 and infinity are
 * supported; everything downstream (dual norms for Lipschitz constants,
 * chord lengths) is written against these three. */
enum class NormP { one, two, inf };

double norm_p(std::span<const double> v, NormP p);
/* Dual exponent norm, used for Lipschitz constants of affine maps:
 * dual of 1 is inf, dual of 2 is 2, dual of inf is 1. */
double dual_norm_p(std::span<const double> v, NormP p);

/* Finite point cloud in R^dim with an l^p distance.
 *
 * Points are addressed by index.  Distinct indices must hold distinct
 * coordinate tuples (exact comparison); `append_point` enforces this and
 * `find_or_append` reuses the existing index on an exact match.  Appending
 * never invalidates existing indices, but it is not safe to run concurrently
 * with reads; treat a space as frozen once it is shared.
 */
class EmbeddedSpace {
  public:
    EmbeddedSpace(int dimension, NormP p);
    EmbeddedSpace(int dimension, NormP p, const std::vector<std::vector<double>>& points);

    int size() const { return static_cast<int>(count_); }
    int dimension() const { return dim_; }
    NormP norm() const { return p_; }

    std::span<const double> point(int i) const;
    double distance(int i, int j) const;

    /* Adds a new point; rejects coordinates already present. */
    int append_point(std::span<const double> coords);
    /* Returns the index of an exact-coordinate match, appending if absent. */
    int find_or_append(std::span<const double> coords);

    bool operator==(const EmbeddedSpace& other) const;

  private:
    void check_index(int i) const;

    int dim_;
    NormP p_;
    std::size_t count_ = 0;
    std::vector<double> coords_;                 // flattened, dim_ per point
    std::map<std::vector<double>, int> lookup_;  // exact coordinates -> index
};

/* One semantic defect of a distance matrix. */
struct MetricViolation {
    enum class Kind {
        asymmetric,
        nonzero_diagonal,
        nonpositive_off_diagonal,
        nonfinite,
        triangle,
    };
    Kind kind;
    int i = -1, j = -1, k = -1;
    /* For triangle violations: lhs = d(i,k), rhs = d(i,j) + d(j,k). */
    double lhs = 0.0, rhs = 0.0;
};

struct MetricReport {
    std::vector<MetricViolation> violations;
    bool ok() const { return violations.empty(); }
};

/* Full scan of a candidate distance matrix: symmetry, zero diagonal,
 * positive off-diagonal entries, finiteness, and every ordered triangle
 * inequality within `tol` slack.  Throws ValidationError if the matrix is
 * not square; semantic defects are reported, not thrown. */
MetricReport validate_metric(const std::vector<std::vector<double>>& d, double tol = 1e-12);

/* Finite metric space given by an explicit distance matrix.  The
 * constructor validates the matrix and rejects defective input. */
class FiniteMetricSpace {
  public:
    explicit FiniteMetricSpace(std::vector<std::vector<double>> d);

    int size() const { return static_cast<int>(d_.size()); }
    double distance(int i, int j) const;

    bool operator==(const FiniteMetricSpace& other) const { return d_ == other.d_; }

  private:
    std::vector<std::vector<double>> d_;
};

/* A point space: either an embedded point cloud or a bare finite metric.
 * Value type; currents and measures refer to a frozen shared instance. */
class Space {
  public:
    Space(EmbeddedSpace s) : rep_(std::move(s)) {}
    Space(FiniteMetricSpace s) : rep_(std::move(s)) {}

    bool is_embedded() const { return std::holds_alternative<EmbeddedSpace>(rep_); }

    const EmbeddedSpace& embedded() const;
    EmbeddedSpace& embedded();
    const FiniteMetricSpace& metric() const;

    int size() const;
    double distance(int i, int j) const;

    bool operator==(const Space& other) const { return rep_ == other.rep_; }

  private:
    std::variant<EmbeddedSpace, FiniteMetricSpace> rep_;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_space(EmbeddedSpace s);
SpacePtr make_space(FiniteMetricSpace s);

/* True when the two handles denote the same space: identical object or
 * equal content.  Used to reject cross-space current arithmetic. */
bool same_space(const SpacePtr& a, const SpacePtr& b);

/* Straight segment from point i to point j sampled at k equal parameter
 * steps: vertices at t = 0, 1/k, ..., 1.  Interior samples are appended to
 * the space (reusing indices on exact coordinate matches).  Requires i != j
 * and k >= 1; requires linear structure, so metric-only spaces refuse.
 */
Path geodesic_chord(EmbeddedSpace& space, int i, int j, int k = 1);

/* Same, but refuses metric-only spaces with UnsupportedGeodesicError. */
Path geodesic_chord(Space& space, int i, int j, int k = 1);

}  // namespace pmc
