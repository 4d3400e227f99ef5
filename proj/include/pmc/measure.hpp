#pragma once

#include <initializer_list>
#include <map>
#include <utility>

#include "pmc/core.hpp"

namespace pmc {

/* Finitely supported signed measure on the points of a space: a sparse map
 * index -> weight.  Canonical form never stores entries with |weight| at or
 * below the weight floor, so support, total variation and comparisons are
 * well defined.  Value type: all operations return new measures. */
class AtomicMeasure {
  public:
    AtomicMeasure() = default;
    AtomicMeasure(std::initializer_list<std::pair<int, double>> atoms);

    static AtomicMeasure dirac(int index, double weight = 1.0);

    /* Accumulates weight onto an atom (builder use; canonical form is
     * re-established immediately). */
    void add(int index, double weight);

    const std::map<int, double>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    int support_size() const { return static_cast<int>(atoms_.size()); }
    /* Weight at an index, zero when the atom is absent. */
    double at(int index) const;
    double total_weight() const;

    AtomicMeasure operator+(const AtomicMeasure&) const;
    AtomicMeasure operator-(const AtomicMeasure&) const;
    AtomicMeasure operator*(double scalar) const;
    AtomicMeasure operator-() const;

    bool operator==(const AtomicMeasure&) const = default;

  private:
    std::map<int, double> atoms_;
};

struct JordanPair {
    AtomicMeasure positive;
    AtomicMeasure negative;
};

/* Splits into positive and negative parts; both are nonnegative, have
 * disjoint supports and satisfy mu = positive - negative. */
JordanPair jordan(const AtomicMeasure& mu);

double total_variation(const AtomicMeasure& mu);

/* Common part of two nonnegative measures: atom-wise minimum. */
AtomicMeasure meet(const AtomicMeasure& a, const AtomicMeasure& b);

}  // namespace pmc
