#include "pmc/measure.hpp"

#include <algorithm>
#include <cmath>

namespace pmc {

namespace {

void insert_clean(std::map<int, double>& atoms, int index, double weight) {
    if (index < 0) throw ValidationError("measure: negative atom index");
    if (!std::isfinite(weight)) throw ValidationError("measure: non-finite atom weight");
    auto it = atoms.find(index);
    const double next = (it == atoms.end() ? 0.0 : it->second) + weight;
    if (std::abs(next) <= kWeightFloor) {
        if (it != atoms.end()) atoms.erase(it);
    } else if (it == atoms.end()) {
        atoms.emplace(index, next);
    } else {
        it->second = next;
    }
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::initializer_list<std::pair<int, double>> atoms) {
    for (const auto& [index, weight] : atoms) add(index, weight);
}

AtomicMeasure AtomicMeasure::dirac(int index, double weight) {
    AtomicMeasure mu;
    mu.add(index, weight);
    return mu;
}

void AtomicMeasure::add(int index, double weight) { insert_clean(atoms_, index, weight); }

double AtomicMeasure::at(int index) const {
    auto it = atoms_.find(index);
    return it == atoms_.end() ? 0.0 : it->second;
}

double AtomicMeasure::total_weight() const {
    double s = 0.0;
    for (const auto& [index, weight] : atoms_) s += weight;
    return s;
}

AtomicMeasure AtomicMeasure::operator+(const AtomicMeasure& other) const {
    AtomicMeasure out = *this;
    for (const auto& [index, weight] : other.atoms_) insert_clean(out.atoms_, index, weight);
    return out;
}

AtomicMeasure AtomicMeasure::operator-(const AtomicMeasure& other) const {
    AtomicMeasure out = *this;
    for (const auto& [index, weight] : other.atoms_) insert_clean(out.atoms_, index, -weight);
    return out;
}

AtomicMeasure AtomicMeasure::operator*(double scalar) const {
    if (!std::isfinite(scalar)) throw ValidationError("measure: non-finite scale factor");
    AtomicMeasure out;
    for (const auto& [index, weight] : atoms_) insert_clean(out.atoms_, index, weight * scalar);
    return out;
}

AtomicMeasure AtomicMeasure::operator-() const { return *this * -1.0; }

JordanPair jordan(const AtomicMeasure& mu) {
    JordanPair out;
    for (const auto& [index, weight] : mu.atoms()) {
        if (weight > 0) {
            out.positive.add(index, weight);
        } else {
            out.negative.add(index, -weight);
        }
    }
    return out;
}

double total_variation(const AtomicMeasure& mu) {
    double s = 0.0;
    for (const auto& [index, weight] : mu.atoms()) s += std::abs(weight);
    return s;
}

AtomicMeasure meet(const AtomicMeasure& a, const AtomicMeasure& b) {
    for (const auto& [index, weight] : a.atoms()) {
        if (weight < 0) throw ValidationError("meet: first measure has a negative atom");
    }
    for (const auto& [index, weight] : b.atoms()) {
        if (weight < 0) throw ValidationError("meet: second measure has a negative atom");
    }
    AtomicMeasure out;
    for (const auto& [index, weight] : a.atoms()) {
        const double other = b.at(index);
        if (other > 0) out.add(index, std::min(weight, other));
    }
    return out;
}

}  // namespace pmc
