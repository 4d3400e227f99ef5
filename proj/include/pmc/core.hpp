#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pmc {

/* Numeric tolerances used across the library.
 *
 * `absolute` guards exact identities (boundary sums, mass splits) and
 * `relative` guards derived quantities (costs, gaps, lengths).  A single
 * mutable instance is shared so the CLI / environment can widen or tighten
 * every check at once; library code never hard-codes other thresholds except
 * the canonicalization cutoff below.
 */
struct Tolerances {
    double absolute = 1e-12;
    double relative = 1e-9;
};

Tolerances& global_tolerances();

/* Weights with magnitude at or below this are treated as zero when measures
 * and currents are brought to canonical form.  It is deliberately far below
 * the working tolerances so dropping them never moves a checked quantity. */
inline constexpr double kWeightFloor = 1e-15;

/* Base class for all library errors. */
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Rejection of malformed or inconsistent input (bad indices, mismatched
 * spaces, unbalanced masses, malformed documents).  The CLI maps this to
 * exit code 1. */
class ValidationError : public Error {
  public:
    using Error::Error;
};

/* Request for a geodesic construction on a space that carries no linear
 * structure (a bare metric given by a matrix). */
class UnsupportedGeodesicError : public Error {
  public:
    using Error::Error;
};

/* Raised by the path decomposition when the input has a directed cycle in
 * its positive-weight support.  Carries one offending cycle as a vertex
 * sequence (first vertex repeated at the end). */
class NotAcyclicError : public Error {
  public:
    NotAcyclicError(std::string message, std::vector<int> cycle_vertices)
        : Error(std::move(message)), cycle(std::move(cycle_vertices)) {}

    std::vector<int> cycle;
};

}  // namespace pmc
