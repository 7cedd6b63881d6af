#ifndef TWINSEARCH_ERRORS_HPP
#define TWINSEARCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twinsearch {

// Base class for all domain errors raised by the library.
struct TwinError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A row sum of an off-diagonal projection is not divisible by k-1, so no
// k-uniform hypergraph can realize it.
struct NonDivisibleRowSum : TwinError {
    int node;
    explicit NonDivisibleRowSum(int u)
        : TwinError("row sum of node " + std::to_string(u) +
                    " is not divisible by k-1"),
          node(u) {}
};

// An edge-node of the factor graph has no candidate cliques left after
// constraint filtering; the constrained twin set is empty.
struct EmptyCandidates : TwinError {
    int u, v;
    EmptyCandidates(int u_, int v_)
        : TwinError("edge (" + std::to_string(u_) + "," + std::to_string(v_) +
                    ") has no candidate cliques under the given constraints"),
          u(u_), v(v_) {}
};

// A guarded enumeration would exceed its size cap.
struct TooLarge : TwinError {
    using TwinError::TwinError;
};

// Ensemble parameters admit no valid sample.
struct Infeasible : TwinError {
    using TwinError::TwinError;
};

// Rejection sampling failed to produce a valid sample within its budget.
struct RejectionBudgetExceeded : TwinError {
    using TwinError::TwinError;
};

// Jaccard distance between two empty hyperedge sets is 0/0.
struct BothEmpty : TwinError {
    using TwinError::TwinError;
};

// Rank correlation of a constant list is undefined.
struct Degenerate : TwinError {
    using TwinError::TwinError;
};

}  // namespace twinsearch

#endif
