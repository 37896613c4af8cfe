#pragma once

#include <climits>
#include <string>
#include <vector>

#include "meanext/errors.hpp"

namespace meanext {

// One tuple of 1-based sequence indices, stored sorted ascending.
using IndexTuple = std::vector<int>;

// An ordered family T = {t_1,...,t_k} of index tuples driving a coupled
// iteration. Every tuple has length arity() (the arity of the mean applied
// per row) and coordinates in 1..sequences() (one tuple per sequence).
//
// Extension systems have sequences() > arity(); shrink systems the reverse.
class IndexSystem {
  public:
    // Validates lengths and ranges (MalformedSystem) and sorts each tuple.
    IndexSystem(int arity, std::vector<IndexTuple> tuples);

    int arity() const { return arity_; }
    int sequences() const { return static_cast<int>(tuples_.size()); }
    const std::vector<IndexTuple>& tuples() const { return tuples_; }

    bool operator==(const IndexSystem& other) const = default;

  private:
    int arity_;
    std::vector<IndexTuple> tuples_;
};

struct PropertyViolation {
    int property = 0;  // 1..4
    std::string detail;
};

struct AdmissibilityVerdict {
    bool admissible = false;
    std::vector<PropertyViolation> violations;

    std::vector<int> failed_properties() const;
};

// Checks the four structural properties:
//   (1) t_1 <= ... <= t_k coordinatewise,
//   (2) every index appears in exactly min(sequences, arity) distinct tuples,
//   (3) min t_i <= i <= max t_i, strict for 2 <= i <= sequences-1,
//   (4) every i >= 2 appears in some earlier tuple.
AdmissibilityVerdict check_admissible(const IndexSystem& system);

// The recursive construction: base case n=2 is t_1=(1,2), t_k=(k-1,k+1),
// t_m=(m-1,m); each recursion step lifts an (n-1,m-1) system to (n,m).
// Requires 2 <= n < m.
IndexSystem construct_admissible(int n, int m);

// The unique admissible system for n=2: {(1,2),(1,3),(2,4),...,(m-1,m)}.
IndexSystem unique_two_system(int m);

// Exhaustive backtracking enumeration in lexicographic order of the
// concatenated tuple lists, truncated at `limit`. require_property2=false
// relaxes property (2), enumerating systems satisfying (1),(3),(4) only.
// Bounded to m <= 6 (SearchSpaceTooLarge above that).
std::vector<IndexSystem> enumerate_systems(int n, int m, long limit, bool require_property2);

inline std::vector<IndexSystem> enumerate_admissible(int n, int m, long limit = LONG_MAX) {
    return enumerate_systems(n, m, limit, true);
}

// The shrinking system T_{m,n}: n tuples of length m, where t_i repeats i
// (m-n+1) times and lists every other index of 1..n once.
IndexSystem shrink_system(int m, int n);

}  // namespace meanext
