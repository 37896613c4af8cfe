#pragma once

#include <optional>
#include <vector>

#include "meanext/index_system.hpp"

namespace meanext {

// Small dense square matrix, row-major. Sized for desk-scale chains.
class SquareMatrix {
  public:
    explicit SquareMatrix(int size) : size_(size), data_(static_cast<std::size_t>(size) * size) {}

    static SquareMatrix identity(int size);

    int size() const { return size_; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * size_ + j]; }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * size_ + j];
    }

    SquareMatrix multiply(const SquareMatrix& other) const;

  private:
    int size_;
    std::vector<double> data_;
};

// Row i holds multiplicity(l in t_i) / arity. For admissible extension
// systems this is the 1/n pattern; for shrink systems the diagonal carries
// (m-n+1)/m. Enforces sequences() <= 64.
SquareMatrix transition_matrix(const IndexSystem& system);

// M^k by repeated squaring, k >= 1.
SquareMatrix matrix_power(const SquareMatrix& m, long k);

struct ChainVerdict {
    bool doubly_stochastic = false;
    bool irreducible = false;
    bool aperiodic = false;
    // The period of state 1's communication class, when > 1.
    std::optional<int> period_witness;
};

// Column sums for double stochasticity (tol 1e-12), strong connectivity of
// the positive-entry digraph for irreducibility, and the BFS-distance gcd
// over edges of state 1's class for the period (self-loop fast path).
ChainVerdict check_chain(const SquareMatrix& m);

// max over (i,l) of |(M^k)_{i,l} - 1/size|.
double uniform_limit_error(const SquareMatrix& m, long k);

}  // namespace meanext
