#pragma once

#include "shs/aop.hpp"

#include <utility>
#include <vector>

namespace shs {

// A d x d grid of operators over one weight, realized as a single operator
// on the d-fold direct sum with the block-diagonal inflated weight. The
// inflation is always materialized; every structural statement about the
// grid reduces to plain AOp calls on it.
struct OpMatrix {
    int d = 0;
    Weight w;                 // per-block weight
    std::vector<CMat> grid;   // d*d blocks, row-major
    Weight inflated_weight;
    AOp inflated;
    RMat hat;                 // entrywise A-seminorms ||T_ij||_A

    const CMat& block(int i, int j) const {
        return grid[static_cast<std::size_t>(i) * d + j];
    }
};

// Block-diagonal d-fold copy of w. The caches are assembled blockwise from
// w's caches, so they are exactly consistent with the per-block structure.
Weight inflate_weight(const Weight& w, int d);

// Wraps every entry (collecting offenders into EntryNotABounded), builds the
// inflated operator and the entrywise seminorm matrix.
OpMatrix assemble(const Weight& w, const std::vector<CMat>& grid_row_major);
OpMatrix assemble(const Weight& w,
                  const std::vector<std::vector<CMat>>& grid);

RMat hat_matrix(const OpMatrix& m);

// Entrywise product grid (TS)_ij = sum_k T_ik S_kj.
std::vector<CMat> multiply_grids(const OpMatrix& a, const OpMatrix& b);

// Closed-form radii of the two structured 2x2 inflations:
//   diag(T, S)     -> max{r_A(T), r_A(S)}
//   antidiag(T, S) -> sqrt(r_A(TS))
// Both are verified internally against r_A of the assembled inflation.
std::pair<double, double> two_by_two_radii(const Weight& w, const CMat& T,
                                           const CMat& S);

} // namespace shs
