#pragma once

#include "swapdist/permutohedron.hpp"

#include <cstddef>
#include <vector>

namespace swapdist {

// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    double inf_norm() const;
};

// D' = D - (d_max/2) O, the distance matrix shifted by its row mean. Negative
// semidefinite with rank n(n-1)/2. Dense N x N doubles; n <= 6 by default
// (720 x 720), n = 7 only when allow_large is set.
SymmetricMatrix build_shifted(int n, bool allow_large = false);

// Eigenvalues by cyclic Jacobi rotations, ascending. Convergence: the
// off-diagonal Frobenius norm falls below tol_factor * ||A||_F (plus an
// absolute floor for the zero matrix).
std::vector<double> symmetric_eigenvalues(SymmetricMatrix m,
                                          double tol_factor = 1e-14,
                                          int max_sweeps = 40);

// max eigenvalue <= tol; tol defaults to 1e-9 * ||M||_inf.
bool check_negative_semidefinite(const SymmetricMatrix& m, double tol = -1.0);

struct EigenvalueGroup {
    double value = 0.0;       // group mean
    std::size_t multiplicity = 0;
};

// Clusters a sorted eigenvalue list; gaps larger than tol split groups.
std::vector<EigenvalueGroup> group_eigenvalues(const std::vector<double>& eigs,
                                               double tol = 1e-6);

}  // namespace swapdist
