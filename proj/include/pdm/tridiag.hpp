#pragma once
// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
// eigenvalues, inverse iteration for eigenvectors.

#include <vector>

namespace pdm {

struct SymTridiagonal {
  std::vector<double> diag;  // n entries
  std::vector<double> off;   // n-1 entries, off[i] couples i and i+1

  int size() const noexcept { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below sigma.
int sturm_count(const SymTridiagonal& t, double sigma);

/// Gershgorin interval [lo, hi] containing the whole spectrum.
void gershgorin_bounds(const SymTridiagonal& t, double& lo, double& hi);

/// k-th smallest eigenvalue (0-based), bisected to machine precision.
double kth_eigenvalue(const SymTridiagonal& t, int k);

/// Unit eigenvector (Euclidean norm) for an eigenvalue approximation.
std::vector<double> inverse_iteration(const SymTridiagonal& t, double lambda);

}  // namespace pdm
