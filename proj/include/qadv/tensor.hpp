// Dense complex linear algebra over tensor-product spaces: Kronecker
// products, partial traces, positivity and subunitarity checks.

#pragma once

#include "qadv/types.hpp"

#include <vector>

namespace qadv {

Matrix dagger(const Matrix& m);

// (M + M^+)/2
Matrix hermitize(const Matrix& m);

// max |M - M^+| entry
double hermiticity_defect(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = 1e-8);

// Largest absolute entry of M (0 for empty).
double max_abs(const Matrix& m);

Matrix kron(const Matrix& x, const Matrix& y);

Vector kron_vec(const Vector& x, const Vector& y);

Matrix identity(Index n);

Vector basis_vector(Index dim, Index k);

// |v><v|
Matrix projector(const Vector& v);

// Partial trace over an arbitrary factorization. `dims` lists the factor
// dimensions slowest-first; `keep` lists the factor indices to retain,
// strictly increasing. The result acts on the kept factors in their
// original order.
Matrix partial_trace(const Matrix& rho, const std::vector<Index>& dims,
                     const std::vector<int>& keep);

// tr_B on A (x) B
Matrix trace_out_b(const Matrix& rho, Index dim_a, Index dim_b);

// Reduced operator of |v><v| keeping the slowest factor of dimension
// d_keep, tracing the trailing d_trace dimensions. O(dim * d_keep) --
// avoids forming the full projector.
Matrix vector_rdm_keep_slowest(const Vector& v, Index d_keep, Index d_trace);

// (I_{d_slow} (x) op (x) I_{d_fast}) v without forming the full operator.
Vector apply_to_factor(const Matrix& op, const Vector& v, Index d_slow, Index d_fast);

struct PsdCheck {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
};

// Hermitizes first, then tests min eigenvalue >= -tol.
PsdCheck psd_check(const Matrix& m, double tol = 1e-8);

struct SubunitarityCheck {
    bool ok = false;
    double max_singular_value = 0.0;
};

// ok iff the largest singular value is <= 1 + tol.
SubunitarityCheck subunitarity_check(const Matrix& l, double tol = 1e-8);

// Orthonormal basis of d x d Hermitian matrices under tr(XY): diagonal
// units E_kk, then for k < l the pairs (E_kl + E_lk)/sqrt(2) and
// i(E_kl - E_lk)/sqrt(2).
std::vector<Matrix> hermitian_basis(Index d);

}  // namespace qadv
