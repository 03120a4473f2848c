// Purification of PSD operators and unitary connections between
// purifications of the same reduced operator.

#pragma once

#include "qadv/types.hpp"

namespace qadv {

// Canonical purification of a PSD operator: sum_i sqrt(lambda_i) |u_i>|i>
// on sys (x) env (sys slowest), eigenvalues sorted descending, exact ties
// broken by lexicographic comparison of eigenvector entries, each
// eigenvector's first nonzero component made real positive.
//
// Throws if rho fails the PSD check beyond psd_tol, or if env_dim is
// smaller than rank(rho) at relative threshold rank_tol.
Vector purify(const Matrix& rho, Index env_dim, double psd_tol = 1e-8,
              double rank_tol = 1e-9);

// Unitary W on the environment with (I_sys (x) W)|phi> ~= |psi>, given two
// purifications of the same reduced operator on sys. The partial isometry
// on the supported environment directions is completed to a full unitary
// deterministically (Gram-Schmidt over the canonical env basis in index
// order). Throws if the reduced operators differ beyond match_tol.
Matrix connect_purifications(const Vector& phi, const Vector& psi,
                             Index sys_dim, Index env_dim,
                             double match_tol = 1e-8, double rank_tol = 1e-9);

}  // namespace qadv
