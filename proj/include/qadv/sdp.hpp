// Small-scale semidefinite programming over the complex Hermitian PSD cone:
//   minimize    tr(C X)
//   subject to  tr(A_k X) = b_k          (equalities)
//               tr(G_m X) <= h_m         (optional inequalities)
//               X >= 0
// Solved by lowering to a real-symmetric cone program (Hermitian embedding
// plus scalar slacks) and running a primal-dual path-following interior
// point method with Nesterov-Todd scaling. Deterministic for fixed inputs.

#pragma once

#include "qadv/types.hpp"

#include <string>
#include <vector>

namespace qadv {

enum class SdpStatus { optimal, infeasible, unbounded, max_iter };

const char* to_string(SdpStatus s);

struct SdpProblem {
    Matrix objective;               // C (Hermitian)
    std::vector<Matrix> eq_mats;    // A_k (Hermitian)
    std::vector<double> eq_rhs;     // b_k
    std::vector<Matrix> ineq_mats;  // G_m (Hermitian)
    std::vector<double> ineq_rhs;   // h_m

    Index dim() const { return objective.rows(); }
};

struct SdpSettings {
    double feas_tol = 1e-7;
    double gap_tol = 1e-7;
    double psd_tol = 1e-8;
    int max_iter = 500;
    bool verbose = false;
};

struct SdpSolution {
    SdpStatus status = SdpStatus::max_iter;
    bool infeasibility_certified = false;
    Matrix x;                              // primal matrix (Hermitian, PSD at optimum)
    std::vector<double> y;                 // equality multipliers
    std::vector<double> y_ineq;            // inequality multipliers (>= 0 at optimum)
    std::vector<double> infeasibility_ray; // Farkas combination over equalities, when certified
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double duality_gap = 0.0;
    double max_constraint_residual = 0.0;
    int iterations = 0;
    std::string message;
};

// [[Re M, -Im M], [Im M, Re M]]; PSD iff M PSD, trace doubles.
// Throws on non-Hermitian input.
RealMatrix embed_hermitian(const Matrix& m, double hermitian_tol = 1e-8);

// Left inverse of embed_hermitian: orthogonal projection of a 2n x 2n real
// symmetric matrix onto the embedded subspace, read back as complex.
Matrix unembed_hermitian(const RealMatrix& m);

SdpSolution solve(const SdpProblem& p, const SdpSettings& settings = {});

// Residuals recomputed from scratch, independent of solver internals.
struct SdpResidualReport {
    double max_eq_residual = 0.0;
    double max_ineq_violation = 0.0;
    double x_min_eigenvalue = 0.0;
    double dual_slack_min_eigenvalue = 0.0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double duality_gap = 0.0;
};

SdpResidualReport residual_report(const SdpProblem& p, const SdpSolution& s);

}  // namespace qadv
