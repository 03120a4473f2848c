// Core value types shared across the library.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qadv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;   // dense complex, row/col indexed
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tripartite tensor factor dimensions. Index convention everywhere:
// A slowest, then B, then C (row-major over a*b*c).
struct SubsystemShape {
    Index dim_a = 1;
    Index dim_b = 1;
    Index dim_c = 1;

    Index dim_ab() const { return dim_a * dim_b; }
    Index total() const { return dim_a * dim_b * dim_c; }

    void require_valid() const {
        if (dim_a < 1 || dim_b < 1 || dim_c < 1) {
            throw std::invalid_argument("SubsystemShape: all dims must be >= 1");
        }
    }
};

struct Tolerances {
    double hermitian_tol = 1e-8;
    double purify_tol = 1e-8;
    double match_tol = 1e-8;
    double connect_tol = 1e-8;
    double psd_tol = 1e-8;
    double feas_tol = 1e-7;
    double gap_tol = 1e-7;
    double rank_tol = 1e-9;   // relative to largest eigenvalue
    int max_iter = 500;
};

}  // namespace qadv
