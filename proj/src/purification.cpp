#include "qadv/purification.hpp"

#include "qadv/tensor.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qadv {

namespace {

// Multiply v by a phase making its first nonzero component real positive.
void fix_phase(Eigen::Ref<Vector> v) {
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0) return;
    for (Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-6 * scale) {
            v *= std::conj(v(k)) / std::abs(v(k));
            return;
        }
    }
}

bool lex_less(const Vector& a, const Vector& b) {
    for (Index k = 0; k < a.size(); ++k) {
        if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
        if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
    }
    return false;
}

struct EigSorted {
    std::vector<double> values;       // descending
    std::vector<Vector> vectors;      // phase-fixed
};

EigSorted sorted_eig(const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const Index n = herm.rows();
    EigSorted out;
    out.values.resize(static_cast<size_t>(n));
    out.vectors.resize(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) {
        out.values[static_cast<size_t>(i)] = es.eigenvalues()(i);
        Vector v = es.eigenvectors().col(i);
        fix_phase(v);
        out.vectors[static_cast<size_t>(i)] = std::move(v);
    }
    std::vector<size_t> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
        if (out.values[i] != out.values[j]) return out.values[i] > out.values[j];
        return lex_less(out.vectors[i], out.vectors[j]);
    });
    EigSorted sorted;
    sorted.values.reserve(order.size());
    sorted.vectors.reserve(order.size());
    for (size_t i : order) {
        sorted.values.push_back(out.values[i]);
        sorted.vectors.push_back(std::move(out.vectors[i]));
    }
    return sorted;
}

// Modified Gram-Schmidt; returns the normalized residual or a zero vector
// if v is (numerically) in the span of basis.
Vector orthonormal_residual(Vector v, const std::vector<Vector>& basis) {
    const double input_norm = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& b : basis) {
            v -= b.dot(v) * b;
        }
    }
    const double res = v.norm();
    if (res <= 1e-8 * std::max(1.0, input_norm)) {
        return Vector::Zero(v.size());
    }
    return v / res;
}

// Extends `basis` (orthonormal) to a full orthonormal basis of the
// env_dim-dimensional space using canonical basis vectors in index order.
void complete_basis(std::vector<Vector>& basis, Index env_dim) {
    for (Index k = 0; k < env_dim && basis.size() < static_cast<size_t>(env_dim); ++k) {
        Vector cand = orthonormal_residual(basis_vector(env_dim, k), basis);
        if (cand.norm() > 0.5) basis.push_back(std::move(cand));
    }
    if (basis.size() != static_cast<size_t>(env_dim)) {
        throw std::runtime_error("connect_purifications: basis completion failed");
    }
}

}  // namespace

Vector purify(const Matrix& rho, Index env_dim, double psd_tol, double rank_tol) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("purify: rho must be square");
    }
    const Index n = rho.rows();
    const PsdCheck psd = psd_check(rho, psd_tol);
    if (!psd.is_psd) {
        throw std::invalid_argument("purify: rho is not PSD within tolerance (min eig " +
                                    std::to_string(psd.min_eigenvalue) + ")");
    }
    EigSorted eig = sorted_eig(hermitize(rho));
    const double lead = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
    Index rank = 0;
    for (double v : eig.values) {
        if (v > rank_tol * lead && v > 0.0) ++rank;
    }
    if (env_dim < rank) {
        throw std::invalid_argument("purify: env_dim smaller than rank of rho");
    }
    Vector out = Vector::Zero(n * env_dim);
    for (Index i = 0; i < rank; ++i) {
        const double w = std::sqrt(eig.values[static_cast<size_t>(i)]);
        const Vector& u = eig.vectors[static_cast<size_t>(i)];
        for (Index s = 0; s < n; ++s) {
            out(s * env_dim + i) += w * u(s);
        }
    }
    return out;
}

Matrix connect_purifications(const Vector& phi, const Vector& psi,
                             Index sys_dim, Index env_dim,
                             double match_tol, double rank_tol) {
    if (phi.size() != sys_dim * env_dim || psi.size() != sys_dim * env_dim) {
        throw std::invalid_argument("connect_purifications: vector sizes do not match sys_dim*env_dim");
    }
    const Matrix rho_phi = vector_rdm_keep_slowest(phi, sys_dim, env_dim);
    const Matrix rho_psi = vector_rdm_keep_slowest(psi, sys_dim, env_dim);
    const double mismatch = max_abs(rho_phi - rho_psi);
    if (mismatch > match_tol) {
        throw std::invalid_argument(
            "connect_purifications: reduced operators differ by " + std::to_string(mismatch) +
            " (> match_tol); no environment unitary can connect these vectors");
    }

    EigSorted eig = sorted_eig(hermitize(0.5 * (rho_phi + rho_psi)));
    const double lead = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);

    // env components of phi/psi along each system eigendirection
    std::vector<Vector> c_basis, d_basis;
    for (size_t i = 0; i < eig.values.size(); ++i) {
        if (eig.values[i] <= rank_tol * lead || eig.values[i] <= 0.0) break;
        const Vector& u = eig.vectors[i];
        Vector c = Vector::Zero(env_dim), d = Vector::Zero(env_dim);
        for (Index s = 0; s < sys_dim; ++s) {
            c += std::conj(u(s)) * phi.segment(s * env_dim, env_dim);
            d += std::conj(u(s)) * psi.segment(s * env_dim, env_dim);
        }
        if (c.norm() <= rank_tol || d.norm() <= rank_tol) continue;
        // re-orthonormalize against what we already have; keeps W exactly
        // unitary when the inputs match only approximately
        Vector ch = orthonormal_residual(std::move(c), c_basis);
        Vector dh = orthonormal_residual(std::move(d), d_basis);
        if (ch.norm() < 0.5 || dh.norm() < 0.5) continue;
        c_basis.push_back(std::move(ch));
        d_basis.push_back(std::move(dh));
    }

    complete_basis(c_basis, env_dim);
    complete_basis(d_basis, env_dim);

    Matrix w = Matrix::Zero(env_dim, env_dim);
    for (size_t k = 0; k < c_basis.size(); ++k) {
        w += d_basis[k] * c_basis[k].adjoint();
    }
    return w;
}

}  // namespace qadv
