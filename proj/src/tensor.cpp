#include "qadv/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qadv {

Matrix dagger(const Matrix& m) { return m.adjoint(); }

Matrix hermitize(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitize: matrix must be square");
    }
    return 0.5 * (m + m.adjoint());
}

double hermiticity_defect(const Matrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& x, const Matrix& y) {
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

Vector kron_vec(const Vector& x, const Vector& y) {
    Vector out(x.size() * y.size());
    for (Index i = 0; i < x.size(); ++i) {
        out.segment(i * y.size(), y.size()) = x(i) * y;
    }
    return out;
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

Vector basis_vector(Index dim, Index k) {
    if (k < 0 || k >= dim) {
        throw std::invalid_argument("basis_vector: index out of range");
    }
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Matrix partial_trace(const Matrix& rho, const std::vector<Index>& dims,
                     const std::vector<int>& keep) {
    const Index total = std::accumulate(dims.begin(), dims.end(), Index{1},
                                        std::multiplies<Index>());
    if (rho.rows() != total || rho.cols() != total) {
        throw std::invalid_argument("partial_trace: matrix dim does not match factor dims");
    }
    const int nfac = static_cast<int>(dims.size());
    std::vector<char> kept(nfac, 0);
    int prev = -1;
    for (int k : keep) {
        if (k <= prev || k >= nfac) {
            throw std::invalid_argument("partial_trace: keep indices must be strictly increasing and in range");
        }
        kept[k] = 1;
        prev = k;
    }

    // strides, slowest factor first
    std::vector<Index> stride(nfac, 1);
    for (int f = nfac - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

    Index keep_dim = 1, trace_dim = 1;
    for (int f = 0; f < nfac; ++f) (kept[f] ? keep_dim : trace_dim) *= dims[f];

    // kept strides in the reduced space, same factor order
    std::vector<Index> kstride(nfac, 0);
    {
        Index s = 1;
        for (int f = nfac - 1; f >= 0; --f) {
            if (kept[f]) {
                kstride[f] = s;
                s *= dims[f];
            }
        }
    }

    Matrix out = Matrix::Zero(keep_dim, keep_dim);
    std::vector<Index> kf, tf;
    for (int f = 0; f < nfac; ++f) (kept[f] ? kf : tf).push_back(f);

    // enumerate kept row/col multi-indices and sum over traced multi-index
    const Index ktotal = keep_dim, ttotal = trace_dim;
    for (Index ki = 0; ki < ktotal; ++ki) {
        for (Index kj = 0; kj < ktotal; ++kj) {
            // decode reduced indices into full-space offsets
            Index row_base = 0, col_base = 0;
            for (int f : kf) {
                row_base += (ki / kstride[f]) % dims[f] * stride[f];
                col_base += (kj / kstride[f]) % dims[f] * stride[f];
            }
            Complex acc = 0.0;
            for (Index t = 0; t < ttotal; ++t) {
                Index off = 0;
                Index rem = t;
                for (auto it = tf.rbegin(); it != tf.rend(); ++it) {
                    const int f = *it;
                    off += (rem % dims[f]) * stride[f];
                    rem /= dims[f];
                }
                acc += rho(row_base + off, col_base + off);
            }
            out(ki, kj) = acc;
        }
    }
    return out;
}

Matrix trace_out_b(const Matrix& rho, Index dim_a, Index dim_b) {
    return partial_trace(rho, {dim_a, dim_b}, {0});
}

Matrix vector_rdm_keep_slowest(const Vector& v, Index d_keep, Index d_trace) {
    if (v.size() != d_keep * d_trace) {
        throw std::invalid_argument("vector_rdm_keep_slowest: size mismatch");
    }
    // column k of M is the traced-factor block of kept index k
    Eigen::Map<const Matrix> m(v.data(), d_trace, d_keep);
    Matrix gram = m.adjoint() * m;   // gram(k', k) = <block_k'|block_k>
    return gram.transpose();         // rdm(k, k') = <block_k'|block_k>
}

Vector apply_to_factor(const Matrix& op, const Vector& v, Index d_slow, Index d_fast) {
    if (op.rows() != op.cols()) {
        throw std::invalid_argument("apply_to_factor: operator must be square");
    }
    const Index d_op = op.rows();
    if (v.size() != d_slow * d_op * d_fast) {
        throw std::invalid_argument("apply_to_factor: vector size does not match factorization");
    }
    Vector out(v.size());
    const Index block = d_op * d_fast;
    for (Index s = 0; s < d_slow; ++s) {
        Eigen::Map<const Matrix> in(v.data() + s * block, d_fast, d_op);
        Eigen::Map<Matrix> dst(out.data() + s * block, d_fast, d_op);
        dst.noalias() = in * op.transpose();
    }
    return out;
}

PsdCheck psd_check(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("psd_check: matrix must be square");
    }
    PsdCheck out;
    if (m.rows() == 0) {
        out.is_psd = true;
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    out.is_psd = out.min_eigenvalue >= -tol;
    return out;
}

SubunitarityCheck subunitarity_check(const Matrix& l, double tol) {
    SubunitarityCheck out;
    if (l.size() == 0) {
        out.ok = true;
        return out;
    }
    Eigen::JacobiSVD<Matrix> svd(l);
    out.max_singular_value = svd.singularValues().maxCoeff();
    out.ok = out.max_singular_value <= 1.0 + tol;
    return out;
}

std::vector<Matrix> hermitian_basis(Index d) {
    std::vector<Matrix> basis;
    basis.reserve(static_cast<size_t>(d * d));
    for (Index k = 0; k < d; ++k) {
        Matrix m = Matrix::Zero(d, d);
        m(k, k) = 1.0;
        basis.push_back(m);
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index k = 0; k < d; ++k) {
        for (Index l = k + 1; l < d; ++l) {
            Matrix m = Matrix::Zero(d, d);
            m(k, l) = inv_sqrt2;
            m(l, k) = inv_sqrt2;
            basis.push_back(m);
            Matrix n = Matrix::Zero(d, d);
            n(k, l) = Complex(0.0, inv_sqrt2);
            n(l, k) = Complex(0.0, -inv_sqrt2);
            basis.push_back(n);
        }
    }
    return basis;
}

}  // namespace qadv
