#include "qadv/sdp.hpp"

#include "qadv/tensor.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qadv {

const char* to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::optimal: return "optimal";
        case SdpStatus::infeasible: return "infeasible";
        case SdpStatus::unbounded: return "unbounded";
        case SdpStatus::max_iter: return "max_iter";
    }
    return "unknown";
}

RealMatrix embed_hermitian(const Matrix& m, double hermitian_tol) {
    if (!is_hermitian(m, hermitian_tol)) {
        throw std::invalid_argument("embed_hermitian: input is not Hermitian within tolerance");
    }
    const Index n = m.rows();
    RealMatrix out(2 * n, 2 * n);
    const RealMatrix re = m.real();
    const RealMatrix im = m.imag();
    out.topLeftCorner(n, n) = re;
    out.topRightCorner(n, n) = -im;
    out.bottomLeftCorner(n, n) = im;
    out.bottomRightCorner(n, n) = re;
    return out;
}

Matrix unembed_hermitian(const RealMatrix& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0) {
        throw std::invalid_argument("unembed_hermitian: matrix must be square with even dim");
    }
    const Index n = m.rows() / 2;
    const RealMatrix re = 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
    const RealMatrix im = 0.5 * (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n));
    Matrix out(n, n);
    out.real() = re;
    out.imag() = im;
    return hermitize(out);
}

namespace {

// ---------------------------------------------------------------------
// Real symmetric standard form  min <C,X>  s.t. <A_i,X> = b_i, X >= 0
// ---------------------------------------------------------------------

Index svec_len(Index n) { return n * (n + 1) / 2; }

// Isometric vectorization of a symmetric matrix: diag entries, then
// sqrt(2)-scaled strict upper triangle (column-major order).
RealVector svec(const RealMatrix& s) {
    const Index n = s.rows();
    static const double sq2 = std::sqrt(2.0);
    RealVector v(svec_len(n));
    Index pos = 0;
    for (Index i = 0; i < n; ++i) v(pos++) = s(i, i);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < j; ++i) v(pos++) = sq2 * s(i, j);
    }
    return v;
}

struct RealSdp {
    RealMatrix c;
    std::vector<RealMatrix> a;
    RealVector b;
    Index n = 0;
};

struct ReduceResult {
    std::vector<Index> selected;      // independent constraint subset
    bool infeasible = false;          // inconsistent dependent constraint found
    std::vector<double> ray;          // Farkas combination over all constraints
    Index bad_index = -1;
};

// Select a maximal linearly independent subset of the constraint
// functionals and verify the discarded ones are consistent; an
// inconsistent dependency yields a certified Farkas ray.
ReduceResult reduce_constraints(const RealSdp& p, double tol) {
    ReduceResult out;
    const Index m = static_cast<Index>(p.a.size());
    if (m == 0) return out;
    RealMatrix stacked(svec_len(p.n), m);
    double scale = 0.0;
    for (Index k = 0; k < m; ++k) {
        stacked.col(k) = svec(p.a[static_cast<size_t>(k)]);
        scale = std::max(scale, stacked.col(k).norm());
    }
    if (scale == 0.0) scale = 1.0;

    Eigen::ColPivHouseholderQR<RealMatrix> qr(stacked);
    qr.setThreshold(tol);
    const Index rank = qr.rank();
    const auto perm = qr.colsPermutation().indices();
    std::vector<Index> sel, dropped;
    for (Index k = 0; k < m; ++k) {
        (k < rank ? sel : dropped).push_back(perm(k));
    }
    std::sort(sel.begin(), sel.end());
    out.selected = sel;
    if (dropped.empty()) return out;

    if (rank == 0) {
        // every constraint functional vanishes; any nonzero rhs certifies
        const double bscale = 1.0 + p.b.cwiseAbs().maxCoeff();
        out.selected.clear();
        for (Index j : dropped) {
            if (std::abs(p.b(j)) > 1e-8 * bscale) {
                out.infeasible = true;
                out.bad_index = j;
                out.ray.assign(static_cast<size_t>(m), 0.0);
                out.ray[static_cast<size_t>(j)] = p.b(j) > 0 ? 1.0 : -1.0;
                return out;
            }
        }
        return out;
    }

    RealMatrix basis(stacked.rows(), rank);
    RealVector bsel(rank);
    for (Index k = 0; k < rank; ++k) {
        basis.col(k) = stacked.col(sel[static_cast<size_t>(k)]);
        bsel(k) = p.b(sel[static_cast<size_t>(k)]);
    }
    Eigen::ColPivHouseholderQR<RealMatrix> qr_basis(basis);
    std::vector<Index> rescued;
    for (Index j : dropped) {
        const RealVector coeff = qr_basis.solve(stacked.col(j));
        const double rep_err = (basis * coeff - stacked.col(j)).norm();
        if (rep_err > 1e-8 * scale) {
            // not representable after all; keep it rather than lose a constraint
            rescued.push_back(j);
            continue;
        }
        const double mismatch = p.b(j) - coeff.dot(bsel);
        const double bscale = 1.0 + p.b.cwiseAbs().maxCoeff();
        if (std::abs(mismatch) > 1e-8 * bscale) {
            out.infeasible = true;
            out.bad_index = j;
            out.ray.assign(static_cast<size_t>(m), 0.0);
            const double sign = mismatch > 0 ? -1.0 : 1.0;  // so that b . ray > 0
            out.ray[static_cast<size_t>(j)] = -sign;
            for (Index k = 0; k < rank; ++k) {
                out.ray[static_cast<size_t>(sel[static_cast<size_t>(k)])] = sign * coeff(k);
            }
            return out;
        }
    }
    if (!rescued.empty()) {
        out.selected.insert(out.selected.end(), rescued.begin(), rescued.end());
        std::sort(out.selected.begin(), out.selected.end());
    }
    return out;
}

struct NtScaling {
    RealMatrix r;        // X_hat = R^-1 X R^-T = diag(d), Z_hat = R^T Z R = diag(d)
    RealMatrix r_inv;
    RealVector d;
};

RealMatrix sym_sqrt(const RealMatrix& s, RealMatrix* inv_out) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(s);
    RealVector lam = es.eigenvalues().cwiseMax(1e-300);
    const RealMatrix& q = es.eigenvectors();
    RealMatrix root = q * lam.cwiseSqrt().asDiagonal() * q.transpose();
    if (inv_out) {
        *inv_out = q * lam.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose();
    }
    return root;
}

NtScaling nt_scaling(const RealMatrix& x, const RealMatrix& z) {
    RealMatrix z_half_inv;
    RealMatrix z_half = sym_sqrt(z, &z_half_inv);
    RealMatrix y = z_half * x * z_half;
    RealMatrix y_half = sym_sqrt(0.5 * (y + y.transpose()), nullptr);
    RealMatrix w = z_half_inv * y_half * z_half_inv;
    RealMatrix r0_inv;
    RealMatrix r0 = sym_sqrt(0.5 * (w + w.transpose()), &r0_inv);
    RealMatrix v = r0 * z * r0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (v + v.transpose()));
    NtScaling out;
    out.r = r0 * es.eigenvectors();
    out.r_inv = es.eigenvectors().transpose() * r0_inv;
    out.d = es.eigenvalues().cwiseMax(1e-300);
    return out;
}

// Largest step alpha so that diag(d) + alpha * delta_hat stays PSD,
// damped by tau and capped at 1.
double step_length(const RealVector& d, const RealMatrix& delta_hat, double tau) {
    RealVector dis = d.cwiseSqrt().cwiseInverse();
    RealMatrix scaled = dis.asDiagonal() * delta_hat * dis.asDiagonal();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (scaled + scaled.transpose()),
                                                 Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min >= -1e-13) return 1.0;
    return std::min(1.0, -tau / lam_min);
}

struct IpmResult {
    SdpStatus status = SdpStatus::max_iter;
    bool certified = false;
    RealMatrix x;
    RealVector y;
    RealMatrix z;
    std::vector<double> ray;
    double pobj = 0.0;
    double dobj = 0.0;
    double pinf = 0.0;
    double dinf = 0.0;
    double relgap = 0.0;
    int iterations = 0;
    std::string message;
};

double inner(const RealMatrix& a, const RealMatrix& b) {
    return (a.array() * b.array()).sum();
}

IpmResult run_ipm(const RealSdp& p, const SdpSettings& st) {
    const Index n = p.n;
    const Index m = static_cast<Index>(p.a.size());
    IpmResult res;
    res.y = RealVector::Zero(m);

    const double b_scale = m > 0 ? p.b.cwiseAbs().maxCoeff() : 0.0;
    double a_scale = 0.0;
    for (const auto& ak : p.a) a_scale = std::max(a_scale, ak.norm());
    const double c_scale = p.c.norm();

    if (m == 0) {
        // unconstrained over the cone: X = 0 unless the objective has a
        // strictly decreasing direction
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(p.c, Eigen::EigenvaluesOnly);
        res.x = RealMatrix::Zero(n, n);
        res.z = p.c;
        if (es.eigenvalues().minCoeff() < -st.psd_tol) {
            res.status = SdpStatus::unbounded;
            res.message = "objective unbounded below on the PSD cone";
        } else {
            res.status = SdpStatus::optimal;
        }
        return res;
    }

    const double init = std::max({1.0, b_scale, c_scale / std::sqrt(double(n)), a_scale});
    RealMatrix x = init * RealMatrix::Identity(n, n);
    RealMatrix z = std::max(1.0, c_scale) * RealMatrix::Identity(n, n);

    const double tol_feas_target = std::min(st.feas_tol * 1e-2, 1e-9);
    const double tol_gap_target = std::min(st.gap_tol * 1e-2, 1e-9);

    double best_pinf = std::numeric_limits<double>::infinity();
    int stall_count = 0;

    std::vector<RealMatrix> b_mats(static_cast<size_t>(m));
    RealMatrix vmat(svec_len(n), m);

    RealVector rp(m);
    RealMatrix rd;
    double mu = 0.0;
    auto evaluate = [&]() {
        for (Index k = 0; k < m; ++k) rp(k) = p.b(k) - inner(p.a[static_cast<size_t>(k)], x);
        rd = p.c - z;
        for (Index k = 0; k < m; ++k) rd -= res.y(k) * p.a[static_cast<size_t>(k)];
        const double pobj = inner(p.c, x);
        const double dobj = p.b.dot(res.y);
        mu = std::max(inner(x, z) / double(n), 0.0);
        res.pobj = pobj;
        res.dobj = dobj;
        res.pinf = rp.cwiseAbs().maxCoeff() / (1.0 + b_scale);
        res.dinf = rd.norm() / (1.0 + c_scale);
        res.relgap = std::abs(pobj - dobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));
        res.x = x;
        res.z = z;
    };

    for (int iter = 0; iter < st.max_iter; ++iter) {
        res.iterations = iter + 1;
        evaluate();
        const double pobj = res.pobj;
        const double pinf = res.pinf;
        const double dinf = res.dinf;
        const double relgap = res.relgap;

        if (st.verbose) {
            std::fprintf(stderr, "iter %3d  pobj % .9e dobj % .9e  pinf %.2e dinf %.2e gap %.2e mu %.2e\n",
                         iter, pobj, res.dobj, pinf, dinf, relgap, mu);
        }
        if (mu <= 0.0) break;

        if (pinf <= tol_feas_target && dinf <= tol_feas_target && relgap <= tol_gap_target) {
            res.status = SdpStatus::optimal;
            return res;
        }

        // certified primal-infeasibility ray: y with sum(y A) <= 0, b.y > 0
        const double ynorm = res.y.norm();
        if (ynorm > 1e5 * (1.0 + b_scale)) {
            RealVector yhat = res.y / ynorm;
            RealMatrix ray_mat = RealMatrix::Zero(n, n);
            for (Index k = 0; k < m; ++k) ray_mat += yhat(k) * p.a[static_cast<size_t>(k)];
            Eigen::SelfAdjointEigenSolver<RealMatrix> es(ray_mat, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().maxCoeff() <= 1e-7 * std::max(1.0, a_scale) &&
                p.b.dot(yhat) > 1e-7 * (1.0 + b_scale)) {
                res.status = SdpStatus::infeasible;
                res.certified = true;
                res.ray.assign(yhat.data(), yhat.data() + m);
                res.message = "dual improving ray found";
                return res;
            }
        }

        // heuristic infeasibility: primal residual pinned far above tolerance
        if (pinf > 1e3 * st.feas_tol) {
            if (pinf > 0.9 * best_pinf) {
                if (++stall_count >= 50) {
                    res.status = SdpStatus::infeasible;
                    res.certified = false;
                    res.message = "primal residual stagnated above 1e3*feas_tol";
                    return res;
                }
            } else {
                stall_count = 0;
            }
        } else {
            stall_count = 0;
        }
        best_pinf = std::min(best_pinf, pinf);

        if (pobj < -1e12 * std::max(1.0, b_scale) && pinf <= st.feas_tol) {
            res.status = SdpStatus::unbounded;
            res.message = "primal objective diverging";
            return res;
        }

        // Newton system with NT scaling
        const NtScaling nt = nt_scaling(x, z);
        for (Index k = 0; k < m; ++k) {
            b_mats[static_cast<size_t>(k)] =
                nt.r.transpose() * p.a[static_cast<size_t>(k)] * nt.r;
            vmat.col(k) = svec(b_mats[static_cast<size_t>(k)]);
        }
        RealMatrix schur(m, m);
        schur.noalias() = vmat.transpose() * vmat;
        Eigen::LDLT<RealMatrix> ldlt;
        double ridge = 0.0;
        for (int attempt = 0; attempt < 6; ++attempt) {
            RealMatrix reg = schur;
            if (ridge > 0.0) reg += ridge * RealMatrix::Identity(m, m);
            ldlt.compute(reg);
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) break;
            ridge = ridge == 0.0 ? 1e-14 * schur.trace() / double(m) : ridge * 100.0;
        }

        const RealMatrix b_rd = nt.r.transpose() * rd * nt.r;
        const RealVector& d = nt.d;

        auto solve_direction = [&](const RealMatrix& target, RealMatrix& dx, RealVector& dy,
                                   RealMatrix& dz, RealMatrix& dx_hat, RealMatrix& dz_hat) {
            RealMatrix g(n, n);
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < n; ++j) {
                    g(i, j) = 2.0 * target(i, j) / (d(i) + d(j));
                }
            }
            RealVector rhs(m);
            for (Index k = 0; k < m; ++k) {
                rhs(k) = rp(k) - inner(b_mats[static_cast<size_t>(k)], g) +
                         inner(b_mats[static_cast<size_t>(k)], b_rd);
            }
            dy = ldlt.solve(rhs);
            dz = rd;
            for (Index k = 0; k < m; ++k) dz -= dy(k) * p.a[static_cast<size_t>(k)];
            dz_hat = nt.r.transpose() * dz * nt.r;
            dx_hat = g - dz_hat;
            dx = nt.r * dx_hat * nt.r.transpose();
            dx = 0.5 * (dx + dx.transpose()).eval();
            dz = 0.5 * (dz + dz.transpose()).eval();
        };

        // predictor
        RealMatrix t_aff = RealMatrix::Zero(n, n);
        t_aff.diagonal() = (-d.array() * d.array()).matrix();
        RealMatrix dx_a, dz_a, dxh_a, dzh_a;
        RealVector dy_a;
        solve_direction(t_aff, dx_a, dy_a, dz_a, dxh_a, dzh_a);
        const double ap_a = step_length(d, dxh_a, 1.0);
        const double ad_a = step_length(d, dzh_a, 1.0);

        double mu_aff = 0.0;
        {
            RealMatrix xa = x + ap_a * dx_a;
            RealMatrix za = z + ad_a * dz_a;
            mu_aff = inner(xa, za) / double(n);
        }
        double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
        sigma = std::clamp(sigma, 1e-10, 1.0);

        // corrector
        RealMatrix cross = 0.5 * (dxh_a * dzh_a + dzh_a * dxh_a);
        RealMatrix t_corr = -cross;
        t_corr.diagonal().array() += sigma * mu;
        t_corr.diagonal() -= (d.array() * d.array()).matrix();
        RealMatrix dx, dz, dxh, dzh;
        RealVector dy;
        solve_direction(t_corr, dx, dy, dz, dxh, dzh);

        const double tau = 0.98;
        const double ap = step_length(d, dxh, tau);
        const double ad = step_length(d, dzh, tau);

        if (ap < 1e-10 && ad < 1e-10) {
            res.message = "step sizes collapsed";
            break;
        }

        x += ap * dx;
        res.y += ad * dy;
        z += ad * dz;
        x = 0.5 * (x + x.transpose()).eval();
        z = 0.5 * (z + z.transpose()).eval();
    }

    evaluate();
    if (res.pinf <= st.feas_tol && res.dinf <= st.feas_tol && res.relgap <= st.gap_tol) {
        res.status = SdpStatus::optimal;
    } else {
        res.status = SdpStatus::max_iter;
        if (res.message.empty()) res.message = "iteration limit reached before convergence";
    }
    return res;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SdpSettings& st) {
    const Index nc = p.dim();
    if (p.objective.rows() != p.objective.cols()) {
        throw std::invalid_argument("sdp::solve: objective must be square");
    }
    if (p.eq_mats.size() != p.eq_rhs.size() || p.ineq_mats.size() != p.ineq_rhs.size()) {
        throw std::invalid_argument("sdp::solve: constraint matrix/rhs length mismatch");
    }
    auto check = [&](const Matrix& m, const char* what) {
        if (m.rows() != nc || m.cols() != nc) {
            throw std::invalid_argument(std::string("sdp::solve: ") + what + " has wrong dimension");
        }
        if (!is_hermitian(m, 1e-8)) {
            throw std::invalid_argument(std::string("sdp::solve: ") + what + " is not Hermitian");
        }
    };
    check(p.objective, "objective");
    for (const auto& a : p.eq_mats) check(a, "equality matrix");
    for (const auto& g : p.ineq_mats) check(g, "inequality matrix");

    const Index n_eq = static_cast<Index>(p.eq_mats.size());
    const Index n_ineq = static_cast<Index>(p.ineq_mats.size());
    const Index nr = 2 * nc + n_ineq;

    // real lowering: Hermitian embedding (coefficients halved so values
    // match the complex formulation) plus one diagonal slot per inequality
    RealSdp rp;
    rp.n = nr;
    rp.c = RealMatrix::Zero(nr, nr);
    rp.c.topLeftCorner(2 * nc, 2 * nc) = 0.5 * embed_hermitian(p.objective);
    rp.b = RealVector::Zero(n_eq + n_ineq);
    std::vector<double> row_scale(static_cast<size_t>(n_eq + n_ineq), 1.0);
    for (Index k = 0; k < n_eq + n_ineq; ++k) {
        RealMatrix a = RealMatrix::Zero(nr, nr);
        double rhs;
        if (k < n_eq) {
            a.topLeftCorner(2 * nc, 2 * nc) = 0.5 * embed_hermitian(p.eq_mats[static_cast<size_t>(k)]);
            rhs = p.eq_rhs[static_cast<size_t>(k)];
        } else {
            const Index mdx = k - n_eq;
            a.topLeftCorner(2 * nc, 2 * nc) =
                0.5 * embed_hermitian(p.ineq_mats[static_cast<size_t>(mdx)]);
            a(2 * nc + mdx, 2 * nc + mdx) = 1.0;
            rhs = p.ineq_rhs[static_cast<size_t>(mdx)];
        }
        const double nrm = a.norm();
        const double sc = nrm > 0.0 ? nrm : 1.0;
        row_scale[static_cast<size_t>(k)] = sc;
        rp.a.push_back(a / sc);
        rp.b(k) = rhs / sc;
    }

    SdpSolution sol;
    sol.y.assign(static_cast<size_t>(n_eq), 0.0);
    sol.y_ineq.assign(static_cast<size_t>(n_ineq), 0.0);
    sol.x = Matrix::Zero(nc, nc);

    const ReduceResult red = reduce_constraints(rp, 1e-10);
    if (red.infeasible) {
        sol.status = SdpStatus::infeasible;
        sol.infeasibility_certified = true;
        sol.infeasibility_ray.assign(static_cast<size_t>(n_eq), 0.0);
        for (Index k = 0; k < n_eq; ++k) {
            // undo row scaling so the ray certifies the original data
            sol.infeasibility_ray[static_cast<size_t>(k)] =
                red.ray[static_cast<size_t>(k)] / row_scale[static_cast<size_t>(k)];
        }
        sol.message = "inconsistent linearly dependent constraints (certified)";
        sol.primal_objective = std::numeric_limits<double>::quiet_NaN();
        sol.dual_objective = std::numeric_limits<double>::quiet_NaN();
        return sol;
    }

    RealSdp reduced;
    reduced.n = rp.n;
    reduced.c = rp.c;
    reduced.b = RealVector(static_cast<Index>(red.selected.size()));
    for (size_t k = 0; k < red.selected.size(); ++k) {
        reduced.a.push_back(rp.a[static_cast<size_t>(red.selected[k])]);
        reduced.b(static_cast<Index>(k)) = rp.b(red.selected[k]);
    }

    IpmResult ipm = run_ipm(reduced, st);
    sol.iterations = ipm.iterations;
    sol.message = ipm.message;
    sol.status = ipm.status;
    sol.infeasibility_certified = ipm.certified;
    if (ipm.status == SdpStatus::infeasible && ipm.certified) {
        sol.infeasibility_ray.assign(static_cast<size_t>(n_eq), 0.0);
        for (size_t k = 0; k < red.selected.size(); ++k) {
            const Index orig = red.selected[k];
            if (orig < n_eq) {
                sol.infeasibility_ray[static_cast<size_t>(orig)] =
                    ipm.ray[k] / row_scale[static_cast<size_t>(orig)];
            }
        }
    }

    // map the solution back to the complex formulation
    if (ipm.x.size() > 0) {
        const RealMatrix xtop = ipm.x.topLeftCorner(2 * nc, 2 * nc);
        sol.x = unembed_hermitian(xtop);
    }
    for (size_t k = 0; k < red.selected.size(); ++k) {
        const Index orig = red.selected[k];
        const double yk = (ipm.y.size() > static_cast<Index>(k) ? ipm.y(static_cast<Index>(k)) : 0.0) /
                          row_scale[static_cast<size_t>(orig)];
        if (orig < n_eq) {
            sol.y[static_cast<size_t>(orig)] = yk;
        } else {
            sol.y_ineq[static_cast<size_t>(orig - n_eq)] = -yk;
        }
    }

    sol.primal_objective = (p.objective * sol.x).trace().real();
    sol.dual_objective = 0.0;
    for (size_t k = 0; k < sol.y.size(); ++k) sol.dual_objective += sol.y[k] * p.eq_rhs[k];
    for (size_t k = 0; k < sol.y_ineq.size(); ++k) sol.dual_objective -= sol.y_ineq[k] * p.ineq_rhs[k];
    sol.duality_gap = std::abs(sol.primal_objective - sol.dual_objective);

    double max_res = 0.0;
    for (size_t k = 0; k < p.eq_mats.size(); ++k) {
        const double v = (p.eq_mats[k] * sol.x).trace().real() - p.eq_rhs[k];
        max_res = std::max(max_res, std::abs(v));
    }
    for (size_t k = 0; k < p.ineq_mats.size(); ++k) {
        const double v = (p.ineq_mats[k] * sol.x).trace().real() - p.ineq_rhs[k];
        max_res = std::max(max_res, std::max(0.0, v));
    }
    sol.max_constraint_residual = max_res;
    return sol;
}

SdpResidualReport residual_report(const SdpProblem& p, const SdpSolution& s) {
    SdpResidualReport rep;
    const Index nc = p.dim();
    if (s.x.rows() != nc || s.x.cols() != nc) {
        throw std::invalid_argument("residual_report: solution dimension mismatch");
    }
    for (size_t k = 0; k < p.eq_mats.size(); ++k) {
        const double v = std::abs((p.eq_mats[k] * s.x).trace().real() - p.eq_rhs[k]);
        rep.max_eq_residual = std::max(rep.max_eq_residual, v);
    }
    for (size_t k = 0; k < p.ineq_mats.size(); ++k) {
        const double v = (p.ineq_mats[k] * s.x).trace().real() - p.ineq_rhs[k];
        rep.max_ineq_violation = std::max(rep.max_ineq_violation, std::max(0.0, v));
    }
    rep.x_min_eigenvalue = psd_check(s.x, 0.0).min_eigenvalue;

    Matrix slack = p.objective;
    for (size_t k = 0; k < p.eq_mats.size() && k < s.y.size(); ++k) {
        slack -= s.y[k] * p.eq_mats[k];
    }
    for (size_t k = 0; k < p.ineq_mats.size() && k < s.y_ineq.size(); ++k) {
        slack += s.y_ineq[k] * p.ineq_mats[k];
    }
    rep.dual_slack_min_eigenvalue = psd_check(slack, 0.0).min_eigenvalue;

    rep.primal_objective = (p.objective * s.x).trace().real();
    rep.dual_objective = 0.0;
    for (size_t k = 0; k < s.y.size() && k < p.eq_rhs.size(); ++k) {
        rep.dual_objective += s.y[k] * p.eq_rhs[k];
    }
    for (size_t k = 0; k < s.y_ineq.size() && k < p.ineq_rhs.size(); ++k) {
        rep.dual_objective -= s.y_ineq[k] * p.ineq_rhs[k];
    }
    rep.duality_gap = std::abs(rep.primal_objective - rep.dual_objective);
    return rep;
}

}  // namespace qadv
