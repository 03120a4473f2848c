#include "qadv/adversary.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace qadv {

namespace {

Matrix lift_to_ab(const ConversionProblem& p, const Matrix& on_a) {
    return kron(on_a, identity(p.shape.dim_b));
}

}  // namespace

ConversionProblem make_problem(SubsystemShape shape, Matrix l, Vector xi, Vector tau,
                               Vector idle, std::vector<Matrix> subspaces) {
    shape.require_valid();
    ConversionProblem p;
    p.shape = shape;
    p.l = std::move(l);
    p.xi = std::move(xi);
    p.tau = std::move(tau);
    p.idle = idle.size() == 0 ? basis_vector(shape.dim_b, 0) : std::move(idle);
    p.subspaces = std::move(subspaces);
    return p;
}

Matrix rdm_a(const ConversionProblem& p, const Vector& v) {
    return vector_rdm_keep_slowest(v, p.shape.dim_a, p.shape.dim_b * p.shape.dim_c);
}

Matrix conversion_rhs(const ConversionProblem& p) {
    return rdm_a(p, p.tau) - rdm_a(p, p.xi);
}

double conversion_residual(const ConversionProblem& p, const Matrix& pibar) {
    const Matrix evolved = p.l * pibar * p.l.adjoint() - pibar;
    const Matrix lhs = trace_out_b(evolved, p.shape.dim_a, p.shape.dim_b);
    return max_abs(lhs - conversion_rhs(p));
}

double dual_slack_max_eigenvalue(const ConversionProblem& p, const Matrix& gamma) {
    const Matrix lifted = lift_to_ab(p, gamma);
    const Matrix slack = p.l.adjoint() * lifted * p.l - lifted - identity(p.shape.dim_ab());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(slack), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double dual_objective_value(const ConversionProblem& p, const Matrix& gamma) {
    return (gamma * conversion_rhs(p)).trace().real() / p.xi_norm_sq();
}

bool ValidationReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ValidationReport validate(const ConversionProblem& p) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool ok, double residual, std::string detail = "") {
        rep.checks.push_back({std::move(name), ok, residual, std::move(detail)});
    };

    const Index da = p.shape.dim_a, db = p.shape.dim_b, dc = p.shape.dim_c;
    bool dims_ok = da >= 1 && db >= 1 && dc >= 1;
    dims_ok = dims_ok && p.l.rows() == da * db && p.l.cols() == da * db;
    dims_ok = dims_ok && p.idle.size() == db;
    dims_ok = dims_ok && p.xi.size() == p.shape.total() && p.tau.size() == p.shape.total();
    for (const auto& sp : p.subspaces) {
        dims_ok = dims_ok && sp.rows() == da && sp.cols() == da;
    }
    add("dimensions", dims_ok, dims_ok ? 0.0 : 1.0,
        dims_ok ? "" : "operator or vector dimensions inconsistent with shape");
    if (!dims_ok) return rep;

    const auto sub = subunitarity_check(p.l, p.tol.hermitian_tol);
    add("l_subunitary", sub.ok, std::max(0.0, sub.max_singular_value - 1.0),
        "largest singular value " + std::to_string(sub.max_singular_value));

    add("idle_normalized", std::abs(p.idle.norm() - 1.0) <= p.tol.hermitian_tol,
        std::abs(p.idle.norm() - 1.0));

    double idle_res = 0.0;
    for (Index a = 0; a < da; ++a) {
        const Vector probe = kron_vec(basis_vector(da, a), p.idle);
        idle_res = std::max(idle_res, (p.l * probe - probe).norm());
    }
    add("idle_trivial", idle_res <= 1e-8, idle_res,
        "L must act as the identity on every A-basis vector tensored with idle");

    add("xi_nonzero", p.xi.norm() > 0.0, p.xi.norm() == 0.0 ? 1.0 : 0.0);

    for (size_t i = 0; i < p.subspaces.size(); ++i) {
        const Matrix& proj = p.subspaces[i];
        const double herm = hermiticity_defect(proj);
        const double idem = max_abs(proj * proj - proj);
        const double proj_res = std::max(herm, idem);
        add("subspace_" + std::to_string(i) + "_projector", proj_res <= p.tol.hermitian_tol,
            proj_res);
        const Matrix lifted = lift_to_ab(p, proj);
        const double comm = max_abs(lifted * p.l - p.l * lifted);
        add("subspace_" + std::to_string(i) + "_commutes", comm <= 1e-8, comm);
    }
    return rep;
}

SdpProblem build_primal(const ConversionProblem& p) {
    const Index da = p.shape.dim_a;
    const Index dab = p.shape.dim_ab();
    const double s = p.xi_norm_sq();
    const Matrix rhs = conversion_rhs(p);

    SdpProblem sdp;
    sdp.objective = identity(dab) / s;
    const Matrix ib = identity(p.shape.dim_b);
    for (const Matrix& h : hermitian_basis(da)) {
        const Matrix lifted = kron(h, ib);
        sdp.eq_mats.push_back(p.l.adjoint() * lifted * p.l - lifted);
        sdp.eq_rhs.push_back((h * rhs).trace().real());
    }
    // subspaces with no xi mass must carry no pibar mass
    for (const Matrix& proj : p.subspaces) {
        const Vector pxi = apply_to_factor(proj, p.xi, 1, p.shape.dim_b * p.shape.dim_c);
        if (pxi.squaredNorm() <= 1e-12 * s) {
            sdp.eq_mats.push_back(lift_to_ab(p, proj));
            sdp.eq_rhs.push_back(0.0);
        }
    }
    return sdp;
}

SdpProblem build_dual(const ConversionProblem& p) {
    const Index da = p.shape.dim_a;
    const Index db = p.shape.dim_b;
    const Index dab = p.shape.dim_ab();
    const Index n = 2 * da + dab;  // diag(Gamma+, Gamma-, S)
    const double s = p.xi_norm_sq();
    const Matrix rhs = conversion_rhs(p);

    SdpProblem sdp;
    sdp.objective = Matrix::Zero(n, n);
    // maximize tr(Gamma rhs)/s == minimize tr(-rhs/s (Gamma+ - Gamma-))
    sdp.objective.topLeftCorner(da, da) = -rhs / s;
    sdp.objective.block(da, da, da, da) = rhs / s;

    for (const Matrix& f : hermitian_basis(dab)) {
        const Matrix psi = trace_out_b(p.l * f * p.l.adjoint(), da, db) - trace_out_b(f, da, db);
        Matrix a = Matrix::Zero(n, n);
        a.topLeftCorner(da, da) = psi;
        a.block(da, da, da, da) = -psi;
        a.block(2 * da, 2 * da, dab, dab) = f;
        sdp.eq_mats.push_back(std::move(a));
        sdp.eq_rhs.push_back(f.trace().real());
    }
    return sdp;
}

Matrix extract_dual_gamma(const ConversionProblem& p, const SdpSolution& s) {
    const Index da = p.shape.dim_a;
    if (s.x.rows() != 2 * da + p.shape.dim_ab()) {
        throw std::invalid_argument("extract_dual_gamma: solution does not match the dual lowering");
    }
    return hermitize(s.x.topLeftCorner(da, da) - s.x.block(da, da, da, da));
}

const char* to_string(AdversaryStatus s) {
    switch (s) {
        case AdversaryStatus::optimal: return "optimal";
        case AdversaryStatus::infeasible: return "infeasible";
        case AdversaryStatus::failed: return "failed";
    }
    return "unknown";
}

RefinedObjective refined_objective(const Matrix& pibar, const ConversionProblem& p) {
    if (p.subspaces.empty()) {
        throw std::invalid_argument("refined_objective: no subspaces provided");
    }
    const double s = p.xi_norm_sq();
    RefinedObjective out;
    for (size_t i = 0; i < p.subspaces.size(); ++i) {
        const Matrix& proj = p.subspaces[i];
        SubspaceStat st;
        st.index = static_cast<int>(i);
        st.pibar_mass = (kron(proj, identity(p.shape.dim_b)) * pibar).trace().real();
        const Vector pxi = apply_to_factor(proj, p.xi, 1, p.shape.dim_b * p.shape.dim_c);
        st.xi_mass = pxi.squaredNorm();
        if (st.xi_mass > 1e-12 * s) {
            st.included = true;
            st.ratio = st.pibar_mass / st.xi_mass;
            out.refined_value = std::max(out.refined_value, st.ratio);
        } else if (st.pibar_mass > p.tol.feas_tol) {
            st.violation = true;
            out.any_violation = true;
        }
        out.per_subspace.push_back(st);
    }
    return out;
}

AdversaryResult adversary_bound(const ConversionProblem& p) {
    const ValidationReport rep = validate(p);
    if (!rep.all_passed()) {
        std::string bad;
        for (const auto& c : rep.checks) {
            if (!c.passed) bad += (bad.empty() ? "" : ", ") + c.name;
        }
        throw std::invalid_argument("adversary_bound: problem fails validation: " + bad);
    }

    SdpSettings settings;
    settings.feas_tol = p.tol.feas_tol;
    settings.gap_tol = p.tol.gap_tol;
    settings.psd_tol = p.tol.psd_tol;
    settings.max_iter = p.tol.max_iter;

    AdversaryResult out;
    const SdpProblem primal = build_primal(p);
    const SdpSolution ps = solve(primal, settings);

    if (ps.status == SdpStatus::infeasible) {
        out.status = AdversaryStatus::infeasible;
        out.infeasibility_certified = ps.infeasibility_certified;
        out.value = std::numeric_limits<double>::infinity();
        out.message = "primal infeasible: no pibar satisfies the conversion constraint (" +
                      ps.message + ")";
        return out;
    }
    if (ps.status == SdpStatus::unbounded) {
        out.status = AdversaryStatus::failed;
        out.message = "primal solve reported unbounded: " + ps.message;
        return out;
    }

    const SdpProblem dual = build_dual(p);
    const SdpSolution ds = solve(dual, settings);

    out.pibar = hermitize(ps.x);
    out.primal_value = ps.primal_objective;
    out.value = out.primal_value;
    if (ds.status == SdpStatus::optimal) {
        out.gamma = extract_dual_gamma(p, ds);
        out.dual_value = -ds.primal_objective;
    } else {
        // fall back on the primal solve's multipliers: Gamma = s * sum y_i H_i
        const auto basis = hermitian_basis(p.shape.dim_a);
        Matrix gamma = Matrix::Zero(p.shape.dim_a, p.shape.dim_a);
        for (size_t i = 0; i < basis.size() && i < ps.y.size(); ++i) {
            gamma += ps.y[i] * basis[i];
        }
        out.gamma = p.xi_norm_sq() * gamma;
        out.dual_value = dual_objective_value(p, out.gamma);
        out.message = "dual solve did not reach optimality (" + ds.message +
                      "); certificate taken from primal multipliers";
    }
    out.duality_gap = std::abs(out.primal_value - out.dual_value);
    out.eq_residual = conversion_residual(p, out.pibar);
    out.gamma_slack = dual_slack_max_eigenvalue(p, out.gamma);

    const bool primal_ok = ps.status == SdpStatus::optimal;
    const bool gap_ok = out.duality_gap <= p.tol.gap_tol * std::max(1.0, std::abs(out.primal_value));
    out.status = (primal_ok && gap_ok) ? AdversaryStatus::optimal : AdversaryStatus::failed;
    if (out.status == AdversaryStatus::failed && out.message.empty()) {
        out.message = "primal status " + std::string(to_string(ps.status)) +
                      ", duality gap " + std::to_string(out.duality_gap);
    }

    if (!p.subspaces.empty()) {
        const RefinedObjective ref = refined_objective(out.pibar, p);
        out.refined_value = ref.refined_value;
        out.per_subspace = ref.per_subspace;
    }
    return out;
}

}  // namespace qadv
