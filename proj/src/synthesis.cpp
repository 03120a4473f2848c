#include "qadv/synthesis.hpp"

#include "qadv/purification.hpp"

#include <cmath>
#include <limits>

namespace qadv {

void SynthesisConfig::require_valid() const {
    if (epsilon.has_value() == t_prime.has_value()) {
        throw std::invalid_argument("SynthesisConfig: exactly one of epsilon / t_prime must be set");
    }
    if (epsilon && (*epsilon <= 0.0 || *epsilon > 1.0)) {
        throw std::invalid_argument("SynthesisConfig: epsilon must lie in (0, 1]");
    }
    if (t_prime && *t_prime < 1) {
        throw std::invalid_argument("SynthesisConfig: t_prime must be >= 1");
    }
}

Index steps_for_epsilon(double adv_value, double epsilon) {
    if (!std::isfinite(adv_value) || adv_value < 0.0) {
        throw std::invalid_argument("steps_for_epsilon: adversary value must be finite and >= 0");
    }
    if (epsilon <= 0.0 || epsilon > 1.0) {
        throw std::invalid_argument("steps_for_epsilon: epsilon must lie in (0, 1]");
    }
    const double raw = adv_value / (epsilon * epsilon);
    // back off one part in 1e12 so values that are integers up to roundoff
    // do not get bumped a full step
    const double steps = std::ceil(raw * (1.0 - 1e-12));
    return std::max<Index>(1, static_cast<Index>(steps));
}

RdmSequence build_rdm_sequence(const ConversionProblem& p, const Matrix& pibar, Index t_prime) {
    if (t_prime < 1) {
        throw std::invalid_argument("build_rdm_sequence: t_prime must be >= 1");
    }
    const double res = conversion_residual(p, pibar);
    if (res > p.tol.feas_tol) {
        throw std::invalid_argument(
            "build_rdm_sequence: pibar violates the conversion constraint (residual " +
            std::to_string(res) + " > feas_tol)");
    }
    const PsdCheck psd = psd_check(pibar, p.tol.psd_tol);
    if (!psd.is_psd) {
        throw std::invalid_argument("build_rdm_sequence: pibar is not PSD (min eigenvalue " +
                                    std::to_string(psd.min_eigenvalue) + ")");
    }

    const Matrix r_xi = rdm_a(p, p.xi);
    const Matrix r_tau = rdm_a(p, p.tau);
    const Matrix idle_proj = projector(p.idle);
    const Matrix catalyst = pibar / static_cast<double>(t_prime);

    RdmSequence seq;
    seq.shape = p.shape;
    seq.source = SequenceSource::synthesized;
    seq.steps.reserve(static_cast<size_t>(t_prime));
    for (Index j = 0; j < t_prime; ++j) {
        const double w_tau = static_cast<double>(j) / static_cast<double>(t_prime);
        const Matrix interp = (1.0 - w_tau) * r_xi + w_tau * r_tau;
        seq.steps.push_back(kron(interp, idle_proj) + catalyst);
    }
    return seq;
}

EndpointSpec exact_endpoints(const ConversionProblem& p) {
    return {rdm_a(p, p.xi), rdm_a(p, p.tau)};
}

EndpointSpec perturbed_endpoints(const ConversionProblem& p, const Matrix& pibar, Index t_prime) {
    const Matrix shift =
        trace_out_b(pibar, p.shape.dim_a, p.shape.dim_b) / static_cast<double>(t_prime);
    EndpointSpec spec = exact_endpoints(p);
    spec.initial_rdm += shift;
    spec.final_rdm += shift;
    return spec;
}

SequenceReport verify_sequence(const RdmSequence& seq, const ConversionProblem& p,
                               const EndpointSpec& endpoints) {
    SequenceReport rep;
    if (seq.steps.empty()) {
        rep.empty = true;
        rep.psd_ok = rep.consistency_ok = rep.endpoints_ok = false;
        return rep;
    }
    const Index da = p.shape.dim_a, db = p.shape.dim_b;

    for (size_t j = 0; j < seq.steps.size(); ++j) {
        const PsdCheck psd = psd_check(seq.steps[j], p.tol.psd_tol);
        if (!psd.is_psd) {
            rep.psd_ok = false;
            if (rep.psd_fail_index < 0) rep.psd_fail_index = static_cast<int>(j);
        }
        rep.worst_psd_violation =
            std::max(rep.worst_psd_violation, std::max(0.0, -psd.min_eigenvalue));
    }

    for (size_t j = 0; j + 1 < seq.steps.size(); ++j) {
        const Matrix evolved =
            trace_out_b(p.l * seq.steps[j] * p.l.adjoint(), da, db);
        const Matrix next = trace_out_b(seq.steps[j + 1], da, db);
        const double res = max_abs(next - evolved);
        if (res > rep.max_consistency_residual) rep.max_consistency_residual = res;
        if (res > p.tol.feas_tol && rep.consistency_fail_index < 0) {
            rep.consistency_fail_index = static_cast<int>(j);
        }
    }
    rep.consistency_ok = rep.max_consistency_residual <= p.tol.feas_tol;

    rep.initial_residual = max_abs(trace_out_b(seq.steps.front(), da, db) - endpoints.initial_rdm);
    const Matrix last_evolved =
        trace_out_b(p.l * seq.steps.back() * p.l.adjoint(), da, db);
    rep.final_residual = max_abs(last_evolved - endpoints.final_rdm);
    rep.endpoints_ok =
        rep.initial_residual <= p.tol.feas_tol && rep.final_residual <= p.tol.feas_tol;
    return rep;
}

SequenceReport verify_sequence(const RdmSequence& seq, const ConversionProblem& p) {
    return verify_sequence(seq, p, exact_endpoints(p));
}

AlgorithmPlan compile_plan(const ConversionProblem& p, const RdmSequence& seq,
                           const Matrix& pibar) {
    const Index da = p.shape.dim_a, db = p.shape.dim_b, dc = p.shape.dim_c;
    if (dc < da * db) {
        throw std::invalid_argument(
            "compile_plan: dim_c must be at least dim_a*dim_b to purify every step");
    }
    const Index t_prime = seq.length();
    if (t_prime < 1) {
        throw std::invalid_argument("compile_plan: sequence is empty");
    }
    const SequenceReport rep = verify_sequence(seq, p, perturbed_endpoints(p, pibar, t_prime));
    if (!rep.passed()) {
        throw std::invalid_argument(
            "compile_plan: sequence fails verification against the perturbed endpoints "
            "(consistency residual " + std::to_string(rep.max_consistency_residual) +
            ", endpoint residuals " + std::to_string(rep.initial_residual) + "/" +
            std::to_string(rep.final_residual) + ")");
    }

    AlgorithmPlan plan;
    plan.shape = p.shape;
    plan.dim_c_prime = 2 * dc;
    plan.t_prime = t_prime;
    plan.adv_value = pibar.trace().real() / p.xi_norm_sq();
    plan.predicted_error = std::sqrt(std::max(0.0, plan.adv_value / static_cast<double>(t_prime)));

    const double inv_sqrt_t = 1.0 / std::sqrt(static_cast<double>(t_prime));
    const Vector v = purify(pibar, dc, p.tol.psd_tol, p.tol.rank_tol);

    const Index abc = p.shape.total();
    Vector input = Vector::Zero(2 * abc);
    Vector target = Vector::Zero(2 * abc);
    for (Index i = 0; i < abc; ++i) {
        input(2 * i) = p.xi(i);
        input(2 * i + 1) = inv_sqrt_t * v(i);
        target(2 * i) = p.tau(i);
        target(2 * i + 1) = inv_sqrt_t * v(i);
    }
    plan.perturbed_input = input;
    plan.perturbed_target = target;

    const Index env = db * plan.dim_c_prime;
    std::vector<Vector> purified;
    purified.reserve(static_cast<size_t>(t_prime));
    for (Index j = 0; j < t_prime; ++j) {
        purified.push_back(
            purify(seq.steps[static_cast<size_t>(j)], plan.dim_c_prime, p.tol.psd_tol, p.tol.rank_tol));
    }

    auto connect_step = [&](const Vector& from, const Vector& to, Index step) {
        try {
            return connect_purifications(from, to, da, env, p.tol.match_tol, p.tol.rank_tol);
        } catch (const std::exception& e) {
            throw std::runtime_error("compile_plan: purification connection failed at step " +
                                     std::to_string(step) + ": " + e.what());
        }
    };

    plan.l_lifted = kron(p.l, identity(plan.dim_c_prime));
    plan.unitaries.reserve(static_cast<size_t>(t_prime + 1));
    plan.unitaries.push_back(connect_step(input, purified[0], 0));
    Vector carried = purified[0];
    for (Index j = 1; j <= t_prime; ++j) {
        const Vector advanced = apply_to_factor(p.l, carried, 1, plan.dim_c_prime);
        const Vector& goal = (j < t_prime) ? purified[static_cast<size_t>(j)] : target;
        plan.unitaries.push_back(connect_step(advanced, goal, j));
        if (j < t_prime) carried = purified[static_cast<size_t>(j)];
    }

    plan.ancilla_projector = Matrix::Zero(2, 2);
    plan.ancilla_projector(0, 0) = 1.0;
    return plan;
}

}  // namespace qadv
