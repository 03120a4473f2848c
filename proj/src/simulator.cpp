#include "qadv/simulator.hpp"

#include <cmath>

namespace qadv {

namespace {

// squared norm of (I_A (x) |idle><idle| (x) I_C') v
double idle_projected_mass(const Vector& v, const ConversionProblem& p, Index dcp) {
    const Index da = p.shape.dim_a, db = p.shape.dim_b;
    double mass = 0.0;
    for (Index a = 0; a < da; ++a) {
        for (Index c = 0; c < dcp; ++c) {
            Complex amp = 0.0;
            for (Index b = 0; b < db; ++b) {
                amp += std::conj(p.idle(b)) * v((a * db + b) * dcp + c);
            }
            mass += std::norm(amp);
        }
    }
    return mass;
}

Vector lift_with_ancilla(const Vector& v, Index ancilla_state) {
    Vector out = Vector::Zero(2 * v.size());
    for (Index i = 0; i < v.size(); ++i) out(2 * i + ancilla_state) = v(i);
    return out;
}

}  // namespace

SimulationTrace run(const AlgorithmPlan& plan, const ConversionProblem& p, const Vector& input) {
    if (input.size() != plan.full_dim()) {
        throw std::invalid_argument("simulator::run: input dimension does not match the plan");
    }
    if (plan.unitaries.size() != static_cast<size_t>(plan.t_prime + 1)) {
        throw std::invalid_argument("simulator::run: plan must carry T'+1 unitaries");
    }
    const Index da = plan.shape.dim_a;
    const Index dcp = plan.dim_c_prime;

    SimulationTrace trace;
    trace.input = input;
    trace.t_prime = plan.t_prime;
    trace.adv_value = plan.adv_value;
    trace.predicted_error = plan.predicted_error;
    trace.norms_sq.push_back(input.squaredNorm());

    Vector state = input;
    // unitaries act on B (x) C', the fast factors under A
    state = apply_to_factor(plan.unitaries[0], state, da, 1);
    for (Index j = 1; j <= plan.t_prime; ++j) {
        trace.prequery.push_back(state);
        trace.norms_sq.push_back(state.squaredNorm());
        trace.idle_mass.push_back(state.squaredNorm() - idle_projected_mass(state, p, dcp));
        state = apply_to_factor(p.l, state, 1, dcp);                         // L (x) I_C'
        state = apply_to_factor(plan.unitaries[static_cast<size_t>(j)], state, da, 1);  // W_j
    }
    trace.final_state = state;
    trace.norms_sq.push_back(state.squaredNorm());

    // ancilla projection: zero the |1> components (ancilla is the fastest factor)
    Vector projected = state;
    for (Index i = 1; i < projected.size(); i += 2) projected(i) = 0.0;
    trace.final_projected = projected;
    trace.norms_sq.push_back(projected.squaredNorm());
    return trace;
}

double final_error(const SimulationTrace& trace, const Vector& tau) {
    const Vector target = lift_with_ancilla(tau, 0);
    if (target.size() != trace.final_projected.size()) {
        throw std::invalid_argument("final_error: tau dimension does not match the trace");
    }
    const double base = std::sqrt(trace.norms_sq.front());
    return (trace.final_projected - target).norm() / base;
}

double exactness_error(const SimulationTrace& trace, const AlgorithmPlan& plan) {
    return (trace.final_state - plan.perturbed_target).norm();
}

double no_discard_error(const SimulationTrace& trace, const Vector& tau) {
    const Vector target = lift_with_ancilla(tau, 0);
    const double base = std::sqrt(trace.norms_sq.front());
    return (trace.final_state - target).norm() / base;
}

double las_vegas_mass(const SimulationTrace& trace) {
    double sum = 0.0;
    for (double m : trace.idle_mass) sum += m;
    return sum / trace.norms_sq.front();
}

double las_vegas_mass(const RdmSequence& seq, const ConversionProblem& p) {
    const Matrix p_idle = kron(identity(p.shape.dim_a), projector(p.idle));
    double sum = 0.0;
    for (const Matrix& step : seq.steps) {
        sum += (step - p_idle * step).trace().real();
    }
    return sum / p.xi_norm_sq();
}

std::vector<PerSubspaceError> per_subspace_error(const SimulationTrace& trace,
                                                 const ConversionProblem& p) {
    if (p.subspaces.empty()) {
        throw std::invalid_argument("per_subspace_error: problem has no subspaces");
    }
    const Index dbc = p.shape.dim_b * p.shape.dim_c;
    const Index ancilla_rest = 2 * dbc;   // B (x) C (x) ancilla under A
    const Vector target = lift_with_ancilla(p.tau, 0);
    const Vector diff = trace.final_projected - target;
    std::vector<PerSubspaceError> out;
    for (size_t i = 0; i < p.subspaces.size(); ++i) {
        PerSubspaceError e;
        e.index = static_cast<int>(i);
        e.bound = trace.predicted_error;
        const Vector pxi = apply_to_factor(p.subspaces[i], p.xi, 1, dbc);
        const double base = pxi.norm();
        if (base <= 1e-12) {
            e.skipped = true;
            out.push_back(e);
            continue;
        }
        const Vector pdiff = apply_to_factor(p.subspaces[i], diff, 1, ancilla_rest);
        e.error = pdiff.norm() / base;
        out.push_back(e);
    }
    return out;
}

}  // namespace qadv
