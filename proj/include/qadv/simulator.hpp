// Executes a compiled plan on a state vector, records the trace, and
// computes the error and idle-mass metrics.

#pragma once

#include "qadv/synthesis.hpp"

#include <string>
#include <vector>

namespace qadv {

struct PerSubspaceError {
    int index = 0;
    double error = 0.0;
    double bound = 0.0;
    bool skipped = false;   // subspace carries no xi mass
};

struct SimulationTrace {
    Vector input;
    std::vector<Vector> prequery;   // Phi^j: state directly before the (j+1)-th L
    Vector final_state;             // after the last unitary, before projection
    Vector final_projected;         // after the ancilla |0> projection
    std::vector<double> norms_sq;   // input, Phi^0..Phi^{T'-1}, final, projected
    std::vector<double> idle_mass;  // <Phi^j|(I - P_idle)|Phi^j> per pre-query state
    Index t_prime = 0;
    double adv_value = 0.0;
    double predicted_error = 0.0;
};

// Applies W_0, then alternately L and W_j, ending with W_{T'} and the
// ancilla projection. Throws on dimension mismatch.
SimulationTrace run(const AlgorithmPlan& plan, const ConversionProblem& p, const Vector& input);

// ||final_projected - tau (x) |0>|| / ||input||.
double final_error(const SimulationTrace& trace, const Vector& tau);

// ||final_state - perturbed_target||: how exactly the plan reproduces its
// own perturbed conversion.
double exactness_error(const SimulationTrace& trace, const AlgorithmPlan& plan);

// Error without the final ancilla projection (the keep-everything variant).
double no_discard_error(const SimulationTrace& trace, const Vector& tau);

// Normalized idle-complement mass summed over pre-query states.
double las_vegas_mass(const SimulationTrace& trace);

// Same quantity computed from a sequence of reduced operators:
// sum_j tr((I - I_A (x) |idle><idle|) pi^j) / <xi|xi>.
double las_vegas_mass(const RdmSequence& seq, const ConversionProblem& p);

// Per-subspace normalized errors with the sqrt(adv/T') bound. Subspaces
// with no xi mass are reported as skipped.
std::vector<PerSubspaceError> per_subspace_error(const SimulationTrace& trace,
                                                 const ConversionProblem& p);

}  // namespace qadv
