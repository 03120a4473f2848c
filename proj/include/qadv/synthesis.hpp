// Universal-algorithm synthesis: the straight-line RDM sequence driven by a
// feasible catalyst, its consistency checker, and compilation into explicit
// unitaries by purification matching.

#pragma once

#include "qadv/adversary.hpp"
#include "qadv/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qadv {

enum class SequenceSource { synthesized, user_supplied };

struct RdmSequence {
    std::vector<Matrix> steps;   // pi^j on A (x) B
    SubsystemShape shape;
    SequenceSource source = SequenceSource::user_supplied;

    Index length() const { return static_cast<Index>(steps.size()); }
};

struct SynthesisConfig {
    std::optional<double> epsilon;  // in (0, 1]
    std::optional<Index> t_prime;   // explicit step count >= 1

    void require_valid() const;
};

// ceil(adv_value / epsilon^2), floored at one step. Throws for infinite
// adv_value (no finite algorithm exists) or epsilon outside (0, 1].
Index steps_for_epsilon(double adv_value, double epsilon);

// The straight-line sequence
//   pi^j = ((T'-j)/T' R_xi + j/T' R_tau) (x) |idle><idle| + pibar/T'
// for j = 0..T'-1, with R_v = tr_BC |v><v|. Throws if pibar violates the
// conversion constraint beyond feas_tol.
RdmSequence build_rdm_sequence(const ConversionProblem& p, const Matrix& pibar, Index t_prime);

// Target reduced operators on A for the endpoint checks.
struct EndpointSpec {
    Matrix initial_rdm;   // must equal tr_B(pi^0)
    Matrix final_rdm;     // must equal tr_B(L pi^{T-1} L^+)
};

// Exact conversion endpoints tr_BC |xi><xi| and tr_BC |tau><tau|.
EndpointSpec exact_endpoints(const ConversionProblem& p);

// Endpoints of the catalyst-perturbed conversion: each exact endpoint
// plus tr_B(pibar)/T'.
EndpointSpec perturbed_endpoints(const ConversionProblem& p, const Matrix& pibar, Index t_prime);

struct SequenceReport {
    bool psd_ok = true;
    double worst_psd_violation = 0.0;      // most negative step eigenvalue, as magnitude
    int psd_fail_index = -1;
    bool consistency_ok = true;
    double max_consistency_residual = 0.0; // per consecutive pair, max-abs entry
    int consistency_fail_index = -1;       // index j of the violated pair (j, j+1)
    bool endpoints_ok = true;
    double initial_residual = 0.0;
    double final_residual = 0.0;
    bool empty = false;

    bool passed() const { return !empty && psd_ok && consistency_ok && endpoints_ok; }
};

// Checks PSD per step, the step-to-step consistency condition
// tr_B pi^{j+1} = tr_B(L pi^j L^+), and the endpoint identities against the
// given targets. Accepts user-supplied sequences.
SequenceReport verify_sequence(const RdmSequence& seq, const ConversionProblem& p,
                               const EndpointSpec& endpoints);

// Same, against the exact conversion endpoints.
SequenceReport verify_sequence(const RdmSequence& seq, const ConversionProblem& p);

// A compiled run: perturbed input/target on A (x) B (x) C', C' = C plus a
// trailing ancilla qubit, with T'+1 unitaries acting on B (x) C' only.
struct AlgorithmPlan {
    SubsystemShape shape;          // problem shape (C without the ancilla)
    Index dim_c_prime = 0;         // 2 * dim_c
    Index t_prime = 0;
    Vector perturbed_input;        // xi (x) |0> + purification(pibar)/sqrt(T') (x) |1>
    Vector perturbed_target;
    std::vector<Matrix> unitaries; // W_0 .. W_{T'}, each on B (x) C'
    Matrix l_lifted;               // L (x) I_{C'}
    Matrix ancilla_projector;      // |0><0| on the trailing qubit
    double adv_value = 0.0;        // tr(pibar)/<xi|xi> for the pibar used
    double predicted_error = 0.0;  // sqrt(adv_value / t_prime)

    Index full_dim() const { return shape.dim_ab() * dim_c_prime; }
    Index env_dim() const { return shape.dim_b * dim_c_prime; }
};

// Purifies every step on C', then connects: W_0 maps the perturbed input
// onto the first purification, W_j bridges L applications, and W_{T'} lands
// on the perturbed target. Throws (naming the step) if a connection is
// infeasible.
AlgorithmPlan compile_plan(const ConversionProblem& p, const RdmSequence& seq,
                           const Matrix& pibar);

}  // namespace qadv
