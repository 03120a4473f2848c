// State-conversion problems and their adversary bound: primal/dual SDP
// construction, certified solves, and the commuting-subspace refinement of
// the objective.

#pragma once

#include "qadv/sdp.hpp"
#include "qadv/tensor.hpp"
#include "qadv/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qadv {

// A conversion problem on the tripartite space A (x) B (x) C: transform xi
// into tau where only the fixed subunitary L (acting on AB, once per step)
// touches A, unitaries on BC are free, and L acts trivially on the
// designated idle state of B.
struct ConversionProblem {
    SubsystemShape shape;
    Matrix l;                        // on A (x) B
    Vector idle;                     // in B
    Vector xi;                       // in A (x) B (x) C
    Vector tau;                      // in A (x) B (x) C
    std::vector<Matrix> subspaces;   // commuting projectors on A (optional)
    Tolerances tol;

    double xi_norm_sq() const { return xi.squaredNorm(); }
};

ConversionProblem make_problem(SubsystemShape shape, Matrix l, Vector xi, Vector tau,
                               Vector idle = Vector(),
                               std::vector<Matrix> subspaces = {});

// reduced operator on A of a full-space vector
Matrix rdm_a(const ConversionProblem& p, const Vector& v);

// tr_BC(|tau><tau| - |xi><xi|), the right-hand side of the conversion
// constraint on A
Matrix conversion_rhs(const ConversionProblem& p);

// max-abs residual of tr_B(L pibar L^+ - pibar) = conversion_rhs, computed
// by direct partial-trace arithmetic
double conversion_residual(const ConversionProblem& p, const Matrix& pibar);

// max eigenvalue of L^+(Gamma (x) I_B)L - Gamma (x) I_B - I_AB; dual
// feasible iff <= 0 (up to tolerance)
double dual_slack_max_eigenvalue(const ConversionProblem& p, const Matrix& gamma);

// (<tau|Gamma (x) I_BC|tau> - <xi|Gamma (x) I_BC|xi>) / <xi|xi>
double dual_objective_value(const ConversionProblem& p, const Matrix& gamma);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
    const ValidationCheck* find(const std::string& name) const;
};

// Checks every structural invariant: dimensional consistency, subunitarity
// of L, idle normalization and triviality, xi != 0, and (per subspace)
// projector structure and commutation with L. Never throws; the report
// carries failures.
ValidationReport validate(const ConversionProblem& p);

// Primal SDP: variable pibar on AB, objective tr(pibar)/<xi|xi>, the
// conversion constraint expanded over an orthonormal Hermitian basis of A,
// plus tr((P (x) I_B) pibar) = 0 for subspaces carrying no xi mass.
SdpProblem build_primal(const ConversionProblem& p);

// Dual SDP lowered to standard form: variable diag(Gamma+, Gamma-, S) with
// Gamma = Gamma+ - Gamma- and slack S for the operator inequality
// L^+(Gamma (x) I)L - Gamma (x) I <= I.
SdpProblem build_dual(const ConversionProblem& p);

// Gamma recovered from a solution of build_dual's problem.
Matrix extract_dual_gamma(const ConversionProblem& p, const SdpSolution& s);

enum class AdversaryStatus { optimal, infeasible, failed };

const char* to_string(AdversaryStatus s);

struct SubspaceStat {
    int index = 0;
    double pibar_mass = 0.0;   // tr((P (x) I_B) pibar)
    double xi_mass = 0.0;      // <xi| P (x) I_BC |xi>
    double ratio = 0.0;        // pibar_mass / xi_mass (0 if excluded)
    bool included = false;     // participates in the supremum
    bool violation = false;    // zero xi mass but nonzero pibar mass
};

struct RefinedObjective {
    double refined_value = 0.0;
    std::vector<SubspaceStat> per_subspace;
    bool any_violation = false;
};

// sup over provided subspaces with nonzero xi mass of
// tr((P (x) I_B) pibar) / <xi|P (x) I_BC|xi>.
RefinedObjective refined_objective(const Matrix& pibar, const ConversionProblem& p);

struct AdversaryResult {
    AdversaryStatus status = AdversaryStatus::failed;
    bool infeasibility_certified = false;
    double value = 0.0;              // +infinity when infeasible
    Matrix pibar;                    // primal optimizer on AB
    Matrix gamma;                    // dual certificate on A
    double primal_value = 0.0;
    double dual_value = 0.0;
    double duality_gap = 0.0;
    double eq_residual = 0.0;        // conversion_residual of pibar
    double gamma_slack = 0.0;        // dual_slack_max_eigenvalue of gamma
    std::optional<double> refined_value;
    std::optional<std::vector<SubspaceStat>> per_subspace;
    std::string message;
};

// Solves both SDPs; optimal status requires the primal/dual values to agree
// within gap_tol. Infeasible primal is reported as value = +infinity.
AdversaryResult adversary_bound(const ConversionProblem& p);

}  // namespace qadv
