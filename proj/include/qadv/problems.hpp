// Canonical conversion-problem instances with known or independently
// computed bound values; the regression and acceptance corpus.

#pragma once

#include "qadv/adversary.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qadv {

struct NamedInstance {
    std::string name;
    ConversionProblem problem;
    std::optional<double> expected_bound;
    std::string provenance;              // where expected_bound comes from
    std::optional<Matrix> cert_pibar;    // bundled primal certificate
    std::optional<Matrix> cert_gamma;    // bundled dual certificate
};

// Two inputs, phase oracle on the second: L = |0><0| (x) I + |1><1| (x)
// (I - 2|q><q|) with B = {idle, q}. Bound 1/2 with hand certificates.
NamedInstance deutsch_phase();

// n inputs, B = {idle, 1..n}, L_a flips the sign of B basis vector a+1.
// Identical initial states, pairwise orthogonal targets. Bounds frozen
// from an independent convex-solver run. Requires 2 <= n <= 8.
NamedInstance grover_phase(Index n);

// Subunitary interaction: the non-idle direction of the a=1 block is
// phase-flipped and damped by sqrt(1-p); the target is subnormalized to
// match. Requires 0 <= p < 1.
NamedInstance noisy_damp(double p);

// deutsch, grover 2..4, noisy_damp(0.3)
std::vector<NamedInstance> bundled_corpus();

}  // namespace qadv
