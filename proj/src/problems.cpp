#include "qadv/problems.hpp"

#include <cmath>

namespace qadv {

namespace {

Vector triple(const Vector& a, const Vector& b, const Vector& c) {
    return kron_vec(kron_vec(a, b), c);
}

// Agreed values of two independent conic solvers (CLARABEL and SCS via
// cvxpy, eps 1e-11); see tests/oracles/reference_bounds.py.
constexpr double kGrover2Bound = 0.5;
constexpr double kGrover3Bound = 0.707106781186;   // numerically sqrt(2)/2
constexpr double kGrover4Bound = 0.866025403782;   // numerically sqrt(3)/2
constexpr double kNoisy03Bound = 0.648221927397;   // matches 1/2 + 1/(2(1+sqrt(0.7))^2)

const char* kOracleNote =
    "frozen from tests/oracles/reference_bounds.py (two independent conic solvers agreeing)";

}  // namespace

NamedInstance deutsch_phase() {
    const Index da = 2, db = 2, dc = 4;
    NamedInstance inst;
    inst.name = "deutsch_phase";

    const Vector idle = basis_vector(db, 0);
    const Vector q = basis_vector(db, 1);
    Matrix l = kron(projector(basis_vector(da, 0)), identity(db)) +
               kron(projector(basis_vector(da, 1)), identity(db) - 2.0 * projector(q));

    Vector plus = (basis_vector(da, 0) + basis_vector(da, 1)) / std::sqrt(2.0);
    Vector xi = triple(plus, idle, basis_vector(dc, 0));
    Vector tau = (triple(basis_vector(da, 0), idle, basis_vector(dc, 0)) +
                  triple(basis_vector(da, 1), idle, basis_vector(dc, 1))) /
                 std::sqrt(2.0);

    inst.problem = make_problem({da, db, dc}, std::move(l), std::move(xi), std::move(tau), idle);
    inst.expected_bound = 0.5;
    inst.provenance = "hand-verifiable primal and dual certificates";
    inst.cert_pibar = 0.5 * kron(projector(plus), projector(q));
    Matrix gamma = Matrix::Zero(da, da);
    gamma(0, 1) = -0.5;
    gamma(1, 0) = -0.5;
    inst.cert_gamma = gamma;
    return inst;
}

NamedInstance grover_phase(Index n) {
    if (n < 2 || n > 8) {
        throw std::invalid_argument("grover_phase: n must lie in [2, 8]");
    }
    const Index da = n, db = n + 1, dc = n * (n + 1);
    NamedInstance inst;
    inst.name = "grover_phase(" + std::to_string(n) + ")";

    Matrix l = Matrix::Zero(da * db, da * db);
    for (Index a = 0; a < n; ++a) {
        Matrix la = identity(db);
        la(a + 1, a + 1) = -1.0;
        l += kron(projector(basis_vector(da, a)), la);
    }

    const Vector idle = basis_vector(db, 0);
    Vector xi = Vector::Zero(da * db * dc);
    Vector tau = Vector::Zero(da * db * dc);
    const double w = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index a = 0; a < n; ++a) {
        xi += w * triple(basis_vector(da, a), idle, basis_vector(dc, 0));
        tau += w * triple(basis_vector(da, a), idle, basis_vector(dc, a));
    }

    inst.problem = make_problem({da, db, dc}, std::move(l), std::move(xi), std::move(tau), idle);
    if (n == 2) {
        inst.expected_bound = kGrover2Bound;
        inst.provenance = kOracleNote;
    } else if (n == 3) {
        inst.expected_bound = kGrover3Bound;
        inst.provenance = kOracleNote;
    } else if (n == 4) {
        inst.expected_bound = kGrover4Bound;
        inst.provenance = kOracleNote;
    }
    return inst;
}

NamedInstance noisy_damp(double p) {
    if (p < 0.0 || p >= 1.0) {
        throw std::invalid_argument("noisy_damp: p must lie in [0, 1)");
    }
    const Index da = 2, db = 2, dc = 4;
    NamedInstance inst;
    inst.name = "noisy_damp(" + std::to_string(p) + ")";

    const double keep = std::sqrt(1.0 - p);
    const Vector idle = basis_vector(db, 0);
    Matrix k = identity(db);
    k(1, 1) = -keep;   // phase-flip and damp the non-idle direction
    Matrix l = kron(projector(basis_vector(da, 0)), identity(db)) +
               kron(projector(basis_vector(da, 1)), k);

    Vector plus = (basis_vector(da, 0) + basis_vector(da, 1)) / std::sqrt(2.0);
    Vector xi = triple(plus, idle, basis_vector(dc, 0));
    Vector tau = (triple(basis_vector(da, 0), idle, basis_vector(dc, 1)) +
                  keep * triple(basis_vector(da, 1), idle, basis_vector(dc, 2))) /
                 std::sqrt(2.0);

    inst.problem = make_problem({da, db, dc}, std::move(l), std::move(xi), std::move(tau), idle);
    if (p == 0.3) {
        inst.expected_bound = kNoisy03Bound;
        inst.provenance = kOracleNote;
    }
    return inst;
}

std::vector<NamedInstance> bundled_corpus() {
    std::vector<NamedInstance> out;
    out.push_back(deutsch_phase());
    out.push_back(grover_phase(2));
    out.push_back(grover_phase(3));
    out.push_back(grover_phase(4));
    out.push_back(noisy_damp(0.3));
    return out;
}

}  // namespace qadv
