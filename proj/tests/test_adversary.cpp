#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qadv/adversary.hpp"
#include "qadv/problems.hpp"
#include "qadv/synthesis.hpp"

#include <random>

using namespace qadv;

namespace {

Matrix random_matrix(std::mt19937& rng, Index rows, Index cols) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    }
    return m;
}

Matrix random_unitary(std::mt19937& rng, Index n) {
    return Eigen::HouseholderQR<Matrix>(random_matrix(rng, n, n)).householderQ();
}

// a random interaction that is unitary and acts trivially on idle = e0:
// identity on A (x) idle, a random unitary on the complement
Matrix random_idle_unitary(std::mt19937& rng, Index da, Index db) {
    const Index n = da * db;
    const Index fixed = da;            // vectors (a, idle)
    const Matrix v = random_unitary(rng, n - fixed);
    Matrix l = Matrix::Zero(n, n);
    // enumerate non-idle coordinates
    std::vector<Index> rest;
    for (Index a = 0; a < da; ++a) {
        l(a * db, a * db) = 1.0;
        for (Index b = 1; b < db; ++b) rest.push_back(a * db + b);
    }
    for (size_t i = 0; i < rest.size(); ++i) {
        for (size_t j = 0; j < rest.size(); ++j) {
            l(rest[i], rest[j]) = v(static_cast<Index>(i), static_cast<Index>(j));
        }
    }
    return l;
}

// builds a provably feasible instance by running a short random circuit:
// tau is reachable from xi in `steps` interactions, so the primal SDP has a
// feasible point
ConversionProblem random_feasible_instance(std::mt19937& rng, Index steps) {
    const Index da = 2, db = 2, dc = 4;
    const Matrix l = random_idle_unitary(rng, da, db);
    Vector xi = random_matrix(rng, da * db * dc, 1).col(0);
    xi /= xi.norm();
    Vector state = xi;
    const Matrix l_lift = kron(l, identity(dc));
    for (Index s = 0; s < steps; ++s) {
        const Matrix w = random_unitary(rng, db * dc);
        state = apply_to_factor(w, state, da, 1);
        state = l_lift * state;
    }
    const Matrix w_final = random_unitary(rng, db * dc);
    state = apply_to_factor(w_final, state, da, 1);
    return make_problem({da, db, dc}, l, xi, state);
}

}  // namespace

TEST_CASE("validate accepts the identity interaction") {
    const Index da = 2, db = 2, dc = 4;
    auto rng = std::mt19937(41);
    Vector xi = random_matrix(rng, da * db * dc, 1).col(0);
    const ConversionProblem p = make_problem({da, db, dc}, identity(da * db), xi, xi);
    CHECK(validate(p).all_passed());
}

TEST_CASE("validate flags scaling and idle violations") {
    const Index da = 2, db = 2, dc = 4;
    auto rng = std::mt19937(42);
    Vector xi = random_matrix(rng, da * db * dc, 1).col(0);

    const ConversionProblem big = make_problem({da, db, dc}, 2.0 * identity(4), xi, xi);
    const ValidationReport rep = validate(big);
    CHECK_FALSE(rep.all_passed());
    const auto* sub = rep.find("l_subunitary");
    REQUIRE(sub != nullptr);
    CHECK_FALSE(sub->passed);
    CHECK(sub->residual == doctest::Approx(1.0));  // sigma_max = 2

    // an interaction that swaps idle with the other basis state of B
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    const ConversionProblem flip = make_problem({da, db, dc}, kron(identity(2), swap), xi, xi);
    const ValidationReport rep2 = validate(flip);
    CHECK_FALSE(rep2.all_passed());
    const auto* idle = rep2.find("idle_trivial");
    REQUIRE(idle != nullptr);
    CHECK_FALSE(idle->passed);
}

TEST_CASE("equal endpoints make the zero catalyst optimal") {
    auto rng = std::mt19937(43);
    const ConversionProblem p = random_feasible_instance(rng, 0);
    ConversionProblem same = p;
    same.tau = same.xi;
    const SdpProblem primal = build_primal(same);
    for (double b : primal.eq_rhs) CHECK(std::abs(b) < 1e-12);
    const AdversaryResult res = adversary_bound(same);
    REQUIRE(res.status == AdversaryStatus::optimal);
    CHECK(std::abs(res.value) < 1e-6);
}

TEST_CASE("identity interaction with mismatched reduced states is infeasible") {
    const Index da = 2, db = 2, dc = 4;
    Vector xi = kron_vec(kron_vec(basis_vector(da, 0), basis_vector(db, 0)), basis_vector(dc, 0));
    Vector mix = Vector::Zero(da * db * dc);
    // tau has a different reduced operator on A
    mix = (kron_vec(kron_vec(basis_vector(da, 0), basis_vector(db, 0)), basis_vector(dc, 0)) +
           kron_vec(kron_vec(basis_vector(da, 1), basis_vector(db, 0)), basis_vector(dc, 1))) /
          std::sqrt(2.0);
    const ConversionProblem p = make_problem({da, db, dc}, identity(da * db), xi, mix);
    const AdversaryResult res = adversary_bound(p);
    CHECK(res.status == AdversaryStatus::infeasible);
    CHECK(std::isinf(res.value));
    CHECK(res.infeasibility_certified);
}

TEST_CASE("deutsch primal certificate satisfies the conversion constraint by substitution") {
    const NamedInstance inst = deutsch_phase();
    REQUIRE(inst.cert_pibar.has_value());
    CHECK(conversion_residual(inst.problem, *inst.cert_pibar) < 1e-10);
    // the induced change on A is -(|0><1| + |1><0|)/2
    const Matrix rhs = conversion_rhs(inst.problem);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 1) = -0.5;
    expected(1, 0) = -0.5;
    CHECK(max_abs(rhs - expected) < 1e-12);
}

TEST_CASE("deutsch dual certificate is feasible with objective 1/2") {
    const NamedInstance inst = deutsch_phase();
    REQUIRE(inst.cert_gamma.has_value());
    CHECK(dual_slack_max_eigenvalue(inst.problem, *inst.cert_gamma) <= 1e-12);
    CHECK(dual_objective_value(inst.problem, *inst.cert_gamma) == doctest::Approx(0.5));
    // gamma = 0 is always feasible with objective 0
    const Matrix zero = Matrix::Zero(2, 2);
    CHECK(dual_slack_max_eigenvalue(inst.problem, zero) == doctest::Approx(-1.0));
    CHECK(dual_objective_value(inst.problem, zero) == 0.0);
}

TEST_CASE("deutsch bound is 1/2 with matching primal and dual solves") {
    const NamedInstance inst = deutsch_phase();
    const AdversaryResult res = adversary_bound(inst.problem);
    REQUIRE(res.status == AdversaryStatus::optimal);
    CHECK(res.value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.duality_gap <= 1e-7);
    CHECK(res.eq_residual <= 1e-7);
    CHECK(res.gamma_slack <= 1e-7);
    CHECK(psd_check(res.pibar, 1e-7).is_psd);
}

TEST_CASE("bound is invariant under common rescaling of xi and tau") {
    const NamedInstance inst = deutsch_phase();
    ConversionProblem scaled = inst.problem;
    const Complex c(0.6, 0.3);
    scaled.xi *= c;
    scaled.tau *= c;
    const AdversaryResult res = adversary_bound(scaled);
    REQUIRE(res.status == AdversaryStatus::optimal);
    CHECK(res.value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("weak duality holds across random feasible instances") {
    auto rng = std::mt19937(44);
    for (int rep = 0; rep < 8; ++rep) {
        const ConversionProblem p = random_feasible_instance(rng, 2);
        const AdversaryResult res = adversary_bound(p);
        REQUIRE(res.status == AdversaryStatus::optimal);
        CHECK(res.dual_value <= res.primal_value + 1e-6 * (1.0 + res.primal_value));
        // tau is reachable in two interactions, so the bound cannot exceed 2
        CHECK(res.value <= 2.0 + 1e-6);
        CHECK(res.eq_residual <= 1e-7);
    }
}

TEST_CASE("refined objective with the identity projector reduces to the plain bound") {
    NamedInstance inst = deutsch_phase();
    inst.problem.subspaces.push_back(identity(2));
    const AdversaryResult res = adversary_bound(inst.problem);
    REQUIRE(res.status == AdversaryStatus::optimal);
    REQUIRE(res.refined_value.has_value());
    CHECK(*res.refined_value == doctest::Approx(res.value).epsilon(1e-6));
}

TEST_CASE("deutsch block projectors give per-block ratio 1/2") {
    NamedInstance inst = deutsch_phase();
    inst.problem.subspaces.push_back(projector(basis_vector(2, 0)));
    inst.problem.subspaces.push_back(projector(basis_vector(2, 1)));
    CHECK(validate(inst.problem).all_passed());

    // direct substitution with the bundled certificate
    const RefinedObjective ref = refined_objective(*inst.cert_pibar, inst.problem);
    REQUIRE(ref.per_subspace.size() == 2);
    for (const auto& st : ref.per_subspace) {
        CHECK(st.pibar_mass == doctest::Approx(0.25).epsilon(1e-10));
        CHECK(st.xi_mass == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(st.ratio == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(st.included);
    }
    CHECK(ref.refined_value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("a subspace with no xi mass but positive pibar mass is flagged") {
    const NamedInstance inst = deutsch_phase();
    ConversionProblem p = inst.problem;
    // xi lives entirely in the a=0 block for this variant
    p.xi = kron_vec(kron_vec(basis_vector(2, 0), basis_vector(2, 0)), basis_vector(4, 0));
    p.tau = p.xi;
    p.subspaces.push_back(projector(basis_vector(2, 1)));
    Matrix pibar = kron(projector(basis_vector(2, 1)), projector(basis_vector(2, 1)));
    const RefinedObjective ref = refined_objective(pibar, p);
    REQUIRE(ref.per_subspace.size() == 1);
    CHECK(ref.per_subspace[0].violation);
    CHECK(ref.any_violation);
}

TEST_CASE("zero-mass subspaces become hard constraints in the primal") {
    const NamedInstance inst = deutsch_phase();
    ConversionProblem p = inst.problem;
    p.xi = kron_vec(kron_vec(basis_vector(2, 0), basis_vector(2, 0)), basis_vector(4, 0));
    p.tau = p.xi;
    p.subspaces.push_back(projector(basis_vector(2, 1)));
    const SdpProblem primal = build_primal(p);
    // one extra equality beyond the dim_a^2 Hermitian-basis expansion
    CHECK(primal.eq_mats.size() == 4 + 1);
    CHECK(primal.eq_rhs.back() == 0.0);
}

TEST_CASE("adversary_bound rejects invalid problems") {
    auto rng = std::mt19937(45);
    Vector xi = random_matrix(rng, 16, 1).col(0);
    const ConversionProblem bad = make_problem({2, 2, 4}, 2.0 * identity(4), xi, xi);
    CHECK_THROWS_AS(adversary_bound(bad), std::invalid_argument);
}
