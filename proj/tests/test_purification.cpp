#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qadv/purification.hpp"
#include "qadv/tensor.hpp"

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

Matrix random_psd_rank(std::mt19937& rng, Index n, Index rank) {
    const Matrix g = random_matrix(rng, n, rank);
    return g * g.adjoint();
}

Matrix random_unitary(std::mt19937& rng, Index n) {
    return Eigen::HouseholderQR<Matrix>(random_matrix(rng, n, n)).householderQ();
}

Matrix reduced(const Vector& v, Index sys, Index env) {
    return vector_rdm_keep_slowest(v, sys, env);
}

}  // namespace

TEST_CASE("purifying a pure state gives the state on the first env direction") {
    auto rng = std::mt19937(21);
    Vector psi = random_matrix(rng, 4, 1).col(0);
    psi /= psi.norm();
    const Vector out = purify(projector(psi), 3);
    // up to global phase: out = psi (x) e_0
    Vector expected = kron_vec(psi, basis_vector(3, 0));
    const Complex overlap = expected.dot(out);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
    CHECK(max_abs(reduced(out, 4, 3) - projector(psi)) < 1e-10);
}

TEST_CASE("purifying the maximally mixed state") {
    const Vector out = purify(0.5 * identity(2), 2);
    CHECK(out.norm() == doctest::Approx(1.0));
    CHECK(max_abs(reduced(out, 2, 2) - 0.5 * identity(2)) < 1e-10);
}

TEST_CASE("purify/partial-trace round trip on a subnormalized PSD operator") {
    auto rng = std::mt19937(22);
    Matrix rho = random_psd_rank(rng, 4, 4);
    rho *= 0.7 / rho.trace().real();
    const Vector out = purify(rho, 4);
    CHECK(max_abs(reduced(out, 4, 4) - rho) < 1e-10);
}

TEST_CASE("purify rejects negative operators and too-small environments") {
    Matrix bad = identity(2);
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(purify(bad, 2), std::invalid_argument);
    CHECK_THROWS_AS(purify(identity(3), 2), std::invalid_argument);
}

TEST_CASE("purify of the zero operator is the zero vector") {
    const Vector out = purify(Matrix::Zero(3, 3), 2);
    CHECK(out.size() == 6);
    CHECK(out.norm() == 0.0);
}

TEST_CASE("connecting a purification to itself satisfies the contract exactly") {
    auto rng = std::mt19937(23);
    const Matrix rho = random_psd_rank(rng, 3, 2);
    const Vector phi = purify(rho, 4);
    const Matrix w = connect_purifications(phi, phi, 3, 4);
    CHECK(max_abs(w.adjoint() * w - identity(4)) < 1e-10);
    CHECK((apply_to_factor(w, phi, 3, Index{1}) - phi).norm() < 1e-10 * std::max(1.0, phi.norm()));
}

TEST_CASE("connecting product purifications relabels the environment") {
    auto rng = std::mt19937(24);
    Vector psi = random_matrix(rng, 3, 1).col(0);
    psi /= psi.norm();
    const Vector phi = kron_vec(psi, basis_vector(2, 0));
    const Vector chi = kron_vec(psi, basis_vector(2, 1));
    const Matrix w = connect_purifications(phi, chi, 3, 2);
    CHECK(max_abs(w.adjoint() * w - identity(2)) < 1e-10);
    CHECK((apply_to_factor(w, phi, 3, Index{1}) - chi).norm() < 1e-10);
}

TEST_CASE("two independent purifications of one rank-3 operator connect to 1e-10") {
    auto rng = std::mt19937(25);
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix rho = random_psd_rank(rng, 4, 3);
        const Vector phi = purify(rho, 5);
        // shuffle the environment with a random unitary to get a second purification
        const Matrix shuffle = random_unitary(rng, 5);
        const Vector psi = apply_to_factor(shuffle, phi, 4, Index{1});
        const Matrix w = connect_purifications(phi, psi, 4, 5);
        CHECK(max_abs(w.adjoint() * w - identity(5)) < 1e-10);
        CHECK((apply_to_factor(w, phi, 4, Index{1}) - psi).norm() < 1e-10 * std::max(1.0, phi.norm()));
    }
}

TEST_CASE("connect_purifications rejects mismatched reduced operators") {
    auto rng = std::mt19937(26);
    const Vector phi = purify(random_psd_rank(rng, 3, 2), 3);
    const Vector psi = purify(random_psd_rank(rng, 3, 2), 3);
    CHECK_THROWS_AS(connect_purifications(phi, psi, 3, 3), std::invalid_argument);
}

TEST_CASE("property: 200 random purify round trips stay within 1e-10") {
    auto rng = std::mt19937(27);
    std::uniform_int_distribution<int> dim_dist(2, 8);
    for (int rep = 0; rep < 200; ++rep) {
        const Index n = dim_dist(rng);
        std::uniform_int_distribution<int> rank_dist(1, static_cast<int>(n));
        const Index rank = rank_dist(rng);
        Matrix rho = random_psd_rank(rng, n, rank);
        rho /= std::max(1.0, rho.trace().real());
        const Vector out = purify(rho, n);
        CHECK(max_abs(reduced(out, n, n) - rho) < 1e-10);
    }
}

TEST_CASE("property: 200 random purification connections satisfy contract and unitarity") {
    auto rng = std::mt19937(28);
    std::uniform_int_distribution<int> dim_dist(2, 6);
    for (int rep = 0; rep < 200; ++rep) {
        const Index n = dim_dist(rng);
        std::uniform_int_distribution<int> rank_dist(1, static_cast<int>(n));
        const Matrix rho = random_psd_rank(rng, n, rank_dist(rng));
        const Index env = n + 1;
        const Vector phi = purify(rho, env);
        const Matrix shuffle = random_unitary(rng, env);
        const Vector psi = apply_to_factor(shuffle, phi, n, Index{1});
        const Matrix w = connect_purifications(phi, psi, n, env);
        CHECK(max_abs(w.adjoint() * w - identity(env)) < 1e-10);
        CHECK((apply_to_factor(w, phi, n, Index{1}) - psi).norm() <
              1e-10 * std::max(1.0, phi.norm()));
    }
}
