#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qadv/tensor.hpp"

#include <complex>
#include <random>

using namespace qadv;

namespace {

std::mt19937 rng_for(unsigned seed) { return std::mt19937(seed); }

Matrix random_matrix(std::mt19937& rng, Index rows, Index cols) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    }
    return m;
}

Matrix random_psd(std::mt19937& rng, Index n) {
    Matrix g = random_matrix(rng, n, n);
    return g * g.adjoint();
}

// independent oracle: trace by direct index summation
Complex trace_by_summation(const Matrix& m) {
    Complex t = 0.0;
    for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// independent oracle: partial trace over the second factor by an explicit
// double-index sum
Matrix ptrace_b_by_summation(const Matrix& rho, Index da, Index db) {
    Matrix out = Matrix::Zero(da, da);
    for (Index i = 0; i < da; ++i) {
        for (Index j = 0; j < da; ++j) {
            for (Index b = 0; b < db; ++b) out(i, j) += rho(i * db + b, j * db + b);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
    CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);

    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 1) = 1.0;
    expected(2, 2) = -1.0;
    expected(3, 3) = -1.0;
    CHECK(max_abs(kron(z, identity(2)) - expected) == 0.0);
}

TEST_CASE("kron trace multiplicativity against the index-summation oracle") {
    auto rng = rng_for(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix x = random_matrix(rng, 2, 2);
        const Matrix y = random_matrix(rng, 3, 3);
        const Complex lhs = trace_by_summation(kron(x, y));
        const Complex rhs = trace_by_summation(x) * trace_by_summation(y);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("partial trace of a product state") {
    auto rng = rng_for(12);
    const Matrix rho_a = random_psd(rng, 3);
    const Matrix sigma_b = random_psd(rng, 2);
    const Matrix reduced = trace_out_b(kron(rho_a, sigma_b), 3, 2);
    CHECK(max_abs(reduced - sigma_b.trace() * rho_a) < 1e-12);
}

TEST_CASE("partial trace of the Bell state is maximally mixed") {
    Vector bell = Vector::Zero(4);
    bell(0) = 1.0 / std::sqrt(2.0);
    bell(3) = 1.0 / std::sqrt(2.0);
    const Matrix reduced = trace_out_b(projector(bell), 2, 2);
    CHECK(max_abs(reduced - 0.5 * identity(2)) < 1e-15);
}

TEST_CASE("partial trace preserves trace on a random 12x12 bipartition") {
    auto rng = rng_for(13);
    const Matrix rho = random_psd(rng, 12);
    const Matrix reduced = partial_trace(rho, {3, 4}, {0});
    CHECK(std::abs(reduced.trace() - rho.trace()) < 1e-12);
    // cross-check the implementation against the explicit double-index sum
    CHECK(max_abs(reduced - ptrace_b_by_summation(rho, 3, 4)) < 1e-12);
}

TEST_CASE("partial trace over tripartite factors keeps the requested ones") {
    auto rng = rng_for(14);
    const Matrix a = random_psd(rng, 2);
    const Matrix b = random_psd(rng, 3);
    const Matrix c = random_psd(rng, 2);
    const Matrix full = kron(kron(a, b), c);
    const Matrix kept_ac = partial_trace(full, {2, 3, 2}, {0, 2});
    CHECK(max_abs(kept_ac - b.trace() * kron(a, c)) < 1e-10);
    const Matrix kept_b = partial_trace(full, {2, 3, 2}, {1});
    CHECK(max_abs(kept_b - a.trace() * c.trace() * b) < 1e-10);
}

TEST_CASE("partial trace rejects shape mismatch") {
    CHECK_THROWS_AS(partial_trace(identity(5), {2, 3}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(identity(6), {2, 3}, {2}), std::invalid_argument);
}

TEST_CASE("vector_rdm_keep_slowest matches the projector route") {
    auto rng = rng_for(15);
    Vector v = random_matrix(rng, 12, 1).col(0);
    const Matrix direct = vector_rdm_keep_slowest(v, 3, 4);
    const Matrix via_projector = partial_trace(projector(v), {3, 4}, {0});
    CHECK(max_abs(direct - via_projector) < 1e-12);
}

TEST_CASE("psd_check basics") {
    const auto zero = psd_check(Matrix::Zero(3, 3), 1e-9);
    CHECK(zero.is_psd);
    CHECK(zero.min_eigenvalue == 0.0);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1e-3;
    const auto neg = psd_check(d, 1e-9);
    CHECK_FALSE(neg.is_psd);
    CHECK(neg.min_eigenvalue == doctest::Approx(-1e-3));

    auto rng = rng_for(16);
    const Vector v = random_matrix(rng, 5, 1).col(0);
    CHECK(psd_check(projector(v), 1e-9).is_psd);

    CHECK_THROWS_AS(psd_check(Matrix::Zero(2, 3), 1e-9), std::invalid_argument);
}

TEST_CASE("subunitarity_check basics") {
    Matrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    const auto uni = subunitarity_check(h, 1e-10);
    CHECK(uni.ok);
    CHECK(uni.max_singular_value == doctest::Approx(1.0));

    const auto big = subunitarity_check(2.0 * identity(3), 1e-10);
    CHECK_FALSE(big.ok);
    CHECK(big.max_singular_value == doctest::Approx(2.0));

    Matrix damp = Matrix::Zero(2, 2);
    damp(0, 0) = 1.0;
    damp(1, 1) = std::sqrt(1.0 - 0.3);
    const auto ad = subunitarity_check(damp, 1e-10);
    CHECK(ad.ok);
    CHECK(ad.max_singular_value == doctest::Approx(1.0));
}

TEST_CASE("hermitian basis is orthonormal and Hermitian") {
    for (Index d : {2, 3, 4}) {
        const auto basis = hermitian_basis(d);
        REQUIRE(static_cast<Index>(basis.size()) == d * d);
        for (size_t i = 0; i < basis.size(); ++i) {
            CHECK(is_hermitian(basis[i], 1e-14));
            for (size_t j = 0; j <= i; ++j) {
                const double ip = (basis[i] * basis[j]).trace().real();
                CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("conjugated partial trace keeps positivity") {
    auto rng = rng_for(17);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix rho = random_psd(rng, 6);
        const Matrix l = random_matrix(rng, 6, 6);
        const Matrix mapped = trace_out_b(l * rho * l.adjoint(), 2, 3);
        CHECK(psd_check(mapped, 1e-9).is_psd);
    }
}

TEST_CASE("unitary operators preserve norms, subunitaries never increase them") {
    auto rng = rng_for(18);
    const Matrix g = random_matrix(rng, 4, 4);
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    Matrix damp = Matrix::Identity(4, 4);
    damp(3, 3) = 0.5;
    const Matrix sub = q * damp;
    for (int rep = 0; rep < 25; ++rep) {
        const Vector v = random_matrix(rng, 4, 1).col(0);
        CHECK((q * v).norm() == doctest::Approx(v.norm()).epsilon(1e-12));
        CHECK((sub * v).norm() <= v.norm() * (1.0 + 1e-12));
    }
}

TEST_CASE("apply_to_factor agrees with the explicit Kronecker operator") {
    auto rng = rng_for(19);
    const Matrix op = random_matrix(rng, 3, 3);
    const Vector v = random_matrix(rng, 2 * 3 * 4, 1).col(0);
    const Matrix full = kron(kron(identity(2), op), identity(4));
    CHECK((apply_to_factor(op, v, 2, 4) - full * v).norm() < 1e-12);
}
