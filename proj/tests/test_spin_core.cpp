#include "doctest.h"

#include <cmath>

#include "spinframe/ref.hpp"
#include "spinframe/signature.hpp"
#include "spinframe/spin_core.hpp"
#include "spinframe/symmetry.hpp"

using namespace spinframe;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

SpinState plus_state() {
    Vec v(2);
    v << kInvSqrt2, kInvSqrt2;
    return SpinState(1, v);
}

SpinState bell_state() {
    Vec v = Vec::Zero(4);
    v[0] = kInvSqrt2;
    v[3] = kInvSqrt2;
    return SpinState(2, v);
}

double max_abs_diff(const Mat& a, const Mat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("basis_state places the unit amplitude by bit convention") {
    CHECK(basis_state({0}).amplitudes()[0] == cplx(1.0));
    CHECK(basis_state({0}).amplitudes()[1] == cplx(0.0));

    auto s01 = basis_state({0, 1});
    CHECK(s01.amplitudes()[1] == cplx(1.0));
    CHECK(s01.dim() == 4);

    auto s111 = basis_state({1, 1, 1});
    CHECK(s111.amplitudes()[7] == cplx(1.0));
    CHECK(s111.dim() == 8);

    CHECK_THROWS_AS(basis_state({}), invalid_input);
    CHECK_THROWS_AS(basis_state({0, 2}), invalid_input);
}

TEST_CASE("tensor is the Kronecker product with the first factor most significant") {
    auto t = tensor(basis_state({0}), basis_state({1}));
    CHECK(t.approx_equal(basis_state({0, 1})));

    auto t2 = tensor(plus_state(), basis_state({0}));
    CHECK(std::abs(t2.amplitudes()[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(t2.amplitudes()[1]) < 1e-15);
    CHECK(std::abs(t2.amplitudes()[2] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(t2.amplitudes()[3]) < 1e-15);
}

TEST_CASE("density builds a rank-1 projector") {
    auto d0 = density(basis_state({0}));
    CHECK(d0.entries()(0, 0) == cplx(1.0));
    CHECK(d0.entries()(1, 1) == cplx(0.0));

    auto dp = density(plus_state());
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(dp.entries()(i, j) - cplx(0.5)) < 1e-15);
        }
    }

    // Purity Tr[rho^2] = 1 on a random input.
    auto rho = density(haar_random_state(3, 5));
    CHECK(std::abs((rho.entries() * rho.entries()).trace().real() - 1.0) < 1e-12);
}

TEST_CASE("reduce: Bell marginal is maximally mixed") {
    auto rho = reduce(bell_state(), SubsystemSpec({1}));
    CHECK(std::abs(rho.entries()(0, 0) - cplx(0.5)) < 1e-14);
    CHECK(std::abs(rho.entries()(1, 1) - cplx(0.5)) < 1e-14);
    CHECK(std::abs(rho.entries()(0, 1)) < 1e-14);
}

TEST_CASE("reduce respects tuple order on product states") {
    auto s = tensor(basis_state({0}), plus_state());
    auto swapped = reduce(s, SubsystemSpec({2, 1}));
    auto expected = density(tensor(plus_state(), basis_state({0})));
    CHECK(max_abs_diff(swapped.entries(), expected.entries()) < 1e-14);
}

TEST_CASE("reduce of 0.6|0000> + 0.8|1110> to spins (1,4)") {
    Vec v = Vec::Zero(16);
    v[0] = 0.6;
    v[14] = 0.8;
    SpinState s(4, v);
    auto rho = reduce(s, SubsystemSpec({1, 4}));
    // Frozen from the independent full-density-matrix oracle.
    CHECK(std::abs(rho.entries()(0, 0).real() - 0.36) < 1e-14);
    CHECK(std::abs(rho.entries()(2, 2).real() - 0.64) < 1e-14);
    CHECK(std::abs(rho.entries()(1, 1)) < 1e-14);
    CHECK(std::abs(rho.entries()(3, 3)) < 1e-14);
    CHECK(std::abs(rho.entries()(0, 2)) < 1e-14);

    auto oracle = ref::reduce_via_full_density(s, SubsystemSpec({1, 4}));
    CHECK(max_abs_diff(rho.entries(), oracle.entries()) < 1e-14);
}

TEST_CASE("reduce agrees with the serial full-density oracle on random inputs") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto s = haar_random_state(5, seed);
        for (const auto& indices :
             {std::vector<int>{2}, {5, 1}, {3, 1, 4}, {4, 2, 5, 1}}) {
            SubsystemSpec spec(indices);
            CHECK(max_abs_diff(reduce(s, spec).entries(),
                               ref::reduce_via_full_density(s, spec).entries()) < 1e-12);
        }
    }
}

TEST_CASE("reduce errors on bad specs") {
    CHECK_THROWS_AS(reduce(bell_state(), SubsystemSpec({3})), invalid_input);
    CHECK_THROWS_AS(SubsystemSpec({1, 1}), invalid_input);
    CHECK_THROWS_AS(SubsystemSpec({}), invalid_input);
    CHECK_THROWS_AS(SubsystemSpec({0}), invalid_input);
}

TEST_CASE("partial-trace consistency: X union Y then X equals direct X") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto s = haar_random_state(5, 100 + seed);
        auto via_xy = reduce(reduce(s, SubsystemSpec({2, 4, 5})), SubsystemSpec({1, 2}));
        auto direct = reduce(s, SubsystemSpec({2, 4}));
        CHECK(max_abs_diff(via_xy.entries(), direct.entries()) < 1e-12);
    }
}

TEST_CASE("reduce traces to one and honors tuple order via SWAP") {
    Mat swap = Mat::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto s = haar_random_state(4, 200 + seed);
        auto rho_ij = reduce(s, SubsystemSpec({2, 3}));
        auto rho_ji = reduce(s, SubsystemSpec({3, 2}));
        CHECK(std::abs(rho_ij.entries().trace().real() - 1.0) < 1e-12);
        CHECK(max_abs_diff(rho_ij.entries(), swap * rho_ji.entries() * swap) < 1e-12);
    }
}

TEST_CASE("apply_unitary") {
    auto u = haar_random_unitary(2, 7);
    auto s = haar_random_state(2, 8);

    SUBCASE("identity leaves the state unchanged") {
        GlobalUnitary id(2, Mat::Identity(4, 4));
        CHECK(apply_unitary(s, id).approx_equal(s));
    }
    SUBCASE("sigma_x flips a single spin") {
        Mat x(2, 2);
        x << 0, 1, 1, 0;
        CHECK(apply_unitary(basis_state({0}), GlobalUnitary(1, x))
                  .approx_equal(basis_state({1})));
    }
    SUBCASE("norm is preserved for Haar-random unitaries") {
        CHECK(std::abs(apply_unitary(s, u).amplitudes().norm() - 1.0) < 1e-12);
    }
    SUBCASE("dimension mismatch raises") {
        CHECK_THROWS_AS(apply_unitary(basis_state({0}), u), dimension_mismatch);
    }
    SUBCASE("density of the transformed state is the conjugated density") {
        Mat lhs = density(apply_unitary(s, u)).entries();
        Mat rhs = u.entries() * density(s).entries() * u.entries().adjoint();
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("constructor invariants") {
    Vec bad(3);
    bad << 1, 0, 0;
    CHECK_THROWS_AS(SpinState(2, bad), invalid_input);

    Vec unnormalized(2);
    unnormalized << 0.5, 0.0;
    CHECK_THROWS_AS(SpinState(1, unnormalized), invalid_input);

    Mat not_herm(2, 2);
    not_herm << 1, 1, 0, 0;
    CHECK_THROWS_AS(DensityMatrix(1, not_herm), invalid_input);

    Mat neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(DensityMatrix(1, neg), invalid_input);
}
