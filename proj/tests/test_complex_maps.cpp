#include "ere4/complex_maps.hpp"

#include <random>

#include "doctest.h"

using namespace ere4;

namespace {

Complex random_complex(std::mt19937& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("phi: direct substitutions") {
    Mat2 m = phi(Complex(1, 2));
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == -2.0);
    CHECK(m(1, 0) == 2.0);
    CHECK(m(1, 1) == 1.0);

    CHECK(max_abs(phi(Complex(1, 0)) - Mat2::Identity()) == 0.0);

    // phi(i)^2 = phi(-1) = -I
    const Mat2 ii = phi(Complex(0, 1)) * phi(Complex(0, 1));
    CHECK(max_abs(ii + Mat2::Identity()) == 0.0);
}

TEST_CASE("psi: direct substitutions") {
    Mat2 m = psi(Complex(1, 0));
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 1) == -1.0);
    CHECK(m(0, 1) == 0.0);

    m = psi(Complex(0, 1));
    CHECK(m(0, 0) == 0.0);
    CHECK(m(0, 1) == 1.0);
    CHECK(m(1, 0) == 1.0);
    CHECK(m(1, 1) == 0.0);

    const Mat2 sq = psi(Complex(3, 4)) * psi(Complex(3, 4));
    CHECK(max_abs(sq - 25.0 * Mat2::Identity()) <= 1e-14);
}

TEST_CASE("image membership predicates") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        const Complex z = random_complex(rng, 10.0);
        CHECK(is_phi_image(phi(z)));
        CHECK(is_psi_image(psi(z)));
        if (std::abs(z.imag()) > 1e-12) {
            CHECK(!is_psi_image(phi(z)));
            CHECK(!is_phi_image(psi(z)));
        }
    }
}

TEST_CASE("algebraic identities on random pairs") {
    std::mt19937 rng(20240201);
    for (int i = 0; i < 1000; ++i) {
        const Complex z = random_complex(rng, 10.0);
        const Complex w = random_complex(rng, 10.0);

        CHECK(max_abs(phi(z).transpose() - phi(std::conj(z))) == 0.0);
        CHECK(max_abs(psi(z).transpose() - psi(z)) == 0.0);

        CHECK(max_abs(phi(z) * phi(w) - phi(z * w)) <= 1e-12);
        CHECK(max_abs(psi(z) * psi(w) - phi(z * std::conj(w))) <= 1e-12);
        CHECK(max_abs(phi(z) * psi(w) - psi(z * w)) <= 1e-12);
        CHECK(max_abs(psi(z) * phi(w) - psi(z * std::conj(w))) <= 1e-12);
    }
}

TEST_CASE("block lift is multiplicative and respects adjoints") {
    std::mt19937 rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::Matrix4cd s, t;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                s(i, j) = random_complex(rng, 2.0);
                t(i, j) = random_complex(rng, 2.0);
            }
        CHECK(max_abs(phi_lift(s) * phi_lift(t) - phi_lift(s * t)) <= 1e-12);
        // lift(T)^T == lift(conj(T)^T)
        CHECK(max_abs(phi_lift(t).transpose() - phi_lift(t.adjoint())) == 0.0);
    }
}
