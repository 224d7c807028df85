#include "ere4/reduction_basis.hpp"

#include <cmath>

#include "doctest.h"
#include "ere4/errors.hpp"

using namespace ere4;

namespace {

const MassVector kEqual{0.25, 0.25, 0.25, 0.25};

CentralConfiguration solved_square() {
    return solve_cc(kEqual, family_seed(Family::square, kEqual), 1e-13);
}

CentralConfiguration solved_rhombus() {
    // two pairs of opposite equal masses on perpendicular diagonals; the
    // solved configuration has sum(m z^2) != 0, so k > 1 and l != 0
    const MassVector m{0.3, 0.2, 0.3, 0.2};
    const Configuration seed =
        normalize(m, {Complex(1.2, 0), Complex(0, 0.8), Complex(-1.2, 0), Complex(0, -0.8)});
    return solve_cc(m, seed, 1e-13);
}

CentralConfiguration solved_triangle_center() {
    const MassVector m{0.2, 0.2, 0.2, 0.4};
    return solve_cc(m, family_seed(Family::triangle_plus_center, m), 1e-13);
}

// betas recomputed from the raw pairwise definition, independent of the
// library path (kept as the test-side oracle)
BetaSet beta_oracle(const CentralConfiguration& cc, const ReductionBasis& b) {
    const auto& m = cc.config.masses;
    const auto& z = cc.config.positions;
    BetaSet out;
    out.beta2 = 1.0 - cc.D.trace() / cc.mu;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (j <= i) continue;
            const Complex az = z[i] - z[j];
            const Complex bb = std::conj(b.v3[i]) - std::conj(b.v3[j]);
            const double dc = b.v4[i] - b.v4[j];
            const double w = m[i] * m[j] / std::pow(std::abs(az), 5);
            out.beta11 += 1.5 / cc.mu * w * az * az * bb * bb;
            out.beta12 += 1.5 / cc.mu * w * az * az * bb * dc;
            out.beta22 += 1.5 / cc.mu * w * az * az * dc * dc;
        }
    return out;
}

Eigen::Matrix4cd gram(const CentralConfiguration& cc, const ReductionBasis& b) {
    Eigen::Matrix4cd t;
    for (int i = 0; i < 4; ++i) {
        t(i, 0) = b.v1[i];
        t(i, 1) = b.v2[i];
        t(i, 2) = b.v3[i];
        t(i, 3) = b.v4[i];
    }
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) g += cc.config.masses[i] * t.row(i).adjoint() * t.row(i);
    return g;
}

}  // namespace

TEST_CASE("build_kl: square has vanishing mass quadratic, so (k,l) = (1,0)") {
    const auto [k, l] = build_kl(solved_square());
    CHECK(k == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(l) <= 1e-12);
}

TEST_CASE("build_kl: rhombus with unequal pairs gives k > 1 and l != 0") {
    const CentralConfiguration cc = solved_rhombus();
    const auto [k, l] = build_kl(cc);
    CHECK(k > 1.0 + 1e-6);
    CHECK(std::abs(l) > 1e-6);

    // mass-orthonormality of the resulting v3 against v2 and itself
    const ReductionBasis b = build_basis(cc);
    const Eigen::Matrix4cd g = gram(cc, b);
    CHECK(std::abs(g(1, 2)) <= 1e-12);
    CHECK(std::abs(g(2, 2) - 1.0) <= 1e-12);
}

TEST_CASE("build_kl: collinear configuration is rejected") {
    const CentralConfiguration cc = solve_cc(kEqual, family_seed(Family::collinear, kEqual), 1e-12);
    CHECK(cc.collinear);
    CHECK_THROWS_AS(build_kl(cc), CollinearDegeneracy);
    CHECK_THROWS_AS(build_basis(cc), CollinearDegeneracy);
}

TEST_CASE("build_basis: square cofactor vector and its normalization") {
    const CentralConfiguration cc = solved_square();
    const ReductionBasis b = build_basis(cc);
    CHECK(b.rho == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
    double sum_mc2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(b.v4[i]) == doctest::Approx(1.0).epsilon(1e-11));
        sum_mc2 += cc.config.masses[i] * b.v4[i] * b.v4[i];
    }
    CHECK(sum_mc2 == doctest::Approx(1.0).epsilon(1e-11));
    // alternating sign pattern around the square
    CHECK(b.v4[0] * b.v4[1] < 0.0);
    CHECK(b.v4[1] * b.v4[2] < 0.0);
    CHECK(b.v4[2] * b.v4[3] < 0.0);
}

TEST_CASE("build_basis: A^T M A = I and the basis is an eigenbasis of D") {
    for (const CentralConfiguration& cc :
         {solved_square(), solved_rhombus(), solved_triangle_center()}) {
        const ReductionBasis b = build_basis(cc);
        CHECK(atma_defect(cc, b) <= 1e-10);
        CHECK(unitarity_defect(cc, b) <= 1e-10);

        const double lam4 = cc.D.trace() - cc.mu;
        CHECK((cc.D * b.v4 - lam4 * b.v4).cwiseAbs().maxCoeff() <= 1e-9);

        Eigen::Vector4cd v3;
        for (int i = 0; i < 4; ++i) v3[i] = b.v3[i];
        CHECK((cc.D.cast<Complex>() * v3).cwiseAbs().maxCoeff() <= 1e-9);  // lambda_3 = 0
    }
}

TEST_CASE("compute_betas: square values against the frozen oracle") {
    const CentralConfiguration cc = solved_square();
    const ReductionBasis b = build_basis(cc);
    const BetaSet betas = compute_betas(cc, b);

    const double sqrt2 = std::sqrt(2.0);
    const double mu_closed = (1.0 + 2.0 * sqrt2) / 16.0;
    CHECK(betas.beta1 == 0.0);
    CHECK(betas.beta2 == doctest::Approx(1.0 - 0.125 / mu_closed).epsilon(1e-11));
    // closed forms for the square: beta11 = (3/2)(1-2*sqrt2)/(1+2*sqrt2), rest vanish
    CHECK(betas.beta11.real() ==
          doctest::Approx(1.5 * (1.0 - 2.0 * sqrt2) / (1.0 + 2.0 * sqrt2)).epsilon(1e-10));
    CHECK(std::abs(betas.beta11.imag()) <= 1e-10);
    CHECK(std::abs(betas.beta12) <= 1e-10);
    CHECK(std::abs(betas.beta22) <= 1e-10);
}

TEST_CASE("compute_betas: matches the raw pairwise oracle on all test configurations") {
    for (const CentralConfiguration& cc :
         {solved_square(), solved_rhombus(), solved_triangle_center()}) {
        const ReductionBasis b = build_basis(cc);
        const BetaSet got = compute_betas(cc, b);
        const BetaSet want = beta_oracle(cc, b);
        CHECK(std::abs(got.beta11 - want.beta11) <= 1e-13);
        CHECK(std::abs(got.beta12 - want.beta12) <= 1e-13);
        CHECK(std::abs(got.beta22 - want.beta22) <= 1e-13);
        CHECK(got.beta2 == doctest::Approx(want.beta2).epsilon(1e-13));
    }
}

TEST_CASE("compute_betas: lambda_4 route agrees with the trace route") {
    const CentralConfiguration cc = solved_rhombus();
    const ReductionBasis b = build_basis(cc);
    const BetaSet betas = compute_betas(cc, b);
    // lambda_4 from the Rayleigh quotient of the mass inner product
    Eigen::Vector4d mv = cc.D * b.v4;
    double lam4 = 0.0;
    for (int i = 0; i < 4; ++i) lam4 += cc.config.masses[i] * b.v4[i] * mv[i];
    CHECK(betas.beta2 == doctest::Approx(-lam4 / cc.mu).epsilon(1e-10));
}

TEST_CASE("compute_betas: tampered basis trips the eigenvector identity check") {
    const CentralConfiguration cc = solved_square();
    ReductionBasis b = build_basis(cc);
    b.v3[0] += Complex(0.05, 0.0);  // no longer an eigenvector of D
    CHECK_THROWS_AS(compute_betas(cc, b), FGIdentityViolation);
}

TEST_CASE("eigenvalues of D sum to its trace through the basis") {
    const CentralConfiguration cc = solved_triangle_center();
    const double lam4 = cc.D.trace() - cc.mu;
    CHECK(cc.mu + 0.0 + 0.0 + lam4 == doctest::Approx(cc.D.trace()).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cc.dtilde());
    CHECK(es.eigenvalues().sum() == doctest::Approx(cc.D.trace()).epsilon(1e-10));
}

TEST_CASE("rotation of the configuration leaves beta2 and the |beta| moduli unchanged") {
    const CentralConfiguration base = solved_rhombus();
    const ReductionBasis b0 = build_basis(base);
    const BetaSet beta0 = compute_betas(base, b0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es0(base.dtilde());

    for (double angle : {0.3, 1.1, 2.9, -0.7}) {
        PositionVector z;
        for (int i = 0; i < 4; ++i) z[i] = std::polar(1.0, angle) * base.config.positions[i];
        const CentralConfiguration cc = certify_cc(Configuration{base.config.masses, z}, 1e-11);
        const ReductionBasis b = build_basis(cc);
        const BetaSet betas = compute_betas(cc, b);

        CHECK(betas.beta2 == doctest::Approx(beta0.beta2).epsilon(1e-10));
        CHECK(std::abs(betas.beta11) == doctest::Approx(std::abs(beta0.beta11)).epsilon(1e-10));
        CHECK(std::abs(betas.beta12) - std::abs(beta0.beta12) <= 1e-10);
        CHECK(std::abs(betas.beta22) == doctest::Approx(std::abs(beta0.beta22)).epsilon(1e-10));

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cc.dtilde());
        CHECK((es.eigenvalues() - es0.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("relabeling bodies preserves the D spectrum, beta2, and |beta11|") {
    const CentralConfiguration base = solved_rhombus();
    const BetaSet beta0 = compute_betas(base, build_basis(base));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es0(base.dtilde());

    const std::array<int, 4> perm{2, 0, 3, 1};
    MassVector m;
    PositionVector z;
    for (int i = 0; i < 4; ++i) {
        m[i] = base.config.masses[perm[i]];
        z[i] = base.config.positions[perm[i]];
    }
    const CentralConfiguration cc = certify_cc(Configuration{m, z}, 1e-11);
    const BetaSet betas = compute_betas(cc, build_basis(cc));

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cc.dtilde());
    CHECK((es.eigenvalues() - es0.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(betas.beta2 == doctest::Approx(beta0.beta2).epsilon(1e-10));
    CHECK(std::abs(betas.beta11) == doctest::Approx(std::abs(beta0.beta11)).epsilon(1e-10));
}

TEST_CASE("beta1 audit: lambda_3 Rayleigh quotient vanishes") {
    for (const CentralConfiguration& cc : {solved_square(), solved_rhombus()}) {
        const ReductionBasis b = build_basis(cc);
        Eigen::Vector4cd v3, dv3;
        for (int i = 0; i < 4; ++i) v3[i] = b.v3[i];
        dv3 = cc.D.cast<Complex>() * v3;
        Complex lam3{0, 0};
        for (int i = 0; i < 4; ++i) lam3 += cc.config.masses[i] * std::conj(v3[i]) * dv3[i];
        CHECK(std::abs(-lam3 / cc.mu) <= 1e-12);
    }
}
