#include "ere4/reduction_basis.hpp"

#include <cmath>

#include "ere4/errors.hpp"

namespace ere4 {

namespace {

constexpr double kCollinearGuard = 1e-10;
constexpr double kFgTol = 1e-8;

Complex mass_quadratic(const CentralConfiguration& cc) {
    // sum m_i conj(z_i)^2; modulus 1 exactly for collinear configurations
    Complex s{0.0, 0.0};
    for (int i = 0; i < 4; ++i)
        s += cc.config.masses[i] * std::conj(cc.config.positions[i]) * std::conj(cc.config.positions[i]);
    return s;
}

Eigen::Matrix<double, 8, 8> mass_matrix(const MassVector& m) {
    Eigen::Matrix<double, 8, 8> out = Eigen::Matrix<double, 8, 8>::Zero();
    for (int i = 0; i < 4; ++i) {
        out(2 * i, 2 * i) = m[i];
        out(2 * i + 1, 2 * i + 1) = m[i];
    }
    return out;
}

Eigen::Matrix4cd basis_columns(const ReductionBasis& b) {
    Eigen::Matrix4cd t;
    for (int i = 0; i < 4; ++i) {
        t(i, 0) = b.v1[i];
        t(i, 1) = b.v2[i];
        t(i, 2) = b.v3[i];
        t(i, 3) = b.v4[i];
    }
    return t;
}

}  // namespace

std::pair<double, Complex> build_kl(const CentralConfiguration& cc) {
    if (cc.collinear) throw CollinearDegeneracy("basis requires a non-collinear central configuration");
    const Complex s = mass_quadratic(cc);
    const double mod = std::abs(s);
    if (mod >= 1.0 - kCollinearGuard)
        throw CollinearDegeneracy("|sum m conj(z)^2| too close to 1");
    if (mod <= 1e-12) return {1.0, Complex(0.0, 0.0)};
    const double k = 1.0 / std::sqrt(1.0 - mod * mod);
    return {k, -s * k};
}

ReductionBasis build_basis(const CentralConfiguration& cc) {
    const auto [k, l] = build_kl(cc);
    const auto& m = cc.config.masses;
    const auto& z = cc.config.positions;

    ReductionBasis b;
    b.k = k;
    b.l = l;
    b.v1 = Eigen::Vector4d::Ones();
    for (int i = 0; i < 4; ++i) {
        b.v2[i] = z[i];
        b.v3[i] = k * std::conj(z[i]) + l * z[i];
    }

    b.rho = std::sqrt(m[0] * m[1] * m[2] * m[3]);
    const double a234 = signed_area(z[1], z[2], z[3]);
    const double a134 = signed_area(z[0], z[2], z[3]);
    const double a124 = signed_area(z[0], z[1], z[3]);
    const double a123 = signed_area(z[0], z[1], z[2]);
    b.v4[0] = 4.0 * k * b.rho / m[0] * a234;
    b.v4[1] = -4.0 * k * b.rho / m[1] * a134;
    b.v4[2] = 4.0 * k * b.rho / m[2] * a124;
    b.v4[3] = -4.0 * k * b.rho / m[3] * a123;

    b.A = phi_lift(basis_columns(b));
    return b;
}

double unitarity_defect(const CentralConfiguration& cc, const ReductionBasis& basis) {
    const Eigen::Matrix4cd t = basis_columns(basis);
    Eigen::Matrix4cd gram = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) gram += cc.config.masses[i] * t.row(i).adjoint() * t.row(i);
    return (gram - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

double atma_defect(const CentralConfiguration& cc, const ReductionBasis& basis) {
    const auto m8 = mass_matrix(cc.config.masses);
    const Eigen::Matrix<double, 8, 8> g = basis.A.transpose() * m8 * basis.A;
    return (g - Eigen::Matrix<double, 8, 8>::Identity()).cwiseAbs().maxCoeff();
}

double fg_identity_defect(const CentralConfiguration& cc, const ReductionBasis& basis,
                          const BetaSet& betas) {
    const auto& m = cc.config.masses;
    const auto& z = cc.config.positions;
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        Complex f{0.0, 0.0};
        double g = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            const double d = std::abs(z[i] - z[j]);
            const double w = m[i] * m[j] / (d * d * d);
            f += w * (basis.v3[i] - basis.v3[j]);
            g += w * (basis.v4[i] - basis.v4[j]);
        }
        worst = std::max(worst, std::abs(f - cc.mu * (1.0 + betas.beta1) * m[i] * basis.v3[i]));
        worst = std::max(worst, std::abs(g - cc.mu * (1.0 + betas.beta2) * m[i] * basis.v4[i]));
    }
    return worst;
}

BetaSet compute_betas(const CentralConfiguration& cc, const ReductionBasis& basis) {
    const auto& m = cc.config.masses;
    const auto& z = cc.config.positions;

    BetaSet out;
    out.beta1 = 0.0;
    out.beta2 = 1.0 - cc.D.trace() / cc.mu;

    Complex s11{0, 0}, s12{0, 0}, s22{0, 0};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const Complex dz = z[i] - z[j];
            const Complex db = std::conj(basis.v3[i] - basis.v3[j]);
            const Complex dc = Complex(basis.v4[i] - basis.v4[j], 0.0);
            const double d = std::abs(dz);
            const double w = m[i] * m[j] / (d * d * d * d * d);
            s11 += w * dz * dz * db * db;
            s12 += w * dz * dz * db * dc;
            s22 += w * dz * dz * dc * dc;
        }
    }
    const double c = 1.5 / cc.mu;
    out.beta11 = c * s11;
    out.beta12 = c * s12;
    out.beta22 = c * s22;

    const double fg = fg_identity_defect(cc, basis, out);
    if (fg > kFgTol)
        throw FGIdentityViolation("eigenvector identity defect " + std::to_string(fg) +
                                  " exceeds tolerance; basis or input is not consistent");
    return out;
}

}  // namespace ere4
