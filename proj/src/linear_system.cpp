#include "ere4/linear_system.hpp"

#include <cmath>
#include <stdexcept>

#include "ere4/errors.hpp"

namespace ere4 {

Mat2 kepler_block(double theta, const OrbitParams& params) {
    return kepler_block_t<double>(theta, params.e);
}

std::array<Mat2, 3> essential_blocks(double theta, const OrbitParams& params, const BetaSet& betas) {
    const double e = params.e;
    return {essential_diag_block_t<double>(theta, e, 0.0, betas.beta11),
            essential_cross_block_t<double>(theta, e, betas.beta12),
            essential_diag_block_t<double>(theta, e, betas.beta2, betas.beta22)};
}

Eigen::Matrix4d assemble_kepler(double theta, const OrbitParams& params) {
    return assemble_one_mode_t<double>(kepler_block_t<double>(theta, params.e));
}

Eigen::Matrix<double, 8, 8> assemble_essential(double theta, const EssentialSystem& sys) {
    return assemble_essential_t<double>(theta, sys.params.e, sys.beta2, sys.beta11, sys.beta12,
                                        sys.beta22);
}

Eigen::Matrix<double, 12, 12> assemble_full(double theta, const EssentialSystem& sys) {
    return assemble_full_t<double>(theta, sys.params.e, sys.beta2, sys.beta11, sys.beta12,
                                   sys.beta22);
}

Eigen::Matrix4d assemble_decoupled(double theta, const EssentialSystem& sys, int which) {
    if (which == 1)
        return assemble_one_mode_t<double>(
            essential_diag_block_t<double>(theta, sys.params.e, 0.0, sys.beta11));
    if (which == 2)
        return assemble_one_mode_t<double>(
            essential_diag_block_t<double>(theta, sys.params.e, sys.beta2, sys.beta22));
    throw std::invalid_argument("decoupled mode index must be 1 or 2");
}

double quadratic_hamiltonian(double theta, const EssentialSystem& sys,
                             const Eigen::Matrix<double, 12, 1>& zeta) {
    const Eigen::Vector2d Z = zeta.segment<2>(0), W1 = zeta.segment<2>(2), W2 = zeta.segment<2>(4);
    const Eigen::Vector2d z = zeta.segment<2>(6), w1 = zeta.segment<2>(8), w2 = zeta.segment<2>(10);
    const Mat2 hzz = kepler_block(theta, sys.params);
    const BetaSet betas{0.0, sys.beta2, sys.beta11, sys.beta12, sys.beta22};
    const auto [h11, h12, h22] = essential_blocks(theta, sys.params, betas);
    const Mat2 j = j2();
    return 0.5 * Z.squaredNorm() + z.dot(j * Z) + 0.5 * z.dot(hzz * z) +
           0.5 * W1.squaredNorm() + w1.dot(j * W1) + 0.5 * w1.dot(h11 * w1) +
           0.5 * W2.squaredNorm() + w2.dot(j * W2) + 0.5 * w2.dot(h22 * w2) +
           w1.dot(h12 * w2);
}

TransformedPotential::TransformedPotential(const CentralConfiguration& cc,
                                           const ReductionBasis& basis)
    : masses_(cc.config.masses), a_(cc.config.positions), b_(basis.v3), c_(basis.v4) {}

double TransformedPotential::operator()(const Eigen::Vector2d& z, const Eigen::Vector2d& w1,
                                        const Eigen::Vector2d& w2) const {
    double u = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const Eigen::Vector2d sep = phi(a_[i] - a_[j]) * z + phi(b_[i] - b_[j]) * w1 +
                                        phi(Complex(c_[i] - c_[j], 0.0)) * w2;
            const double d = sep.norm();
            if (d < 1e-12) throw CollisionDetected("transformed separation underflow");
            u += masses_[i] * masses_[j] / d;
        }
    }
    return u;
}

Eigen::Matrix<double, 6, 6> TransformedPotential::hessian_fd(double sigma, double h) const {
    if (!(h >= 1e-7 && h <= 1e-3)) throw std::invalid_argument("fd step outside [1e-7, 1e-3]");

    auto eval = [&](const Eigen::Matrix<double, 6, 1>& u) {
        return (*this)(Eigen::Vector2d(u[0] + sigma, u[1]), u.segment<2>(2), u.segment<2>(4));
    };

    const Eigen::Matrix<double, 6, 1> zero = Eigen::Matrix<double, 6, 1>::Zero();
    const double f0 = eval(zero);
    Eigen::Matrix<double, 6, 6> hess;
    for (int i = 0; i < 6; ++i) {
        Eigen::Matrix<double, 6, 1> up = zero, dn = zero;
        up[i] += h;
        dn[i] -= h;
        hess(i, i) = (eval(up) - 2.0 * f0 + eval(dn)) / (h * h);
        for (int j = i + 1; j < 6; ++j) {
            Eigen::Matrix<double, 6, 1> pp = zero, pm = zero, mp = zero, mm = zero;
            pp[i] += h; pp[j] += h;
            pm[i] += h; pm[j] -= h;
            mp[i] -= h; mp[j] += h;
            mm[i] -= h; mm[j] -= h;
            hess(i, j) = (eval(pp) - eval(pm) - eval(mp) + eval(mm)) / (4.0 * h * h);
            hess(j, i) = hess(i, j);
        }
    }
    return hess;
}

Eigen::Matrix<double, 6, 6> analytic_hessian(double mu, double sigma, const BetaSet& betas) {
    const double s3 = mu / (sigma * sigma * sigma);
    Eigen::Matrix<double, 6, 6> h = Eigen::Matrix<double, 6, 6>::Zero();
    h.block<2, 2>(0, 0) = s3 * Eigen::Vector2d(2.0, -1.0).asDiagonal();
    h.block<2, 2>(2, 2) = 0.5 * s3 * (1.0 + betas.beta1) * Mat2::Identity() + s3 * psi(betas.beta11);
    h.block<2, 2>(4, 4) = 0.5 * s3 * (1.0 + betas.beta2) * Mat2::Identity() + s3 * psi(betas.beta22);
    h.block<2, 2>(2, 4) = s3 * psi(betas.beta12);
    h.block<2, 2>(4, 2) = s3 * psi(betas.beta12);
    return h;
}

}  // namespace ere4
