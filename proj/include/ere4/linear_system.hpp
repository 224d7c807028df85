#ifndef ERE4_LINEAR_SYSTEM_HPP
#define ERE4_LINEAR_SYSTEM_HPP

#include <array>

#include "ere4/reduction_basis.hpp"

namespace ere4 {

/// Keplerian orbit parameters of the underlying homographic motion.
/// r(theta) = p/(1 + e cos theta); p is a pure gauge (only r/p enters the
/// reduced system), default 1.
struct OrbitParams {
    double e = 0.0;
    double p = 1.0;
};

/// Everything that determines the 8-dim essential system of the linearization.
struct EssentialSystem {
    OrbitParams params;
    double beta2 = 0.0;
    Complex beta11{0, 0};
    Complex beta12{0, 0};
    Complex beta22{0, 0};
};

inline EssentialSystem make_essential(const OrbitParams& params, const BetaSet& betas) {
    return EssentialSystem{params, betas.beta2, betas.beta11, betas.beta12, betas.beta22};
}

// ---------------------------------------------------------------------------
// Coefficient blocks, templated on the scalar so the Floquet integrator can
// evaluate them in extended precision.  Variable order throughout:
// momenta first, then conjugate positions; 2x2 blocks per planar coordinate.
// ---------------------------------------------------------------------------

template <class T>
T radius_over_p(T theta, T e) {
    return T(1) / (T(1) + e * std::cos(theta));
}

/// Position-position block of the Kepler part: diag(-(2-e cos)/(1+e cos), 1).
template <class T>
Eigen::Matrix<T, 2, 2> kepler_block_t(T theta, T e) {
    const T ec = e * std::cos(theta);
    Eigen::Matrix<T, 2, 2> h = Eigen::Matrix<T, 2, 2>::Zero();
    h(0, 0) = -(T(2) - ec) / (T(1) + ec);
    h(1, 1) = T(1);
    return h;
}

template <class T>
Eigen::Matrix<T, 2, 2> essential_diag_block_t(T theta, T e, T beta_i, std::complex<T> beta_ii) {
    const T rp = radius_over_p(theta, e);
    Eigen::Matrix<T, 2, 2> h = Eigen::Matrix<T, 2, 2>::Identity();
    h -= rp * ((T(3) + beta_i) / T(2) * Eigen::Matrix<T, 2, 2>::Identity() + psi_t<T>(beta_ii));
    return h;
}

template <class T>
Eigen::Matrix<T, 2, 2> essential_cross_block_t(T theta, T e, std::complex<T> beta_12) {
    return -radius_over_p(theta, e) * psi_t<T>(beta_12);
}

template <class T>
Eigen::Matrix<T, 2, 2> j2_t() {
    Eigen::Matrix<T, 2, 2> j;
    j << T(0), T(-1), T(1), T(0);
    return j;
}

/// 4x4 one-mode system [[I, -J], [J, H]]; H is the Kepler block or one of the
/// essential diagonal blocks.
template <class T>
Eigen::Matrix<T, 4, 4> assemble_one_mode_t(const Eigen::Matrix<T, 2, 2>& h) {
    Eigen::Matrix<T, 4, 4> b = Eigen::Matrix<T, 4, 4>::Zero();
    b.template block<2, 2>(0, 0) = Eigen::Matrix<T, 2, 2>::Identity();
    b.template block<2, 2>(0, 2) = -j2_t<T>();
    b.template block<2, 2>(2, 0) = j2_t<T>();
    b.template block<2, 2>(2, 2) = h;
    return b;
}

/// 8x8 essential system in coordinates (W1, W2, w1, w2).
template <class T>
Eigen::Matrix<T, 8, 8> assemble_essential_t(T theta, T e, T beta2, std::complex<T> b11,
                                            std::complex<T> b12, std::complex<T> b22) {
    Eigen::Matrix<T, 8, 8> b = Eigen::Matrix<T, 8, 8>::Zero();
    b.template block<4, 4>(0, 0) = Eigen::Matrix<T, 4, 4>::Identity();
    b.template block<2, 2>(0, 4) = -j2_t<T>();
    b.template block<2, 2>(2, 6) = -j2_t<T>();
    b.template block<2, 2>(4, 0) = j2_t<T>();
    b.template block<2, 2>(6, 2) = j2_t<T>();
    b.template block<2, 2>(4, 4) = essential_diag_block_t<T>(theta, e, T(0), b11);
    b.template block<2, 2>(6, 6) = essential_diag_block_t<T>(theta, e, beta2, b22);
    const auto cross = essential_cross_block_t<T>(theta, e, b12);
    b.template block<2, 2>(4, 6) = cross;
    b.template block<2, 2>(6, 4) = cross;
    return b;
}

/// Full 12x12 linearization in coordinates (Z, W1, W2, z, w1, w2).  The z-w
/// coupling blocks vanish identically, which is what splits the system into
/// the Kepler part and the essential part.
template <class T>
Eigen::Matrix<T, 12, 12> assemble_full_t(T theta, T e, T beta2, std::complex<T> b11,
                                         std::complex<T> b12, std::complex<T> b22) {
    Eigen::Matrix<T, 12, 12> b = Eigen::Matrix<T, 12, 12>::Zero();
    b.template block<6, 6>(0, 0) = Eigen::Matrix<T, 6, 6>::Identity();
    for (int k = 0; k < 3; ++k) {
        b.template block<2, 2>(2 * k, 6 + 2 * k) = -j2_t<T>();
        b.template block<2, 2>(6 + 2 * k, 2 * k) = j2_t<T>();
    }
    b.template block<2, 2>(6, 6) = kepler_block_t<T>(theta, e);
    b.template block<2, 2>(8, 8) = essential_diag_block_t<T>(theta, e, T(0), b11);
    b.template block<2, 2>(10, 10) = essential_diag_block_t<T>(theta, e, beta2, b22);
    const auto cross = essential_cross_block_t<T>(theta, e, b12);
    b.template block<2, 2>(8, 10) = cross;
    b.template block<2, 2>(10, 8) = cross;
    return b;
}

// --- double-precision front ends ---

Mat2 kepler_block(double theta, const OrbitParams& params);

/// (H_w1w1, H_w1w2, H_w2w2) at the given true anomaly.
std::array<Mat2, 3> essential_blocks(double theta, const OrbitParams& params, const BetaSet& betas);

Eigen::Matrix4d assemble_kepler(double theta, const OrbitParams& params);
Eigen::Matrix<double, 8, 8> assemble_essential(double theta, const EssentialSystem& sys);
Eigen::Matrix<double, 12, 12> assemble_full(double theta, const EssentialSystem& sys);

/// One decoupled 4-dim mode (valid when beta12 = 0); which = 1 or 2.
Eigen::Matrix4d assemble_decoupled(double theta, const EssentialSystem& sys, int which);

/// The quadratic Hamiltonian evaluated directly from its displayed terms,
/// as an independent route against 0.5 * zeta^T B(theta) zeta.
double quadratic_hamiltonian(double theta, const EssentialSystem& sys,
                             const Eigen::Matrix<double, 12, 1>& zeta);

// ---------------------------------------------------------------------------
// Transformed potential on the reduced coordinates and its Hessian oracle.
// ---------------------------------------------------------------------------

/// U(z, w1, w2) = sum_{i<j} m_i m_j / d_ij with
/// d_ij = |phi(a_i - a_j) z + phi(b_i - b_j) w1 + phi(c_i - c_j) w2|.
/// At z = (sigma, 0), w = 0 this reduces to mu/sigma.
class TransformedPotential {
  public:
    TransformedPotential(const CentralConfiguration& cc, const ReductionBasis& basis);

    double operator()(const Eigen::Vector2d& z, const Eigen::Vector2d& w1,
                      const Eigen::Vector2d& w2) const;

    /// Central second differences at the relative-equilibrium slice
    /// z=(sigma,0), w=0, assembled as a symmetric 6x6 over (z, w1, w2).
    /// Step h must lie in [1e-7, 1e-3].
    Eigen::Matrix<double, 6, 6> hessian_fd(double sigma, double h) const;

  private:
    MassVector masses_;
    std::array<Complex, 4> a_, b_;
    Eigen::Vector4d c_;
};

/// Closed-form Hessian blocks of the transformed potential at the slice:
/// d2U/dz2 = (mu/s^3) diag(2,-1), cross blocks vanish, and the w-blocks carry
/// the beta coefficients.
Eigen::Matrix<double, 6, 6> analytic_hessian(double mu, double sigma, const BetaSet& betas);

}  // namespace ere4

#endif
