#ifndef ERE4_REDUCTION_BASIS_HPP
#define ERE4_REDUCTION_BASIS_HPP

#include <array>
#include <utility>

#include "ere4/central_config.hpp"

namespace ere4 {

/// Mass-orthonormal eigenbasis of D together with the real 8x8 symplectic
/// coordinate matrix A built from it.
///
/// v1 = (1,1,1,1), v2 = positions, v3 = k*conj(v2) + l*v2 (entries b_i), and
/// v4 is the real cofactor vector (entries c_i) obtained from the signed
/// triangle areas.  A is the entrywise 2x2 lift of (v1 v2 v3 v4) and satisfies
/// A^T M A = I_8 with M = diag(m1,m1,...,m4,m4).
struct ReductionBasis {
    Eigen::Vector4d v1;
    std::array<Complex, 4> v2;
    std::array<Complex, 4> v3;
    Eigen::Vector4d v4;
    double k = 1.0;
    Complex l{0.0, 0.0};
    double rho = 0.0;  // sqrt(m1 m2 m3 m4)
    Eigen::Matrix<double, 8, 8> A;
};

/// Coefficients of the essential linearized system.  beta1 vanishes by
/// construction and is kept for auditing; beta2 = 1 - tr(D)/mu; the pairwise
/// coefficients are complex.
struct BetaSet {
    double beta1 = 0.0;
    double beta2 = 0.0;
    Complex beta11{0.0, 0.0};
    Complex beta12{0.0, 0.0};
    Complex beta22{0.0, 0.0};
};

/// Mixing coefficients making v3 = k*conj(v2) + l*v2 mass-orthonormal to v2.
/// If sum(m z^2) vanishes this is (1, 0).  Throws CollinearDegeneracy when
/// |sum(m conj(z)^2)| reaches 1 (collinear configurations).
std::pair<double, Complex> build_kl(const CentralConfiguration& cc);

/// Full basis for a non-collinear central configuration.
ReductionBasis build_basis(const CentralConfiguration& cc);

/// Max deviation of conj(v_i)^T M~ v_j from the identity, over all 16 pairs.
double unitarity_defect(const CentralConfiguration& cc, const ReductionBasis& basis);

/// Max-abs entry of A^T M A - I_8.
double atma_defect(const CentralConfiguration& cc, const ReductionBasis& basis);

/// Residual of the eigenvector cross-check F_i = mu(1+beta1) m_i b_i,
/// G_i = mu(1+beta2) m_i c_i (max over components).
double fg_identity_defect(const CentralConfiguration& cc, const ReductionBasis& basis,
                          const BetaSet& betas);

/// Pairwise sums defining beta11/beta12/beta22, plus the audit quantities.
/// Throws FGIdentityViolation when the eigenvector cross-check exceeds 1e-8.
BetaSet compute_betas(const CentralConfiguration& cc, const ReductionBasis& basis);

}  // namespace ere4

#endif
