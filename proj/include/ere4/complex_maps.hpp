#ifndef ERE4_COMPLEX_MAPS_HPP
#define ERE4_COMPLEX_MAPS_HPP

#include <Eigen/Dense>
#include <complex>

namespace ere4 {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2d;

/// Rotation-scaling embedding of a complex number: z = x+iy -> [[x,-y],[y,x]].
/// Multiplicative: phi(z)*phi(w) = phi(z*w).
template <class T>
Eigen::Matrix<T, 2, 2> phi_t(const std::complex<T>& z) {
    Eigen::Matrix<T, 2, 2> m;
    m << z.real(), -z.imag(), z.imag(), z.real();
    return m;
}

/// Reflection-type embedding: z = x+iy -> [[x,y],[y,-x]].
/// Symmetric and traceless; psi(z)*psi(z) = |z|^2 * I.
template <class T>
Eigen::Matrix<T, 2, 2> psi_t(const std::complex<T>& z) {
    Eigen::Matrix<T, 2, 2> m;
    m << z.real(), z.imag(), z.imag(), -z.real();
    return m;
}

inline Mat2 phi(Complex z) { return phi_t<double>(z); }
inline Mat2 psi(Complex z) { return psi_t<double>(z); }

/// The standard planar symplectic matrix [[0,-1],[1,0]] (= phi(i)).
inline Mat2 j2() { return phi(Complex(0.0, 1.0)); }

/// Membership predicates for the two image subspaces.
inline bool is_phi_image(const Mat2& m, double tol = 0.0) {
    return std::abs(m(0, 0) - m(1, 1)) <= tol && std::abs(m(1, 0) + m(0, 1)) <= tol;
}
inline bool is_psi_image(const Mat2& m, double tol = 0.0) {
    return std::abs(m(0, 0) + m(1, 1)) <= tol && std::abs(m(0, 1) - m(1, 0)) <= tol;
}

/// Entrywise block lift of a complex matrix: each entry t becomes the 2x2
/// block phi(t).  Multiplicative, and lift(T)^T = lift(conj(T)^T), which is
/// what makes real 8x8 coordinate changes inherit complex unitarity.
inline Eigen::MatrixXd phi_lift(const Eigen::MatrixXcd& t) {
    Eigen::MatrixXd out(2 * t.rows(), 2 * t.cols());
    for (Eigen::Index i = 0; i < t.rows(); ++i)
        for (Eigen::Index j = 0; j < t.cols(); ++j)
            out.block<2, 2>(2 * i, 2 * j) = phi(t(i, j));
    return out;
}

}  // namespace ere4

#endif
