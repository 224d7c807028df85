#ifndef ERE4_CENTRAL_CONFIG_HPP
#define ERE4_CENTRAL_CONFIG_HPP

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ere4/complex_maps.hpp"

namespace ere4 {

using MassVector = std::array<double, 4>;
using PositionVector = std::array<Complex, 4>;

/// Four masses and four planar positions in normalized units:
/// sum(m) = 1, sum(m*z) = 0, sum(m*|z|^2) = 1.
struct Configuration {
    MassVector masses{};
    PositionVector positions{};
};

/// Oriented area of the triangle (p1,p2,p3); positive for counterclockwise.
double signed_area(Complex p1, Complex p2, Complex p3);

/// All four triangles degenerate (signed areas below tol).
bool is_collinear(const Configuration& config, double tol = 1e-12);

/// Scale masses to unit total, move the weighted barycenter to the origin and
/// rescale so the moment-of-inertia normalization sum(m*|z|^2) = 1 holds.
/// Throws InvalidMass / DegenerateGeometry on bad input.
Configuration normalize(const MassVector& masses, const PositionVector& positions);

/// Newtonian potential sum_{i<j} m_i m_j / |z_i - z_j| on raw data.
double potential(const MassVector& masses, const PositionVector& positions);
double potential(const Configuration& config);

/// Per-body defect of the central-configuration identity:
///   residual_i = sum_{j != i} m_j (z_j - z_i)/|z_i - z_j|^3 + mu z_i,
/// with mu = U/(2I) recomputed from the data.  Zero exactly at a central
/// configuration; scales like s^-2 under position scaling by s.
PositionVector cc_residual(const Configuration& config);
double cc_residual_norm(const Configuration& config);

struct SolverStats {
    int iterations = 0;
    std::vector<double> residual_history;
};

/// A solved central configuration with its derived matrices.
/// B is the symmetric interaction matrix (rows sum to zero); D = mu*I + M~^-1 B
/// annihilates the position vector and fixes (1,1,1,1) with eigenvalue mu.
struct CentralConfiguration {
    Configuration config;
    double mu = 0.0;
    double residual_norm = 0.0;
    Eigen::Matrix4d B;
    Eigen::Matrix4d D;
    bool collinear = false;
    SolverStats stats;

    /// Length gauge for a chosen semi-latus rectum p: sigma = (mu*p)^(1/4).
    double sigma(double p = 1.0) const { return std::pow(mu * p, 0.25); }

    /// Mass-symmetrized similar matrix M~^(1/2) D M~^(-1/2); symmetric, so its
    /// spectrum (= spectrum of D) is cheap and well conditioned.
    Eigen::Matrix4d dtilde() const;
};

Eigen::Matrix4d build_B(const Configuration& config);
Eigen::Matrix4d build_D(const Configuration& config);

/// Damped Newton iteration on cc_residual.  The center-of-mass and inertia
/// normalizations are restored by projection after every step and the
/// rotational gauge is fixed by keeping arg(z_1) at its seed value.
/// Throws NoConvergence / SingularJacobian.
CentralConfiguration solve_cc(const MassVector& masses, const Configuration& seed,
                              double tol = 1e-12, int max_iter = 200);

/// Wrap an already-normalized configuration without running the solver
/// (for exact symmetric inputs); validates the residual against tol.
CentralConfiguration certify_cc(const Configuration& config, double tol = 1e-12);

// --- named seed families for the CLI and tests ---

enum class Family { square, collinear, triangle_plus_center, custom };

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

/// Normalized seed positions for a named family with the given masses.
/// triangle_plus_center puts bodies 1..3 on the vertices and body 4 at the
/// centroid, so the gauge body z_1 is never at the origin.
Configuration family_seed(Family f, const MassVector& masses);

/// Default masses for a family run without an explicit input file.
MassVector family_default_masses(Family f);

}  // namespace ere4

#endif
