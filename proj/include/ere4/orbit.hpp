#ifndef ERE4_ORBIT_HPP
#define ERE4_ORBIT_HPP

#include <string>
#include <vector>

#include "ere4/linear_system.hpp"

namespace ere4 {

/// Canonical state of the 4-body system, body-major layout
/// [x1,y1,...,x4,y4]; momenta P = M * Qdot.
struct PhaseState {
    Eigen::Matrix<double, 8, 1> Q = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Matrix<double, 8, 1> P = Eigen::Matrix<double, 8, 1>::Zero();
};

/// Eccentric anomaly E with E - e sin E = M, Newton iteration seeded at
/// M + e sin M; converges for every e in [0,1).
double solve_kepler(double mean_anomaly, double e);

/// Orbital period of the homographic motion: 2 pi (p/(1-e^2))^(3/2) / sqrt(mu).
double orbit_period(const CentralConfiguration& cc, const OrbitParams& params);

/// Exact state of the elliptic relative equilibrium at time t, pericenter
/// passage at t = 0.  Each body traces the Kepler orbit of gravitational
/// parameter mu scaled by its configuration position.
PhaseState ere_state(double t, const CentralConfiguration& cc, const OrbitParams& params);

struct NBodyOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double collision_floor = 1e-8;
    std::size_t max_steps = 50'000'000;
};

/// Adaptive integration of the point-mass equations for any body count;
/// y = [q_1 .. q_n, p_1 .. p_n] flattened planar coordinates.  Returns the
/// state at each requested time (non-decreasing, starting from t = 0).
/// Throws CollisionDetected when a pairwise distance drops below the floor.
std::vector<Eigen::VectorXd> integrate_pointmasses(const Eigen::VectorXd& y0,
                                                   const std::vector<double>& masses,
                                                   const std::vector<double>& sample_times,
                                                   const NBodyOptions& opts = {});

/// Four-body front end of the sampler.
std::vector<PhaseState> integrate_nbody(const PhaseState& initial, const MassVector& masses,
                                        const std::vector<double>& sample_times,
                                        const NBodyOptions& opts = {});

// conserved quantities
double total_energy(const std::vector<double>& masses, const Eigen::VectorXd& y);
double total_energy(const MassVector& masses, const PhaseState& state);
Eigen::Vector2d linear_momentum(const PhaseState& state);
double angular_momentum(const PhaseState& state);

/// Deterministic CSV dump of a sampled trajectory: header
/// t,q1x,q1y,...,q4y,p1x,...,p4y and one row per sample (17 significant
/// digits).
std::string trajectory_csv(const std::vector<double>& times, const std::vector<PhaseState>& states);

}  // namespace ere4

#endif
