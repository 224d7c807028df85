#ifndef ERE4_FLOQUET_HPP
#define ERE4_FLOQUET_HPP

#include <functional>
#include <string>
#include <vector>

#include "ere4/linear_system.hpp"

namespace ere4 {

enum class SystemKind { kepler4, essential8, full12, decoupled4 };
enum class Stability { spectrally_stable, elliptic_hyperbolic_mixed, unstable, degenerate };

std::string to_string(SystemKind kind);
std::string to_string(Stability s);

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// A 2pi-periodic linear Hamiltonian system zeta' = J B(theta) zeta.
/// The coefficient map is evaluated in extended precision: the Kepler part of
/// the monodromy carries a defective unit eigenvalue whose numerical split
/// grows like the square root of the integration error, so double precision
/// cannot reach the 1e-7 spectral matching used by the test suite.
struct PeriodicSystem {
    SystemKind kind = SystemKind::essential8;
    int dim = 8;
    std::function<MatrixXld(long double)> coeff;  // B(theta)
};

PeriodicSystem make_kepler_system(const OrbitParams& params);
PeriodicSystem make_essential_system(const EssentialSystem& sys);
PeriodicSystem make_full_system(const EssentialSystem& sys);
PeriodicSystem make_decoupled_system(const EssentialSystem& sys, int which);

struct IntegrateOptions {
    double rtol = 1e-16;
    double atol = 1e-19;
    std::size_t max_steps = 2'000'000;
};

struct IntegratorStats {
    std::size_t steps = 0;
    double rtol = 0.0;
    double atol = 0.0;
};

struct MonodromyReport {
    SystemKind system_kind = SystemKind::essential8;
    Eigen::MatrixXd matrix;
    std::vector<Complex> eigenvalues;  // sorted by (re, im)
    double symplectic_defect = 0.0;
    double det_defect = 0.0;
    Stability stability = Stability::degenerate;
    IntegratorStats integrator;
};

/// Fundamental solution over [theta0, theta1] with identity initial value,
/// all columns integrated jointly by an adaptive embedded Runge-Kutta (7)8
/// pair.  Throws StepUnderflow if the controller stalls or the step budget
/// is exhausted.
Eigen::MatrixXd integrate_fundamental(const PeriodicSystem& system, double theta0, double theta1,
                                      const IntegrateOptions& opts = {});

/// One-period fundamental solution plus spectral data and a coarse stability
/// classification.
MonodromyReport monodromy(const PeriodicSystem& system, const IntegrateOptions& opts = {});

/// Spectral data of the constant-coefficient case (circular orbit, e = 0):
/// eigenvalues of J B(0) plus a semisimplicity heuristic.
struct AutonomousSpectrum {
    std::vector<Complex> eigenvalues;  // sorted by (re, im)
    bool all_imaginary = false;
    bool semisimple = false;
    bool linearly_stable = false;
};

AutonomousSpectrum spectrum_autonomous(const PeriodicSystem& system);

/// Classification of a monodromy spectrum.  Eigenvalue 1 with multiplicity
/// two or more dominates (degenerate); otherwise everything on the unit
/// circle with a diagonalizable matrix is spectrally stable; everything off
/// the circle is unstable; a mixture is elliptic/hyperbolic mixed.
Stability classify(const std::vector<Complex>& eigenvalues, bool semisimple,
                   double circle_tol = 1e-7);

/// Greedy multiset matching defect between two spectra: pairs nearest values
/// first and returns the worst matched distance (infinity on size mismatch).
double match_spectra(std::vector<Complex> a, std::vector<Complex> b);

/// Max-abs entry of M^T J M - J for the standard block symplectic J.
double symplectic_defect(const Eigen::MatrixXd& m);

}  // namespace ere4

#endif
