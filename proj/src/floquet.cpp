#include "ere4/floquet.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "ere4/errors.hpp"

namespace ode = boost::numeric::odeint;

namespace ere4 {

namespace {

using State = std::vector<long double>;
using MatrixXcld = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

MatrixXld symplectic_j_ld(int dim) {
    const int h = dim / 2;
    MatrixXld j = MatrixXld::Zero(dim, dim);
    j.topRightCorner(h, h) = -MatrixXld::Identity(h, h);
    j.bottomLeftCorner(h, h) = MatrixXld::Identity(h, h);
    return j;
}

std::vector<Complex> sorted_eigenvalues(const MatrixXld& m) {
    Eigen::EigenSolver<MatrixXld> es(m);
    std::vector<Complex> out;
    out.reserve(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        out.emplace_back(static_cast<double>(es.eigenvalues()[i].real()),
                         static_cast<double>(es.eigenvalues()[i].imag()));
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

bool semisimple_heuristic(const MatrixXld& m) {
    Eigen::EigenSolver<MatrixXld> es(m);
    Eigen::MatrixXcd v(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            v(i, j) = Complex(static_cast<double>(es.eigenvectors()(i, j).real()),
                              static_cast<double>(es.eigenvectors()(i, j).imag()));
    for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j).normalize();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    return svd.singularValues()(v.cols() - 1) > 1e-6;
}

// Integrates the flattened fundamental matrix in long double.
MatrixXld integrate_ld(const PeriodicSystem& system, long double th0, long double th1,
                       const IntegrateOptions& opts, std::size_t* steps_out = nullptr) {
    const int n = system.dim;
    MatrixXld y = MatrixXld::Identity(n, n);
    if (steps_out) *steps_out = 0;
    if (th1 == th0) return y;
    if (th1 < th0) throw std::invalid_argument("integration span must be forward");

    const int half = n / 2;
    auto rhs = [&](const State& s, State& ds, long double theta) {
        Eigen::Map<const MatrixXld> phi(s.data(), n, n);
        Eigen::Map<MatrixXld> dphi(ds.data(), n, n);
        const MatrixXld b = system.coeff(theta);
        // A = J B assembled by block rows: top half = -B bottom, bottom = B top
        MatrixXld a(n, n);
        a.topRows(half) = -b.bottomRows(half);
        a.bottomRows(half) = b.topRows(half);
        dphi = a * phi;
    };

    State state(y.data(), y.data() + n * n);
    using Stepper = ode::runge_kutta_fehlberg78<State, long double>;
    auto ctrl = ode::make_controlled<Stepper>(static_cast<long double>(opts.atol),
                                              static_cast<long double>(opts.rtol));

    long double t = th0;
    long double dt = (th1 - th0) / 128.0L;
    std::size_t steps = 0, rejects = 0;
    const long double min_dt = (th1 - th0) * 1e-14L;
    while (t < th1) {
        if (t + dt > th1) dt = th1 - t;
        if (ctrl.try_step(rhs, state, t, dt) == ode::fail) {
            if (++rejects > 1000 || dt < min_dt)
                throw StepUnderflow("step size underflow at theta = " + std::to_string((double)t));
            continue;
        }
        rejects = 0;
        if (++steps > opts.max_steps) throw StepUnderflow("step budget exhausted");
    }
    if (steps_out) *steps_out = steps;
    // state is column-major (Eigen::Map layout above)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y(i, j) = state[i + static_cast<std::size_t>(n) * j];
    return y;
}

PeriodicSystem from_callable(SystemKind kind, int dim, std::function<MatrixXld(long double)> f) {
    PeriodicSystem s;
    s.kind = kind;
    s.dim = dim;
    s.coeff = std::move(f);
    return s;
}

void require_elliptic(double e) {
    if (!(e >= 0.0 && e < 1.0))
        throw std::invalid_argument("eccentricity must lie in [0, 1)");
}

}  // namespace

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::kepler4: return "kepler4";
        case SystemKind::essential8: return "essential8";
        case SystemKind::full12: return "full12";
        case SystemKind::decoupled4: return "decoupled4";
    }
    return "unknown";
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::spectrally_stable: return "spectrally_stable";
        case Stability::elliptic_hyperbolic_mixed: return "elliptic_hyperbolic_mixed";
        case Stability::unstable: return "unstable";
        case Stability::degenerate: return "degenerate";
    }
    return "unknown";
}

PeriodicSystem make_kepler_system(const OrbitParams& params) {
    require_elliptic(params.e);
    const long double e = params.e;
    return from_callable(SystemKind::kepler4, 4, [e](long double th) -> MatrixXld {
        return assemble_one_mode_t<long double>(kepler_block_t<long double>(th, e));
    });
}

PeriodicSystem make_essential_system(const EssentialSystem& sys) {
    require_elliptic(sys.params.e);
    const long double e = sys.params.e;
    const long double b2 = sys.beta2;
    const std::complex<long double> b11(sys.beta11.real(), sys.beta11.imag());
    const std::complex<long double> b12(sys.beta12.real(), sys.beta12.imag());
    const std::complex<long double> b22(sys.beta22.real(), sys.beta22.imag());
    return from_callable(SystemKind::essential8, 8, [=](long double th) -> MatrixXld {
        return assemble_essential_t<long double>(th, e, b2, b11, b12, b22);
    });
}

PeriodicSystem make_full_system(const EssentialSystem& sys) {
    require_elliptic(sys.params.e);
    const long double e = sys.params.e;
    const long double b2 = sys.beta2;
    const std::complex<long double> b11(sys.beta11.real(), sys.beta11.imag());
    const std::complex<long double> b12(sys.beta12.real(), sys.beta12.imag());
    const std::complex<long double> b22(sys.beta22.real(), sys.beta22.imag());
    return from_callable(SystemKind::full12, 12, [=](long double th) -> MatrixXld {
        return assemble_full_t<long double>(th, e, b2, b11, b12, b22);
    });
}

PeriodicSystem make_decoupled_system(const EssentialSystem& sys, int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("decoupled mode index must be 1 or 2");
    require_elliptic(sys.params.e);
    const long double e = sys.params.e;
    const long double bi = (which == 1) ? 0.0L : static_cast<long double>(sys.beta2);
    const Complex bii_d = (which == 1) ? sys.beta11 : sys.beta22;
    const std::complex<long double> bii(bii_d.real(), bii_d.imag());
    return from_callable(SystemKind::decoupled4, 4, [=](long double th) -> MatrixXld {
        return assemble_one_mode_t<long double>(
            essential_diag_block_t<long double>(th, e, bi, bii));
    });
}

Eigen::MatrixXd integrate_fundamental(const PeriodicSystem& system, double theta0, double theta1,
                                      const IntegrateOptions& opts) {
    return integrate_ld(system, theta0, theta1, opts).cast<double>();
}

double symplectic_defect(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    const int h = n / 2;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    j.topRightCorner(h, h) = -Eigen::MatrixXd::Identity(h, h);
    j.bottomLeftCorner(h, h) = Eigen::MatrixXd::Identity(h, h);
    return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

Stability classify(const std::vector<Complex>& eigenvalues, bool semisimple, double circle_tol) {
    int on_circle = 0;
    int unit_multiplicity = 0;
    for (const Complex& l : eigenvalues) {
        if (std::abs(std::abs(l) - 1.0) <= circle_tol) ++on_circle;
        if (std::abs(l - Complex(1.0, 0.0)) <= circle_tol) ++unit_multiplicity;
    }
    const int n = static_cast<int>(eigenvalues.size());
    if (on_circle == n) {
        if (unit_multiplicity >= 2) return Stability::degenerate;
        return semisimple ? Stability::spectrally_stable : Stability::degenerate;
    }
    if (on_circle == 0) return Stability::unstable;
    return Stability::elliptic_hyperbolic_mixed;
}

MonodromyReport monodromy(const PeriodicSystem& system, const IntegrateOptions& opts) {
    std::size_t steps = 0;
    const MatrixXld m = integrate_ld(system, 0.0L, kTwoPi, opts, &steps);

    MonodromyReport rep;
    rep.system_kind = system.kind;
    rep.matrix = m.cast<double>();
    rep.eigenvalues = sorted_eigenvalues(m);
    rep.integrator = {steps, opts.rtol, opts.atol};

    const MatrixXld j = symplectic_j_ld(system.dim);
    rep.symplectic_defect =
        static_cast<double>((m.transpose() * j * m - j).cwiseAbs().maxCoeff());
    rep.det_defect = static_cast<double>(std::abs(m.determinant() - 1.0L));
    rep.stability = classify(rep.eigenvalues, semisimple_heuristic(m));
    return rep;
}

AutonomousSpectrum spectrum_autonomous(const PeriodicSystem& system) {
    const MatrixXld b0 = system.coeff(0.0L);
    if ((system.coeff(1.0L) - b0).cwiseAbs().maxCoeff() > 1e-15L)
        throw std::invalid_argument("autonomous spectrum requires constant coefficients (e = 0)");
    const int half = system.dim / 2;
    MatrixXld a(system.dim, system.dim);
    a.topRows(half) = -b0.bottomRows(half);
    a.bottomRows(half) = b0.topRows(half);

    AutonomousSpectrum out;
    out.eigenvalues = sorted_eigenvalues(a);
    out.all_imaginary = true;
    for (const Complex& l : out.eigenvalues)
        if (std::abs(l.real()) > 1e-9) out.all_imaginary = false;
    out.semisimple = semisimple_heuristic(a);
    out.linearly_stable = out.all_imaginary && out.semisimple;
    return out;
}

double match_spectra(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    while (!a.empty()) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        worst = std::max(worst, best);
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(bi));
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return worst;
}

}  // namespace ere4
