#include "ere4/orbit.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "ere4/errors.hpp"
#include "ere4/json_io.hpp"

namespace ode = boost::numeric::odeint;

namespace ere4 {

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct KeplerPoint {
    double r, theta, rdot, rthetadot;
};

KeplerPoint kepler_point(double t, double mu, const OrbitParams& params) {
    const double e = params.e;
    const double p = params.p;
    const double a = p / (1.0 - e * e);
    const double n = std::sqrt(mu / (a * a * a));
    const double E = solve_kepler(n * t, e);
    const double theta =
        2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(0.5 * E), std::sqrt(1.0 - e) * std::cos(0.5 * E));
    const double r = a * (1.0 - e * std::cos(E));
    const double vs = std::sqrt(mu / p);
    return {r, theta, vs * e * std::sin(theta), vs * (1.0 + e * std::cos(theta))};
}

}  // namespace

double solve_kepler(double mean_anomaly, double e) {
    // shift into [-pi, pi) so the trigonometry stays well conditioned
    const double k = std::floor((mean_anomaly + M_PI) / kTwoPi);
    const double m = mean_anomaly - kTwoPi * k;
    double E = m + e * std::sin(m);
    for (int it = 0; it < 64; ++it) {
        const double f = E - e * std::sin(E) - m;
        if (std::abs(f) <= 1e-14) break;
        E -= f / (1.0 - e * std::cos(E));
    }
    return E + kTwoPi * k;
}

double orbit_period(const CentralConfiguration& cc, const OrbitParams& params) {
    const double a = params.p / (1.0 - params.e * params.e);
    return kTwoPi * std::sqrt(a * a * a / cc.mu);
}

PhaseState ere_state(double t, const CentralConfiguration& cc, const OrbitParams& params) {
    const KeplerPoint kp = kepler_point(t, cc.mu, params);
    const Complex w = std::polar(kp.r, kp.theta);
    const Complex wdot = std::polar(1.0, kp.theta) * Complex(kp.rdot, kp.rthetadot);

    PhaseState s;
    for (int i = 0; i < 4; ++i) {
        const Complex q = w * cc.config.positions[i];
        const Complex v = wdot * cc.config.positions[i];
        s.Q[2 * i] = q.real();
        s.Q[2 * i + 1] = q.imag();
        s.P[2 * i] = cc.config.masses[i] * v.real();
        s.P[2 * i + 1] = cc.config.masses[i] * v.imag();
    }
    return s;
}

namespace {

using State = std::vector<double>;

// gravitational right-hand side for n planar point masses
struct PointMassRhs {
    const std::vector<double>& m;
    double collision_floor;

    void operator()(const State& y, State& dy, double) const {
        const int n = static_cast<int>(m.size());
        for (int i = 0; i < n; ++i) {
            dy[2 * i] = y[2 * n + 2 * i] / m[i];
            dy[2 * i + 1] = y[2 * n + 2 * i + 1] / m[i];
            dy[2 * n + 2 * i] = 0.0;
            dy[2 * n + 2 * i + 1] = 0.0;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double dx = y[2 * j] - y[2 * i];
                const double dyy = y[2 * j + 1] - y[2 * i + 1];
                const double d2 = dx * dx + dyy * dyy;
                const double d = std::sqrt(d2);
                if (d < collision_floor) throw CollisionDetected("pairwise distance below floor");
                const double f = m[i] * m[j] / (d2 * d);
                dy[2 * n + 2 * i] += f * dx;
                dy[2 * n + 2 * i + 1] += f * dyy;
                dy[2 * n + 2 * j] -= f * dx;
                dy[2 * n + 2 * j + 1] -= f * dyy;
            }
        }
    }
};

}  // namespace

std::vector<Eigen::VectorXd> integrate_pointmasses(const Eigen::VectorXd& y0,
                                                   const std::vector<double>& masses,
                                                   const std::vector<double>& sample_times,
                                                   const NBodyOptions& opts) {
    const int n = static_cast<int>(masses.size());
    if (y0.size() != 4 * n) throw std::invalid_argument("state size must be 4 * n");
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (sample_times[i] < sample_times[i - 1])
            throw std::invalid_argument("sample times must be non-decreasing");

    PointMassRhs rhs{masses, opts.collision_floor};
    State state(y0.data(), y0.data() + y0.size());

    using Stepper = ode::runge_kutta_fehlberg78<State, double>;
    auto ctrl = ode::make_controlled<Stepper>(opts.atol, opts.rtol);

    std::vector<Eigen::VectorXd> out;
    out.reserve(sample_times.size());
    double t = 0.0;
    double dt = 1e-3;
    std::size_t steps = 0;
    for (double target : sample_times) {
        std::size_t rejects = 0;
        while (t < target) {
            double step = dt;
            if (t + step > target) step = target - t;
            if (ctrl.try_step(rhs, state, t, step) == ode::fail) {
                dt = step;
                if (++rejects > 1000) throw StepUnderflow("n-body step size underflow");
                continue;
            }
            rejects = 0;
            dt = step;
            if (++steps > opts.max_steps) throw StepUnderflow("n-body step budget exhausted");
        }
        out.emplace_back(Eigen::Map<const Eigen::VectorXd>(state.data(), y0.size()));
    }
    return out;
}

std::vector<PhaseState> integrate_nbody(const PhaseState& initial, const MassVector& masses,
                                        const std::vector<double>& sample_times,
                                        const NBodyOptions& opts) {
    Eigen::VectorXd y0(16);
    y0.head<8>() = initial.Q;
    y0.tail<8>() = initial.P;
    const std::vector<double> m(masses.begin(), masses.end());
    std::vector<PhaseState> out;
    for (const Eigen::VectorXd& y : integrate_pointmasses(y0, m, sample_times, opts)) {
        PhaseState s;
        s.Q = y.head<8>();
        s.P = y.tail<8>();
        out.push_back(s);
    }
    return out;
}

double total_energy(const std::vector<double>& masses, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(masses.size());
    double kin = 0.0, pot = 0.0;
    for (int i = 0; i < n; ++i) {
        const double px = y[2 * n + 2 * i], py = y[2 * n + 2 * i + 1];
        kin += (px * px + py * py) / (2.0 * masses[i]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = y[2 * j] - y[2 * i];
            const double dyy = y[2 * j + 1] - y[2 * i + 1];
            pot += masses[i] * masses[j] / std::sqrt(dx * dx + dyy * dyy);
        }
    return kin - pot;
}

double total_energy(const MassVector& masses, const PhaseState& state) {
    Eigen::VectorXd y(16);
    y.head<8>() = state.Q;
    y.tail<8>() = state.P;
    return total_energy(std::vector<double>(masses.begin(), masses.end()), y);
}

Eigen::Vector2d linear_momentum(const PhaseState& state) {
    Eigen::Vector2d p = Eigen::Vector2d::Zero();
    for (int i = 0; i < 4; ++i) p += state.P.segment<2>(2 * i);
    return p;
}

double angular_momentum(const PhaseState& state) {
    double l = 0.0;
    for (int i = 0; i < 4; ++i)
        l += state.Q[2 * i] * state.P[2 * i + 1] - state.Q[2 * i + 1] * state.P[2 * i];
    return l;
}

std::string trajectory_csv(const std::vector<double>& times, const std::vector<PhaseState>& states) {
    if (times.size() != states.size())
        throw std::invalid_argument("one state per sample time required");
    std::string out = "t,q1x,q1y,q2x,q2y,q3x,q3y,q4x,q4y,p1x,p1y,p2x,p2y,p3x,p3y,p4x,p4y\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out += fmt17(times[k]);
        for (int i = 0; i < 8; ++i) out += ',' + fmt17(states[k].Q[i]);
        for (int i = 0; i < 8; ++i) out += ',' + fmt17(states[k].P[i]);
        out += '\n';
    }
    return out;
}

}  // namespace ere4
