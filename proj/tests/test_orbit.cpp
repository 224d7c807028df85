#include "ere4/orbit.hpp"

#include <cmath>

#include "doctest.h"
#include "ere4/errors.hpp"
#include "ere4/reduction_basis.hpp"

using namespace ere4;

namespace {

constexpr double kTwoPi = 6.283185307179586;
const MassVector kEqual{0.25, 0.25, 0.25, 0.25};

const CentralConfiguration& square_cc() {
    static const CentralConfiguration cc =
        solve_cc(kEqual, family_seed(Family::square, kEqual), 1e-13);
    return cc;
}

// independent bisection oracle for the Kepler equation
double kepler_bisect(double m, double e) {
    double lo = m - 1.0, hi = m + 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - e * std::sin(mid) - m > 0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double max_body_deviation(const PhaseState& a, const PhaseState& b) {
    return (a.Q - b.Q).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("solve_kepler: fixed points and the bisection oracle") {
    CHECK(solve_kepler(0.0, 0.7) == 0.0);
    for (double m : {-2.0, 0.3, 1.9, 11.0}) CHECK(solve_kepler(m, 0.0) == doctest::Approx(m).epsilon(1e-15));

    const double e = 0.5, m = M_PI / 2.0;
    const double oracle = kepler_bisect(m, e);
    CHECK(oracle == doctest::Approx(2.0209799380897704).epsilon(1e-12));
    CHECK(solve_kepler(m, e) == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(std::abs(solve_kepler(m, e) - e * std::sin(solve_kepler(m, e)) - m) <= 1e-13);

    // residual gate across a grid
    for (double ee : {0.1, 0.5, 0.9, 0.99})
        for (double mm : {-5.0, -0.4, 0.7, 3.0, 20.0}) {
            const double E = solve_kepler(mm, ee);
            CHECK(std::abs(E - ee * std::sin(E) - mm) <= 1e-12);
        }
}

TEST_CASE("ere_state: circular case puts bodies at p times the configuration") {
    const OrbitParams params{0.0, 1.3};
    const PhaseState s = ere_state(0.0, square_cc(), params);
    const double speed = std::sqrt(square_cc().mu / params.p);
    for (int i = 0; i < 4; ++i) {
        const Complex a = square_cc().config.positions[i];
        CHECK(s.Q[2 * i] == doctest::Approx(params.p * a.real()).epsilon(1e-13));
        CHECK(s.Q[2 * i + 1] == doctest::Approx(params.p * a.imag()).epsilon(1e-13));
        const double v = std::hypot(s.P[2 * i], s.P[2 * i + 1]) / square_cc().config.masses[i];
        CHECK(v == doctest::Approx(speed * std::abs(a)).epsilon(1e-12));
    }
}

TEST_CASE("ere_state: pericenter start for eccentric orbits") {
    const OrbitParams params{0.6, 1.0};
    const PhaseState s = ere_state(0.0, square_cc(), params);
    for (int i = 0; i < 4; ++i) {
        const double r = std::hypot(s.Q[2 * i], s.Q[2 * i + 1]);
        CHECK(r == doctest::Approx(params.p / (1.0 + params.e) * std::abs(square_cc().config.positions[i]))
                       .epsilon(1e-13));
    }
}

TEST_CASE("ere_state: conserved quantities along the analytic orbit") {
    const OrbitParams params{0.4, 1.0};
    const double T = orbit_period(square_cc(), params);
    const PhaseState s0 = ere_state(0.0, square_cc(), params);
    const double e0 = total_energy(kEqual, s0);
    const double l0 = angular_momentum(s0);
    CHECK(l0 == doctest::Approx(std::sqrt(square_cc().mu * params.p)).epsilon(1e-12));
    for (int k = 1; k <= 16; ++k) {
        const PhaseState s = ere_state(T * k / 16.0, square_cc(), params);
        CHECK(std::abs(total_energy(kEqual, s) - e0) <= 1e-10);
        CHECK(std::abs(angular_momentum(s) - l0) <= 1e-10);
        CHECK(linear_momentum(s).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("ere_state: periodic with the Kepler period") {
    const OrbitParams params{0.3, 1.0};
    const double T = orbit_period(square_cc(), params);
    for (double t : {0.0, 0.37 * T, 0.81 * T}) {
        const PhaseState a = ere_state(t, square_cc(), params);
        const PhaseState b = ere_state(t + T, square_cc(), params);
        CHECK(max_body_deviation(a, b) <= 1e-9);
        CHECK((a.P - b.P).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("two-body circular orbit closes after the Kepler period") {
    // m1 = m2 = 1/2 at separation 1: relative gravitational parameter 1,
    // so the period is exactly 2 pi
    const std::vector<double> m{0.5, 0.5};
    Eigen::VectorXd y0(8);
    y0 << 0.5, 0.0, -0.5, 0.0, 0.0, 0.25, 0.0, -0.25;
    const auto states = integrate_pointmasses(y0, m, {kTwoPi});
    CHECK((states.back() - y0).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("nbody integration from the ERE initial state stays homographic") {
    const OrbitParams params{0.3, 1.0};
    const double T = orbit_period(square_cc(), params);
    std::vector<double> times;
    for (int k = 0; k <= 100; ++k) times.push_back(T * k / 100.0);

    const PhaseState s0 = ere_state(0.0, square_cc(), params);
    const auto traj = integrate_nbody(s0, kEqual, times);

    double worst = 0.0, drift = 0.0;
    const double e0 = total_energy(kEqual, s0);
    for (std::size_t k = 0; k < times.size(); ++k) {
        worst = std::max(worst, max_body_deviation(traj[k], ere_state(times[k], square_cc(), params)));
        drift = std::max(drift, std::abs(total_energy(kEqual, traj[k]) - e0) / std::abs(e0));
    }
    CHECK(worst <= 1e-7);
    CHECK(drift <= 1e-9);

    // total linear momentum is conserved along the trajectory
    for (const PhaseState& s : traj) CHECK(linear_momentum(s).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("homographic deviation metric is rotation invariant") {
    const OrbitParams params{0.25, 1.0};
    const double T = orbit_period(square_cc(), params);
    std::vector<double> times;
    for (int k = 0; k <= 20; ++k) times.push_back(T * k / 20.0);

    auto deviation = [&](const CentralConfiguration& cc) {
        const PhaseState s0 = ere_state(0.0, cc, params);
        const auto traj = integrate_nbody(s0, cc.config.masses, times);
        double worst = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            worst = std::max(worst, max_body_deviation(traj[k], ere_state(times[k], cc, params)));
        return worst;
    };

    PositionVector rotated;
    for (int i = 0; i < 4; ++i) rotated[i] = std::polar(1.0, 0.83) * square_cc().config.positions[i];
    const CentralConfiguration cc_rot = certify_cc({kEqual, rotated}, 1e-12);
    CHECK(std::abs(deviation(square_cc()) - deviation(cc_rot)) <= 1e-10);
}

TEST_CASE("collision detection aborts the integration") {
    // two bodies launched head-on
    const std::vector<double> m{0.5, 0.5};
    Eigen::VectorXd y0(8);
    y0 << 0.5, 0.0, -0.5, 0.0, -0.1, 0.0, 0.1, 0.0;
    CHECK_THROWS_AS(integrate_pointmasses(y0, m, {50.0}), CollisionDetected);
}

TEST_CASE("sample times must be non-decreasing") {
    const std::vector<double> m{0.5, 0.5};
    Eigen::VectorXd y0(8);
    y0 << 0.5, 0.0, -0.5, 0.0, 0.0, 0.25, 0.0, -0.25;
    CHECK_THROWS_AS(integrate_pointmasses(y0, m, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("trajectory csv layout and determinism") {
    const OrbitParams params{0.2, 1.0};
    const std::vector<double> times{0.0, 0.5, 1.0};
    std::vector<PhaseState> states;
    for (double t : times) states.push_back(ere_state(t, square_cc(), params));

    const std::string csv = trajectory_csv(times, states);
    CHECK(csv.rfind("t,q1x,q1y,q2x,q2y,q3x,q3y,q4x,q4y,p1x,p1y,p2x,p2y,p3x,p3y,p4x,p4y\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv == trajectory_csv(times, states));

    // first row starts at t = 0 with body 1 on the pericenter ray
    const std::string row = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1));
    CHECK(row.rfind("0,", 0) == 0);

    CHECK_THROWS_AS(trajectory_csv({0.0}, states), std::invalid_argument);
}
