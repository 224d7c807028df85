#include "ere4/central_config.hpp"

#include <algorithm>
#include <cmath>

#include "ere4/errors.hpp"

namespace ere4 {

namespace {

constexpr double kCoincidenceTol = 1e-12;

double inertia2(const MassVector& m, const PositionVector& z) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += m[i] * std::norm(z[i]);
    return s;  // = 2 I
}

Complex weighted_center(const MassVector& m, const PositionVector& z) {
    Complex c{0.0, 0.0};
    for (int i = 0; i < 4; ++i) c += m[i] * z[i];
    return c;
}

}  // namespace

double signed_area(Complex p1, Complex p2, Complex p3) {
    const Complex u = p2 - p1, v = p3 - p1;
    return 0.5 * (u.real() * v.imag() - u.imag() * v.real());
}

bool is_collinear(const Configuration& config, double tol) {
    const auto& z = config.positions;
    return std::abs(signed_area(z[1], z[2], z[3])) <= tol &&
           std::abs(signed_area(z[0], z[2], z[3])) <= tol &&
           std::abs(signed_area(z[0], z[1], z[3])) <= tol &&
           std::abs(signed_area(z[0], z[1], z[2])) <= tol;
}

Configuration normalize(const MassVector& masses, const PositionVector& positions) {
    double total = 0.0;
    for (double m : masses) {
        if (!(m > 0.0)) throw InvalidMass("masses must be strictly positive");
        total += m;
    }

    double scale_hint = 0.0;
    for (const Complex& z : positions) scale_hint = std::max(scale_hint, std::abs(z));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(positions[i] - positions[j]) <= kCoincidenceTol * std::max(1.0, scale_hint))
                throw DegenerateGeometry("coincident bodies");

    Configuration out;
    for (int i = 0; i < 4; ++i) out.masses[i] = masses[i] / total;

    const Complex center = weighted_center(out.masses, positions);
    for (int i = 0; i < 4; ++i) out.positions[i] = positions[i] - center;

    const double s = std::sqrt(inertia2(out.masses, out.positions));
    if (!(s > 0.0)) throw DegenerateGeometry("zero moment of inertia");
    for (auto& z : out.positions) z /= s;
    return out;
}

double potential(const MassVector& masses, const PositionVector& positions) {
    double u = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            u += masses[i] * masses[j] / std::abs(positions[i] - positions[j]);
    return u;
}

double potential(const Configuration& config) { return potential(config.masses, config.positions); }

PositionVector cc_residual(const Configuration& config) {
    const auto& m = config.masses;
    const auto& z = config.positions;
    const double mu = potential(m, z) / inertia2(m, z);
    PositionVector r{};
    for (int i = 0; i < 4; ++i) {
        Complex pull{0.0, 0.0};
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            const double d = std::abs(z[i] - z[j]);
            pull += m[j] * (z[j] - z[i]) / (d * d * d);
        }
        r[i] = pull + mu * z[i];
    }
    return r;
}

double cc_residual_norm(const Configuration& config) {
    double n = 0.0;
    for (const Complex& r : cc_residual(config)) n = std::max(n, std::abs(r));
    return n;
}

Eigen::Matrix4d build_B(const Configuration& config) {
    const auto& m = config.masses;
    const auto& z = config.positions;
    Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) {
        double diag = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            const double d = std::abs(z[i] - z[j]);
            b(i, j) = m[i] * m[j] / (d * d * d);
            diag -= b(i, j);
        }
        b(i, i) = diag;
    }
    return b;
}

Eigen::Matrix4d build_D(const Configuration& config) {
    const double mu = potential(config) / inertia2(config.masses, config.positions);
    Eigen::Matrix4d d = build_B(config);
    for (int i = 0; i < 4; ++i) d.row(i) /= config.masses[i];
    d += mu * Eigen::Matrix4d::Identity();
    return d;
}

Eigen::Matrix4d CentralConfiguration::dtilde() const {
    Eigen::Vector4d sq, isq;
    for (int i = 0; i < 4; ++i) {
        sq[i] = std::sqrt(config.masses[i]);
        isq[i] = 1.0 / sq[i];
    }
    return sq.asDiagonal() * D * isq.asDiagonal();
}

namespace {

// positions <-> flat real vector [x1,y1,...,x4,y4]
Eigen::Matrix<double, 8, 1> flatten(const PositionVector& z) {
    Eigen::Matrix<double, 8, 1> x;
    for (int i = 0; i < 4; ++i) {
        x[2 * i] = z[i].real();
        x[2 * i + 1] = z[i].imag();
    }
    return x;
}

PositionVector unflatten(const Eigen::Matrix<double, 8, 1>& x) {
    PositionVector z;
    for (int i = 0; i < 4; ++i) z[i] = Complex(x[2 * i], x[2 * i + 1]);
    return z;
}

// Restore the normalization constraints and the rotational gauge.
PositionVector project(const MassVector& m, PositionVector z, double gauge_arg) {
    const Complex center = weighted_center(m, z);
    for (auto& zi : z) zi -= center;
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += m[i] * std::norm(z[i]);
    s = std::sqrt(s);
    for (auto& zi : z) zi /= s;
    if (std::abs(z[0]) > 1e-8) {
        const Complex rot = std::polar(1.0, gauge_arg - std::arg(z[0]));
        for (auto& zi : z) zi *= rot;
    }
    return z;
}

// Residual stacked with the constraint rows (center of mass, inertia, and a
// rotational gauge pinned to the seed direction of z_1).  The stacked map has
// full column rank at a nondegenerate central configuration, which is what
// the plain residual Jacobian lacks: rotation and scaling span its kernel.
Eigen::Matrix<double, 12, 1> stacked_residual(const MassVector& m, const PositionVector& z,
                                              Complex gauge_dir) {
    Eigen::Matrix<double, 12, 1> f;
    f.head<8>() = flatten(cc_residual(Configuration{m, z}));
    const Complex center = weighted_center(m, z);
    f[8] = center.real();
    f[9] = center.imag();
    f[10] = inertia2(m, z) - 1.0;
    f[11] = std::imag(std::conj(gauge_dir) * z[0]);
    return f;
}

}  // namespace

CentralConfiguration solve_cc(const MassVector& masses, const Configuration& seed,
                              double tol, int max_iter) {
    MassVector m = masses;
    double total = 0.0;
    for (double mi : m) {
        if (!(mi > 0.0)) throw InvalidMass("masses must be strictly positive");
        total += mi;
    }
    for (double& mi : m) mi /= total;

    const double gauge_arg = std::arg(seed.positions[0]);
    const Complex gauge_dir = std::polar(1.0, gauge_arg);
    PositionVector z = project(m, seed.positions, gauge_arg);

    SolverStats stats;
    const double fd_step = 1e-6;

    for (int iter = 0; iter <= max_iter; ++iter) {
        const double rnorm = cc_residual_norm(Configuration{m, z});
        stats.iterations = iter;
        stats.residual_history.push_back(rnorm);
        if (rnorm <= tol) {
            Configuration cfg{m, z};
            CentralConfiguration cc;
            cc.config = cfg;
            cc.mu = potential(cfg) / inertia2(m, z);
            cc.residual_norm = rnorm;
            cc.B = build_B(cfg);
            cc.D = build_D(cfg);
            cc.collinear = is_collinear(cfg);
            cc.stats = std::move(stats);
            return cc;
        }
        if (iter == max_iter) break;

        // Gauss-Newton on the stacked residual; finite-difference Jacobian
        const Eigen::Matrix<double, 12, 1> f = stacked_residual(m, z, gauge_dir);
        Eigen::Matrix<double, 12, 8> jac;
        const Eigen::Matrix<double, 8, 1> x = flatten(z);
        for (int k = 0; k < 8; ++k) {
            Eigen::Matrix<double, 8, 1> xp = x, xm = x;
            xp[k] += fd_step;
            xm[k] -= fd_step;
            jac.col(k) = (stacked_residual(m, unflatten(xp), gauge_dir) -
                          stacked_residual(m, unflatten(xm), gauge_dir)) /
                         (2.0 * fd_step);
        }

        Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 12, 8>> qr(jac);
        qr.setThreshold(1e-10);
        if (qr.rank() < 8)
            throw SingularJacobian("gauge-fixed Jacobian rank " + std::to_string(qr.rank()) +
                                   ": configuration is degenerate");
        const Eigen::Matrix<double, 8, 1> step = qr.solve(-f);

        // backtracking on the plain residual norm; keep the best iterate seen
        double lambda = 1.0;
        PositionVector z_best = z;
        double best = rnorm;
        for (int halvings = 0; halvings < 40; ++halvings) {
            const PositionVector z_try = project(m, unflatten(x + lambda * step), gauge_arg);
            const double r_try = cc_residual_norm(Configuration{m, z_try});
            if (r_try < best) {
                best = r_try;
                z_best = z_try;
            }
            if (r_try <= (1.0 - 1e-4 * lambda) * rnorm) break;
            lambda *= 0.5;
        }
        z = z_best;
    }
    throw NoConvergence("no convergence to tol after " + std::to_string(max_iter) + " iterations");
}

CentralConfiguration certify_cc(const Configuration& config, double tol) {
    CentralConfiguration cc;
    cc.config = config;
    cc.residual_norm = cc_residual_norm(config);
    if (cc.residual_norm > tol)
        throw NoConvergence("configuration is not central to the requested tolerance");
    cc.mu = potential(config) / inertia2(config.masses, config.positions);
    cc.B = build_B(config);
    cc.D = build_D(config);
    cc.collinear = is_collinear(config);
    return cc;
}

Family family_from_string(const std::string& name) {
    if (name == "square") return Family::square;
    if (name == "collinear") return Family::collinear;
    if (name == "triangle_plus_center") return Family::triangle_plus_center;
    if (name == "custom") return Family::custom;
    throw std::invalid_argument("unknown family: " + name);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::square: return "square";
        case Family::collinear: return "collinear";
        case Family::triangle_plus_center: return "triangle_plus_center";
        case Family::custom: return "custom";
    }
    return "custom";
}

Configuration family_seed(Family f, const MassVector& masses) {
    PositionVector z;
    switch (f) {
        case Family::square:
            z = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
            break;
        case Family::collinear:
            z = {Complex(-1.5, 0), Complex(-0.5, 0), Complex(0.5, 0), Complex(1.5, 0)};
            break;
        case Family::triangle_plus_center: {
            const double base = M_PI / 2.0;
            for (int i = 0; i < 3; ++i) z[i] = std::polar(1.0, base + i * 2.0 * M_PI / 3.0);
            z[3] = Complex(0, 0);
            break;
        }
        case Family::custom:
            throw std::invalid_argument("custom family requires explicit positions");
    }
    return normalize(masses, z);
}

MassVector family_default_masses(Family) { return {0.25, 0.25, 0.25, 0.25}; }

}  // namespace ere4
