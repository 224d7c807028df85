#include "ere4/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ere4/errors.hpp"

namespace ere4 {

namespace {

constexpr double kDecouplingTol = 1e-10;
constexpr double kFdStep = 1e-5;

MassVector triangle_masses(double center_mass) {
    const double mv = (1.0 - center_mass) / 3.0;
    return {mv, mv, mv, center_mass};
}

void emit_monodromy(JsonWriter& w, const MonodromyReport& rep) {
    w.begin_object();
    w.key("system").text(to_string(rep.system_kind));
    w.key("eigenvalues").begin_array();
    for (const Complex& l : rep.eigenvalues) w.complex_pair(l);
    w.end_array();
    std::vector<double> moduli;
    for (const Complex& l : rep.eigenvalues) moduli.push_back(std::abs(l));
    std::sort(moduli.rbegin(), moduli.rend());
    w.key("moduli").real_array(moduli.data(), moduli.size());
    w.key("stability").text(to_string(rep.stability));
    w.key("symplectic_defect").number(rep.symplectic_defect);
    w.key("det_defect").number(rep.det_defect);
    w.key("integrator").begin_object();
    w.key("steps").integer(static_cast<long long>(rep.integrator.steps));
    w.key("rtol").number(rep.integrator.rtol);
    w.key("atol").number(rep.integrator.atol);
    w.end_object();
    w.key("matrix").begin_array();
    for (Eigen::Index i = 0; i < rep.matrix.rows(); ++i) {
        w.begin_array();
        for (Eigen::Index j = 0; j < rep.matrix.cols(); ++j) w.number(rep.matrix(i, j));
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

void emit_cc(JsonWriter& w, const CentralConfiguration& cc) {
    w.begin_object();
    w.key("masses").real_array(cc.config.masses.data(), 4);
    w.key("positions").begin_array();
    for (const Complex& z : cc.config.positions) w.complex_pair(z);
    w.end_array();
    w.key("mu").number(cc.mu);
    w.key("trD").number(cc.D.trace());
    w.key("residual").number(cc.residual_norm);
    w.key("collinear").boolean(cc.collinear);
    w.key("iterations").integer(cc.stats.iterations);
    w.end_object();
}

}  // namespace

ReducedCase run_reduce(const MassVector& masses, const std::optional<PositionVector>& positions,
                       Family family, double tol, double p) {
    Configuration seed = positions ? normalize(masses, *positions) : family_seed(family, masses);

    ReducedCase out;
    out.p = p;
    out.cc = solve_cc(masses, seed, tol);
    out.basis = build_basis(out.cc);  // throws CollinearDegeneracy when collinear
    out.betas = compute_betas(out.cc, out.basis);
    out.atma = atma_defect(out.cc, out.basis);
    out.unitarity = unitarity_defect(out.cc, out.basis);
    out.fg_defect = fg_identity_defect(out.cc, out.basis, out.betas);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(out.cc.dtilde());
    for (int i = 0; i < 4; ++i) out.d_spectrum[i] = es.eigenvalues()[i];

    const TransformedPotential pot(out.cc, out.basis);
    const double sigma = out.cc.sigma(p);
    out.fd_hessian_defect =
        (pot.hessian_fd(sigma, kFdStep) - analytic_hessian(out.cc.mu, sigma, out.betas))
            .cwiseAbs()
            .maxCoeff();
    return out;
}

StabilityCase run_stability(const MassVector& masses, const std::optional<PositionVector>& positions,
                            Family family, double tol, double e, double p,
                            const IntegrateOptions& opts) {
    StabilityCase out;
    out.reduced = run_reduce(masses, positions, family, tol, p);
    out.params = OrbitParams{e, p};

    const EssentialSystem sys = make_essential(out.params, out.reduced.betas);
    out.essential = monodromy(make_essential_system(sys), opts);
    out.decoupled_valid = std::abs(out.reduced.betas.beta12) <= kDecouplingTol;
    if (out.decoupled_valid) {
        out.mode1 = monodromy(make_decoupled_system(sys, 1), opts);
        out.mode2 = monodromy(make_decoupled_system(sys, 2), opts);
    }
    return out;
}

std::vector<ScanRow> run_scan(const ScanSpec& spec, int threads) {
    const std::size_t n_mass = spec.mass_params.size();
    const std::size_t n_e = spec.e_grid.size();
    if (n_mass == 0 || n_e == 0) throw std::invalid_argument("scan grids must be non-empty");
    std::vector<ScanRow> rows(n_mass * n_e);

    auto eval_point = [&](std::size_t idx) {
        const std::size_t mi = idx / n_e, ei = idx % n_e;
        ScanRow& row = rows[idx];
        row.mass_param = spec.mass_params[mi];
        row.e = spec.e_grid[ei];
        try {
            const MassVector masses = (spec.family == Family::triangle_plus_center)
                                          ? triangle_masses(row.mass_param)
                                          : family_default_masses(spec.family);
            const StabilityCase sc =
                run_stability(masses, std::nullopt, spec.family, spec.tol, row.e, spec.p);
            row.mu = sc.reduced.cc.mu;
            row.beta2 = sc.reduced.betas.beta2;
            row.abs_beta11 = std::abs(sc.reduced.betas.beta11);
            row.abs_beta12 = std::abs(sc.reduced.betas.beta12);
            row.abs_beta22 = std::abs(sc.reduced.betas.beta22);
            std::vector<double> moduli;
            for (const Complex& l : sc.essential.eigenvalues) moduli.push_back(std::abs(l));
            std::sort(moduli.rbegin(), moduli.rend());
            std::copy(moduli.begin(), moduli.end(), row.moduli.begin());
            row.stability = to_string(sc.essential.stability);
            row.symplectic_defect = sc.essential.symplectic_defect;
            row.ok = true;
        } catch (const std::exception& ex) {
            row.ok = false;
            std::string msg = ex.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            row.error = msg;
        }
    };

    const int pool = std::max(1, threads);
    if (pool == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) eval_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < pool; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
                    eval_point(i);
            });
        for (auto& t : workers) t.join();
    }
    return rows;
}

std::string solve_cc_json(const CentralConfiguration& cc) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").integer(1);
    w.key("cc");
    emit_cc(w, cc);
    w.end_object();
    return w.str() + "\n";
}

std::string reduce_json(const ReducedCase& r) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").integer(1);
    w.key("cc");
    emit_cc(w, r.cc);
    w.key("basis").begin_object();
    w.key("k").number(r.basis.k);
    w.key("l").complex_pair(r.basis.l);
    w.key("c").real_array(r.basis.v4.data(), 4);
    w.end_object();
    w.key("betas").begin_object();
    w.key("beta1").number(r.betas.beta1);
    w.key("beta2").number(r.betas.beta2);
    w.key("beta11").complex_pair(r.betas.beta11);
    w.key("beta12").complex_pair(r.betas.beta12);
    w.key("beta22").complex_pair(r.betas.beta22);
    w.end_object();
    w.key("audits").begin_object();
    w.key("ATMA_defect").number(r.atma);
    w.key("unitarity_defect").number(r.unitarity);
    w.key("D_spectrum").real_array(r.d_spectrum.data(), 4);
    w.key("FG_defect").number(r.fg_defect);
    w.key("fd_hessian_defect").number(r.fd_hessian_defect);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string stability_json(const StabilityCase& s) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").integer(1);
    w.key("e").number(s.params.e);
    w.key("p").number(s.params.p);
    w.key("betas").begin_object();
    w.key("beta1").number(s.reduced.betas.beta1);
    w.key("beta2").number(s.reduced.betas.beta2);
    w.key("beta11").complex_pair(s.reduced.betas.beta11);
    w.key("beta12").complex_pair(s.reduced.betas.beta12);
    w.key("beta22").complex_pair(s.reduced.betas.beta22);
    w.end_object();
    w.key("essential");
    emit_monodromy(w, s.essential);
    if (s.decoupled_valid) {
        w.key("decoupled").begin_object();
        w.key("w1");
        emit_monodromy(w, s.mode1);
        w.key("w2");
        emit_monodromy(w, s.mode2);
        w.end_object();
    }
    w.end_object();
    return w.str() + "\n";
}

std::string scan_csv(const ScanSpec& spec, const std::vector<ScanRow>& rows) {
    std::string out =
        "family,mass_param,e,p,mu,beta2,abs_beta11,abs_beta12,abs_beta22,"
        "mod1,mod2,mod3,mod4,mod5,mod6,mod7,mod8,stability,symplectic_defect,error\n";
    for (const ScanRow& r : rows) {
        out += family_to_string(spec.family);
        out += ',' + fmt17(r.mass_param) + ',' + fmt17(r.e) + ',' + fmt17(spec.p) + ',';
        if (r.ok) {
            out += fmt17(r.mu) + ',' + fmt17(r.beta2) + ',' + fmt17(r.abs_beta11) + ',' +
                   fmt17(r.abs_beta12) + ',' + fmt17(r.abs_beta22);
            for (double m : r.moduli) out += ',' + fmt17(m);
            out += ',' + r.stability + ',' + fmt17(r.symplectic_defect) + ',';
        } else {
            // 15 empty value fields, then the error column
            out += std::string(15, ',');
            out += r.error;
        }
        out += '\n';
    }
    return out;
}

}  // namespace ere4
