// Command-line front end: solve central configurations, reduce the linearized
// system, run Floquet stability, and scan parameter grids.
//
// Exit codes: 0 ok, 2 bad input/schema, 3 solver did not converge,
// 4 collinear configuration, 5 integrator failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ere4/errors.hpp"
#include "ere4/pipeline.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitCollinear = 4;
constexpr int kExitIntegrator = 5;

struct CommonArgs {
    std::string input;
    std::string family = "custom";
    std::string out;
    double tol = 1e-12;
    double p = 1.0;
    double e = 0.0;
    int threads = 1;
};

void add_input_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--input,-i", args.input, "JSON file with masses (and optional positions)");
    cmd->add_option("--family", args.family,
                    "seed family: square | collinear | triangle_plus_center | custom");
    cmd->add_option("--tol", args.tol, "solver residual tolerance");
    cmd->add_option("--out,-o", args.out, "output path (stdout if omitted)");
}

// masses + positions resolution shared by solve-cc / reduce / stability
struct ResolvedInput {
    ere4::MassVector masses;
    std::optional<ere4::PositionVector> positions;
    ere4::Family family;
};

ResolvedInput resolve_input(const CommonArgs& args) {
    ResolvedInput r;
    r.family = ere4::family_from_string(args.family);
    if (!args.input.empty()) {
        const ere4::InputConfig cfg = ere4::load_input_config(args.input);
        r.masses = cfg.masses;
        r.positions = cfg.positions;
        if (!r.positions && r.family == ere4::Family::custom)
            throw std::invalid_argument("custom family requires positions in the input file");
    } else {
        if (r.family == ere4::Family::custom)
            throw std::invalid_argument("either --input or a named --family is required");
        r.masses = ere4::family_default_masses(r.family);
    }
    return r;
}

void deliver(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        ere4::write_file(out_path, text);
}

int dispatch(const std::string& cmd, const CommonArgs& args) {
    if (cmd == "solve-cc") {
        const ResolvedInput in = resolve_input(args);
        const ere4::Configuration seed =
            in.positions ? ere4::normalize(in.masses, *in.positions)
                         : ere4::family_seed(in.family, in.masses);
        deliver(args.out, ere4::solve_cc_json(ere4::solve_cc(in.masses, seed, args.tol)));
        return 0;
    }
    if (cmd == "reduce") {
        const ResolvedInput in = resolve_input(args);
        deliver(args.out,
                ere4::reduce_json(ere4::run_reduce(in.masses, in.positions, in.family, args.tol, args.p)));
        return 0;
    }
    if (cmd == "stability") {
        if (args.e < 0.0 || args.e > 0.99)
            throw std::invalid_argument("eccentricity must lie in [0, 0.99]");
        const ResolvedInput in = resolve_input(args);
        deliver(args.out, ere4::stability_json(ere4::run_stability(in.masses, in.positions, in.family,
                                                                   args.tol, args.e, args.p)));
        return 0;
    }
    if (cmd == "scan") {
        if (args.input.empty()) throw std::invalid_argument("scan requires --input <spec.json>");
        const ere4::ScanSpec spec = ere4::load_scan_spec(args.input);
        const auto rows = ere4::run_scan(spec, args.threads);
        deliver(args.out.empty() ? spec.out : args.out, ere4::scan_csv(spec, rows));
        return 0;
    }
    throw std::invalid_argument("unknown subcommand");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-body elliptic relative equilibria: reduction and linear stability"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* solve = app.add_subcommand("solve-cc", "solve for a central configuration");
    add_input_flags(solve, args);
    CLI::App* reduce = app.add_subcommand("reduce", "central configuration + reduction report");
    add_input_flags(reduce, args);
    reduce->add_option("--p", args.p, "semi-latus rectum (gauge, default 1)");
    CLI::App* stab = app.add_subcommand("stability", "monodromy of the essential system");
    add_input_flags(stab, args);
    stab->add_option("--p", args.p, "semi-latus rectum (gauge, default 1)");
    stab->add_option("--e", args.e, "eccentricity in [0, 0.99]");
    CLI::App* scan = app.add_subcommand("scan", "grid scan driven by a spec file");
    scan->add_option("--input,-i", args.input, "scan spec JSON")->required();
    scan->add_option("--out,-o", args.out, "output CSV path (stdout if omitted)");
    scan->add_option("--threads", args.threads, "worker pool size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex);
        return code == 0 ? 0 : kExitSchema;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, args);
    } catch (const ere4::NoConvergence& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNoConvergence;
    } catch (const ere4::CollinearDegeneracy& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitCollinear;
    } catch (const ere4::StepUnderflow& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIntegrator;
    } catch (const ere4::CollisionDetected& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIntegrator;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
