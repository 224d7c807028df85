#ifndef ERE4_PIPELINE_HPP
#define ERE4_PIPELINE_HPP

#include <array>
#include <string>
#include <vector>

#include "ere4/floquet.hpp"
#include "ere4/json_io.hpp"
#include "ere4/orbit.hpp"

namespace ere4 {

/// Everything the reduce stage computes for one configuration, including the
/// audit quantities that gate a report.
struct ReducedCase {
    CentralConfiguration cc;
    ReductionBasis basis;
    BetaSet betas;
    double p = 1.0;
    double atma = 0.0;                         // max |A^T M A - I|
    double unitarity = 0.0;                    // max |conj(v)^T M~ v - I|
    std::array<double, 4> d_spectrum{};        // eigenvalues of D, ascending
    double fg_defect = 0.0;
    double fd_hessian_defect = 0.0;            // FD oracle vs closed-form blocks
};

/// Solve (or accept) the configuration and run the full reduction.
/// Throws CollinearDegeneracy for collinear solutions.
ReducedCase run_reduce(const MassVector& masses, const std::optional<PositionVector>& positions,
                       Family family, double tol, double p);

struct StabilityCase {
    ReducedCase reduced;
    OrbitParams params;
    MonodromyReport essential;
    bool decoupled_valid = false;  // |beta12| <= 1e-10
    MonodromyReport mode1, mode2;
};

StabilityCase run_stability(const MassVector& masses, const std::optional<PositionVector>& positions,
                            Family family, double tol, double e, double p,
                            const IntegrateOptions& opts = {});

/// One grid point of a scan; failed points carry the error message instead of
/// numbers so partial results still flush.
struct ScanRow {
    double mass_param = 0.0;
    double e = 0.0;
    bool ok = false;
    std::string error;
    double mu = 0.0;
    double beta2 = 0.0;
    double abs_beta11 = 0.0, abs_beta12 = 0.0, abs_beta22 = 0.0;
    std::array<double, 8> moduli{};  // descending
    std::string stability;
    double symplectic_defect = 0.0;
};

/// Evaluates every (mass, e) grid point; points run on a worker pool of the
/// requested size and rows come back in grid order regardless of scheduling.
std::vector<ScanRow> run_scan(const ScanSpec& spec, int threads);

// report emission (deterministic byte output)
std::string solve_cc_json(const CentralConfiguration& cc);
std::string reduce_json(const ReducedCase& r);
std::string stability_json(const StabilityCase& s);
std::string scan_csv(const ScanSpec& spec, const std::vector<ScanRow>& rows);

}  // namespace ere4

#endif
