#ifndef ERE4_ERRORS_HPP
#define ERE4_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ere4 {

/// Base class for all library errors so callers can catch the whole family.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// configuration construction
struct InvalidMass : Error {
    explicit InvalidMass(const std::string& msg) : Error(msg) {}
};
struct DegenerateGeometry : Error {
    explicit DegenerateGeometry(const std::string& msg) : Error(msg) {}
};

// central-configuration solver
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};
struct SingularJacobian : Error {
    explicit SingularJacobian(const std::string& msg) : Error(msg) {}
};

// basis construction
struct CollinearDegeneracy : Error {
    explicit CollinearDegeneracy(const std::string& msg) : Error(msg) {}
};
struct FGIdentityViolation : Error {
    explicit FGIdentityViolation(const std::string& msg) : Error(msg) {}
};

// dynamics
struct CollisionDetected : Error {
    explicit CollisionDetected(const std::string& msg) : Error(msg) {}
};
struct StepUnderflow : Error {
    explicit StepUnderflow(const std::string& msg) : Error(msg) {}
};

}  // namespace ere4

#endif
