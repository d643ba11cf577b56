#ifndef PAMED_ERRORS_HPP
#define PAMED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pamed {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph construction
struct NonBipartite : Error {
    explicit NonBipartite(const std::string& msg) : Error("NonBipartite: " + msg) {}
};
struct DegenerateBond : Error {
    explicit DegenerateBond(const std::string& msg) : Error("DegenerateBond: " + msg) {}
};

// Basis / operators
struct CapacityExceeded : Error {
    explicit CapacityExceeded(const std::string& msg) : Error("CapacityExceeded: " + msg) {}
};
struct BadPopcount : Error {
    explicit BadPopcount(const std::string& msg) : Error("BadPopcount: " + msg) {}
};
struct SiteOutOfRange : Error {
    explicit SiteOutOfRange(const std::string& msg) : Error("SiteOutOfRange: " + msg) {}
};
struct NonSquareSector : Error {
    explicit NonSquareSector(const std::string& msg) : Error("NonSquareSector: " + msg) {}
};

// Operator assembly / application
struct SectorMismatch : Error {
    explicit SectorMismatch(const std::string& msg) : Error("SectorMismatch: " + msg) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("DimensionMismatch: " + msg) {}
};

// Eigensolver
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg, int iterations_done = 0)
        : Error("NoConvergence: " + msg), iterations(iterations_done) {}
    int iterations;
};

// Configuration
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError: " + msg) {}
};

}  // namespace pamed

#endif  // PAMED_ERRORS_HPP
