#pragma once

#include <stdexcept>
#include <string>

namespace hotshare {

// Base for all domain errors so the CLI can map them to exit status 2
// (input problems) uniformly.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- validation -------------------------------------------------------------
struct CoverageViolation : Error { using Error::Error; }; // v <= 2t
struct MassViolation     : Error { using Error::Error; }; // masses negative or not summing to 1
struct DensityViolation  : Error { using Error::Error; }; // density does not integrate to 1
struct DomainError       : Error { using Error::Error; }; // theta outside [0,1], negative price, ...

// --- solver -----------------------------------------------------------------
struct NoPureEquilibrium : Error { using Error::Error; };
struct NonConvergence    : Error { using Error::Error; };

// --- lookups and parameters --------------------------------------------------
struct UnknownScenario : Error { using Error::Error; };
struct BadParam        : Error { using Error::Error; };
struct BadMasses       : Error { using Error::Error; };
struct BadRange        : Error { using Error::Error; };
struct ConfigMismatch  : Error { using Error::Error; };
struct ParseError      : Error { using Error::Error; };

} // namespace hotshare
