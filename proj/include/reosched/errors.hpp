#ifndef REOSCHED_ERRORS_HPP
#define REOSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reosched {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad scenario / grid / slot configuration (dimension mismatches, non-divisible
// horizons, invalid counts).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Orbit below the minimum supported altitude or otherwise unusable elements.
class InvalidOrbitError : public Error {
public:
    using Error::Error;
};

// Mismatched series lengths fed to a geometric operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Transfer type outside the supported slot-grid geometry (e.g. radius change).
class UnsupportedTransferError : public Error {
public:
    using Error::Error;
};

// Model assembly failed (missing tensors, inconsistent carry state, ...).
class BuildError : public Error {
public:
    using Error::Error;
};

// Model is structurally infeasible (e.g. a satellite with no finite-cost arc).
class InfeasibleModelError : public Error {
public:
    using Error::Error;
};

// Solver solution could not be turned into a schedule (integrality or
// re-simulation mismatch).
class ExtractionError : public Error {
public:
    using Error::Error;
};

// Stage-wise schedule assembly failed (overlapping or missing stages).
class AssemblyError : public Error {
public:
    using Error::Error;
};

// Malformed input files (track CSV, caches, config schema).
class IngestionError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

// A condition that feasible inputs can never trigger.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace reosched

#endif // REOSCHED_ERRORS_HPP
