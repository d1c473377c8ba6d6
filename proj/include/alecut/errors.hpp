#ifndef ALECUT_ERRORS_HPP
#define ALECUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace alecut {

// Invalid user-supplied configuration (bad mesh resolution, dt <= 0, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The mesh is too coarse to represent the interface (an edge is crossed
// more than once, or a cut pattern is inconsistent).
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// A sub-element collapsed to non-positive volume after node placement.
class DegenerateCutError : public std::runtime_error {
public:
    explicit DegenerateCutError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite input data or size mismatch during assembly.
class AssemblyError : public std::runtime_error {
public:
    explicit AssemblyError(const std::string& what) : std::runtime_error(what) {}
};

// Structural violation inside a linear solver (singular block, empty row).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// I/O failure while writing output files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace alecut

#endif
