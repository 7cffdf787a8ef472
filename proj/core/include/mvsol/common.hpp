#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace mvsol {

// Base class for all library errors so callers can catch everything at once.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A state violates positivity (density, pressure, or internal energy).
class NonPhysical : public Error {
public:
    explicit NonPhysical(const std::string& what) : Error(what) {}
};

// Input data violates a documented precondition (e.g. p_plus <= p_minus).
class InvalidData : public Error {
public:
    explicit InvalidData(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

// The fan-beta overlap wedge is empty (bad slope configuration).
class EmptyOverlap : public Error {
public:
    explicit EmptyOverlap(const std::string& what) : Error(what) {}
};

// Two fans that must share a t -> 0+ trace do not.
class InitialDataMismatch : public Error {
public:
    explicit InitialDataMismatch(const std::string& what) : Error(what) {}
};

// A refinement step moved the result by more than 10x the reported estimate.
class QuadratureNotConverged : public Error {
public:
    explicit QuadratureNotConverged(const std::string& what) : Error(what) {}
};

// An atomic Young measure contains an atom with non-positive density.
class VacuumAtom : public Error {
public:
    explicit VacuumAtom(const std::string& what) : Error(what) {}
};

// Malformed or out-of-contract configuration input.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Vec8 = std::array<double, 8>;

inline constexpr double kPositivityFloor = 1e-300;

} // namespace mvsol
