#pragma once

#include <stdexcept>
#include <string>

namespace igdyn {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class QuadratureNotConverged : public Error {
public:
    using Error::Error;
};

class PriorTooNarrow : public Error {
public:
    using Error::Error;
};

class SingularMetric : public Error {
public:
    using Error::Error;
};

class BoundaryTooClose : public Error {
public:
    using Error::Error;
};

class DegeneratePlane : public Error {
public:
    using Error::Error;
};

class StepUnderflow : public Error {
public:
    using Error::Error;
};

class CurvatureEvaluationFailed : public Error {
public:
    using Error::Error;
};

class NonNegativeCurvature : public Error {
public:
    using Error::Error;
};

class WindowTooShort : public Error {
public:
    using Error::Error;
};

class NonPositiveIntensity : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class NonPositiveVolume : public Error {
public:
    using Error::Error;
};

class InconsistentCutoff : public Error {
public:
    using Error::Error;
};

class ConfigParseError : public Error {
public:
    ConfigParseError(const std::string& msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    explicit ConfigParseError(const std::string& msg) : Error(msg), line_(0), column_(0) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class ScenarioFailed : public Error {
public:
    using Error::Error;
};

} // namespace igdyn
