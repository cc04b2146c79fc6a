#ifndef ABELTRACE_ERRORS_HPP
#define ABELTRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abeltrace {

/// Base class for all library errors. `stage` names the pipeline step that
/// raised the error so batch reports can point at it.
class Error : public std::runtime_error {
public:
    Error(std::string stage, std::string reason, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)), reason_(std::move(reason)) {}

    const std::string& stage() const { return stage_; }
    const std::string& reason() const { return reason_; }

private:
    std::string stage_;
    std::string reason_;
};

/// Mismatched vector lengths, variable counts or index ranges.
class ShapeError : public Error {
public:
    ShapeError(const std::string& stage, const std::string& message)
        : Error(stage, "ShapeError", message) {}
};

/// A point left the validity region of a germ or series.
class DomainError : public Error {
public:
    DomainError(const std::string& stage, const std::string& message)
        : Error(stage, "DomainError", message) {}
};

/// Continuation failure. `waypoint` is the index of the failing node on the
/// parameter path; `germ` is filled in by callers that track several germs.
class TrackError : public Error {
public:
    enum class Kind { NewtonDivergence, LeftGermDomain, TransversalityLoss };

    TrackError(Kind kind, int waypoint, const std::string& message)
        : Error("track_point", kind_name(kind), message), kind_(kind), waypoint_(waypoint) {}

    Kind kind() const { return kind_; }
    int waypoint() const { return waypoint_; }
    int germ() const { return germ_; }
    void set_germ(int g) { germ_ = g; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::NewtonDivergence: return "NewtonDivergence";
            case Kind::LeftGermDomain: return "LeftGermDomain";
            default: return "TransversalityLoss";
        }
    }

private:
    Kind kind_;
    int waypoint_;
    int germ_ = -1;
};

/// Least-squares / degree-probing failures.
class FitError : public Error {
public:
    enum class Kind { RankDeficient, FitResidualExceeded, NoPolynomialFit };

    FitError(Kind kind, const std::string& stage, const std::string& message)
        : Error(stage, kind_name(kind), message), kind_(kind) {}

    Kind kind() const { return kind_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::RankDeficient: return "RankDeficient";
            case Kind::FitResidualExceeded: return "FitResidualExceeded";
            default: return "NoPolynomialFit";
        }
    }

private:
    Kind kind_;
};

/// Polynomial system solving failures.
class SolveError : public Error {
public:
    enum class Kind { GenericityFailure, UnsupportedDimension, ZeroJacobian, VanishingCoordinate };

    SolveError(Kind kind, const std::string& stage, const std::string& message)
        : Error(stage, kind_name(kind), message), kind_(kind) {}

    Kind kind() const { return kind_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::GenericityFailure: return "GenericityFailure";
            case Kind::UnsupportedDimension: return "UnsupportedDimension";
            case Kind::ZeroJacobian: return "ZeroJacobian";
            default: return "VanishingCoordinate";
        }
    }

private:
    Kind kind_;
};

/// Reconstruction pipeline failures that are mathematical negatives rather
/// than operational faults.
class ValidationError : public Error {
public:
    enum class Kind { ValidationFailed, DegreeMismatch, ExhaustedAttempts };

    ValidationError(Kind kind, const std::string& stage, const std::string& message)
        : Error(stage, kind_name(kind), message), kind_(kind) {}

    Kind kind() const { return kind_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::ValidationFailed: return "ValidationFailed";
            case Kind::DegreeMismatch: return "DegreeMismatch";
            default: return "ExhaustedAttempts";
        }
    }

private:
    Kind kind_;
};

/// Problem-file parsing errors; the message names the offending field.
class ParseError : public Error {
public:
    ParseError(const std::string& message) : Error("parse", "ParseError", message) {}
};

} // namespace abeltrace

#endif
