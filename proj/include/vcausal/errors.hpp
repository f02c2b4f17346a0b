#pragma once

#include <stdexcept>
#include <string>

namespace vcausal {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An observable whose square is not the identity (within tolerance).
class NotInvolution : public Error {
public:
    explicit NotInvolution(const std::string& what = "observable is not an involution") : Error(what) {}
};

/// A correlator term or expectation listed the same party twice.
class DuplicateParty : public Error {
public:
    explicit DuplicateParty(const std::string& what = "duplicate party in term") : Error(what) {}
};

class EmptySubset : public Error {
public:
    explicit EmptySubset(const std::string& what = "party subset is empty") : Error(what) {}
};

/// Conditioning on an outcome/setting assignment of probability zero.
class ZeroProbabilityCondition : public Error {
public:
    explicit ZeroProbabilityCondition(const std::string& what = "conditioning event has probability zero") : Error(what) {}
};

class WrongShape : public Error {
public:
    explicit WrongShape(const std::string& what = "behavior has the wrong shape") : Error(what) {}
};

/// A locality question was asked of a signalling behavior.
class SignallingInput : public Error {
public:
    explicit SignallingInput(const std::string& what = "input behavior is signalling") : Error(what) {}
};

/// A summed-out marginal varied with an absent party's setting.
class SignallingAmbiguity : public Error {
public:
    explicit SignallingAmbiguity(const std::string& what = "correlator is ambiguous for signalling behavior") : Error(what) {}
};

class Unbounded : public Error {
public:
    explicit Unbounded(const std::string& what = "linear program is unbounded") : Error(what) {}
};

class InconsistentMarginals : public Error {
public:
    explicit InconsistentMarginals(const std::string& what = "marginals disagree on shared parties") : Error(what) {}
};

class UnknownLabel : public Error {
public:
    explicit UnknownLabel(const std::string& what = "unknown event label") : Error(what) {}
};

class SuperluminalFrame : public Error {
public:
    explicit SuperluminalFrame(const std::string& what = "frame velocity must satisfy |u| < c") : Error(what) {}
};

class CyclicConnectivity : public Error {
public:
    explicit CyclicConnectivity(const std::string& what = "influence pattern contains a cycle") : Error(what) {}
};

class InvalidConfig : public Error {
public:
    explicit InvalidConfig(const std::string& what = "invalid space-time configuration") : Error(what) {}
};

class DegenerateTiming : public Error {
public:
    explicit DegenerateTiming(const std::string& what = "events admit no finite connecting speed") : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what = "parse error") : Error(what) {}
};

} // namespace vcausal
