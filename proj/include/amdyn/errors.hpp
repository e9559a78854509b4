// Exception taxonomy shared by all amdyn modules.  Every error carries a
// stable type name (used by the CLI for structured stderr reporting and
// process exit codes) plus a human-readable message.

#ifndef AMDYN_ERRORS_HPP
#define AMDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amdyn {

class Error : public std::runtime_error {
public:
	Error(std::string type, const std::string& msg)
		: std::runtime_error(msg), type_(std::move(type)) {}
	const std::string& type() const noexcept { return type_; }

private:
	std::string type_;
};

// Parameter validation failures (slope ranges, probabilities, bad indices).
class ParameterOutOfRange : public Error {
public:
	explicit ParameterOutOfRange(const std::string& msg)
		: Error("ParameterOutOfRange", msg) {}
};

// Argument outside the mathematical domain of an otherwise valid operation.
class DomainError : public Error {
public:
	explicit DomainError(const std::string& msg) : Error("DomainError", msg) {}
};

// Operation requires the two branch images to be disjoint.
class NotDisjointType : public Error {
public:
	explicit NotDisjointType(const std::string& msg)
		: Error("NotDisjointType", msg) {}
};

// Parameters outside the regime where the requested quantity is defined
// (e.g. contraction ratio past the critical value).
class InvalidRegime : public Error {
public:
	explicit InvalidRegime(const std::string& msg) : Error("InvalidRegime", msg) {}
};

// Root solve failed to bracket a sign change.
class NoRootBracketed : public Error {
public:
	explicit NoRootBracketed(const std::string& msg)
		: Error("NoRootBracketed", msg) {}
};

// Not enough data points / refinement levels for the requested estimate.
class InsufficientData : public Error {
public:
	explicit InsufficientData(const std::string& msg)
		: Error("InsufficientData", msg) {}
};

class InsufficientDepth : public Error {
public:
	explicit InsufficientDepth(const std::string& msg)
		: Error("InsufficientDepth", msg) {}
};

// A ball used for a local dimension fit carries no empirical mass.
class InsufficientMass : public Error {
public:
	explicit InsufficientMass(const std::string& msg)
		: Error("InsufficientMass", msg) {}
};

// Pressure evaluated at or below the divergence point of its domain.
class OutsideDomain : public Error {
public:
	explicit OutsideDomain(const std::string& msg) : Error("OutsideDomain", msg) {}
};

// Conjugacy requested between systems with different resonance data.
class MismatchedResonance : public Error {
public:
	explicit MismatchedResonance(const std::string& msg)
		: Error("MismatchedResonance", msg) {}
};

// Config file rejected (unknown key, missing field, malformed value).
class ConfigError : public Error {
public:
	explicit ConfigError(const std::string& msg) : Error("ConfigError", msg) {}
};

// Output artifact could not be written.
class IoError : public Error {
public:
	explicit IoError(const std::string& msg) : Error("IoError", msg) {}
};

} // namespace amdyn

#endif
