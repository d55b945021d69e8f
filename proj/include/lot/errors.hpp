#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lot {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed expression text. Carries the byte offset of the offending
// token and the set of token descriptions that would have been accepted.
class SyntaxError : public Error {
public:
    SyntaxError(std::string message, std::size_t byte_offset,
                std::vector<std::string> expected = {})
        : Error(format(message, byte_offset, expected)),
          byte_offset_(byte_offset),
          expected_(std::move(expected)) {}

    std::size_t byte_offset() const { return byte_offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& message, std::size_t offset,
                              const std::vector<std::string>& expected) {
        std::string out = message + " at byte " + std::to_string(offset);
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i > 0) out += expected.size() == 2 ? " or " : ", ";
                out += expected[i];
            }
            out += ")";
        }
        return out;
    }

    std::size_t byte_offset_;
    std::vector<std::string> expected_;
};

// Truth-table oracle refused: too many distinct atoms to enumerate.
class TooManyAtoms : public Error {
public:
    TooManyAtoms(std::size_t count, std::size_t limit)
        : Error("entailment check over " + std::to_string(count) +
                " atoms exceeds the truth-table bound of " + std::to_string(limit)),
          count_(count) {}

    std::size_t count() const { return count_; }

private:
    std::size_t count_;
};

// Symbol referenced by an expression is missing from the symbol table.
class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& symbol)
        : Error("unknown proposition symbol '" + symbol + "'"), symbol_(symbol) {}

    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

// Dataset file absent.
class MissingFile : public Error {
public:
    explicit MissingFile(const std::string& path) : Error("missing file: " + path) {}
};

// Dataset record violates the expected schema; carries the offending id.
class SchemaError : public Error {
public:
    SchemaError(std::string record_id, const std::string& message)
        : Error("record '" + record_id + "': " + message), record_id_(std::move(record_id)) {}

    const std::string& record_id() const { return record_id_; }

private:
    std::string record_id_;
};

// Requested report/run does not exist.
class NotFound : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// gateway errors

class GatewayError : public Error {
public:
    using Error::Error;
};

// Missing or rejected credentials; never retried.
class AuthError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

// Provider throttled the request and retries were exhausted.
class RateLimited : public GatewayError {
public:
    using GatewayError::GatewayError;
};

// Replay-mode lookup found no entry for the request fingerprint.
class ReplayMiss : public GatewayError {
public:
    explicit ReplayMiss(const std::string& fingerprint)
        : GatewayError("no transcript entry for fingerprint " + fingerprint),
          fingerprint_(fingerprint) {}

    const std::string& fingerprint() const { return fingerprint_; }

private:
    std::string fingerprint_;
};

// Network failure or malformed provider response.
class TransportError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

}  // namespace lot
