#pragma once

#include <stdexcept>
#include <string>

namespace csmcg {

enum class ErrorKind {
    InvalidArgument,
    Domain,
    Resource,
    Truncation,
    Inconsistent,
    Unsupported,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace csmcg
