#pragma once

#include <stdexcept>
#include <string>

namespace lintgrade {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document (registry file, linter output, request body).
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally well-formed input that violates an invariant
// (dangling subcategory reference, duplicate rule key, bad threshold order).
class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class SourceNotFound : public IoError {
public:
    using IoError::IoError;
};

class ToolNotFound : public Error {
public:
    using Error::Error;
};

class ToolTimeout : public Error {
public:
    using Error::Error;
};

class SpawnFailure : public Error {
public:
    using Error::Error;
};

// Issue refers to a subcategory the registry does not know about.
// This is a programming error, not a data error.
class UnknownSubcategory : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace lintgrade
