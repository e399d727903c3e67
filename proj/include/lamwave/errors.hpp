#pragma once

#include <stdexcept>
#include <string>

namespace lamwave {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gent energy evaluated at or beyond its locking stretch.
class GentLocking : public Error {
public:
    using Error::Error;
};

class InversionFailure : public Error {
public:
    using Error::Error;
};

/// Stretch continuation left the admissible range; carries the locking stretch.
class NoRoot : public Error {
public:
    NoRoot(const std::string& what, double locking_stretch)
        : Error(what), locking_stretch_(locking_stretch) {}
    double locking_stretch() const noexcept { return locking_stretch_; }

private:
    double locking_stretch_;
};

class DispersionTooStrong : public Error {
public:
    using Error::Error;
};

class NoGap : public Error {
public:
    using Error::Error;
};

class NoSoliton : public Error {
public:
    using Error::Error;
};

class NoBound : public Error {
public:
    using Error::Error;
};

class NotReached : public Error {
public:
    using Error::Error;
};

class SingularDeformation : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class CFLViolation : public Error {
public:
    using Error::Error;
};

class Instability : public Error {
public:
    using Error::Error;
};

/// Raised by config validation; the CLI maps it to exit status 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace lamwave
