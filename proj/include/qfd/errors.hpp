#pragma once

#include <stdexcept>
#include <string>

namespace qfd {

// Base for every error raised by the library. The CLI maps subclasses to
// exit statuses, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter or input outside its documented range.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument sits on a pole of the q-gamma function.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Two operands were built with different q.
class MismatchedParameter : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration requested beyond the hard row cap.
class LimitError : public Error {
public:
    using Error::Error;
};

/// A series cannot be truncated at the window edge without hiding mass.
class TailError : public Error {
public:
    using Error::Error;
};

/// Condition requested for a p-regime it is not defined in.
class InvalidCondition : public Error {
public:
    using Error::Error;
};

} // namespace qfd
