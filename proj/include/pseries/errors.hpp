#ifndef PSERIES_ERRORS_HPP
#define PSERIES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pseries {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZeroError : public Error {
public:
    DivisionByZeroError() : Error("division by zero") {}
};

class DegreeMismatchError : public Error {
public:
    explicit DegreeMismatchError(const std::string& what) : Error(what) {}
};

class ContextMismatchError : public Error {
public:
    ContextMismatchError() : Error("power series belong to different contexts") {}
};

class BadIndexError : public Error {
public:
    explicit BadIndexError(const std::string& what) : Error(what) {}
};

// Weierstrass preparation requires some coefficient to be a unit.
class NotGeneralError : public Error {
public:
    NotGeneralError()
        : Error("UPoPS vanishes at the origin; apply a shift before preparation") {}
};

// The residual univariate polynomial has no rational linear factorization.
class NonSplittingError : public Error {
public:
    explicit NonSplittingError(const std::string& what) : Error(what) {}
};

class NotMonicError : public Error {
public:
    NotMonicError() : Error("Hensel factorization requires a monic UPoPS") {}
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + what),
          line(line), column(column) {}
    int line;
    int column;
};

class PipelineError : public Error {
public:
    explicit PipelineError(const std::string& what) : Error(what) {}
};

} // namespace pseries

#endif
