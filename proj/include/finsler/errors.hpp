#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace finsler {

// A point (x, y) of the conic domain A.
struct Sample {
    std::vector<double> x;
    std::vector<double> y;
};

std::string describe(const Sample& s);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class RankError : public Error {
public:
    using Error::Error;
};

class LevelError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class SymmetryError : public Error {
public:
    using Error::Error;
};

class UnsupportedTransition : public Error {
public:
    using Error::Error;
};

// Object of the wrong ladder level handed to a functional.
class TypeError : public Error {
public:
    using Error::Error;
};

class RegularityError : public Error {
public:
    RegularityError(const std::string& what, Sample where)
        : Error(what + " at " + describe(where)), sample(std::move(where)) {}
    Sample sample;
};

class DivisionError : public Error {
public:
    DivisionError(const std::string& what, Sample where)
        : Error(what + " at " + describe(where)), sample(std::move(where)) {}
    Sample sample;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line_ = 0, int column_ = 0)
        : Error(line_ > 0 ? what + " (line " + std::to_string(line_) + ", column " +
                                std::to_string(column_) + ")"
                          : what),
          line(line_), column(column_) {}
    int line;
    int column;
};

}  // namespace finsler
