#pragma once

#include <stdexcept>
#include <string>

namespace sketchkit {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class PositiveDefinitenessError : public Error {
  public:
    using Error::Error;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& what, long line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    long line() const { return line_; }

  private:
    long line_;
};

inline void require_dims(bool ok, const std::string& what) {
    if (!ok) throw DimensionError(what);
}

}  // namespace sketchkit
