#pragma once

#include <stdexcept>
#include <string>

namespace copent {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input file could not be read or written.
class IOError : public Error {
public:
  using Error::Error;
};

// Malformed or inconsistent data (ragged rows, unparseable cells, masked reads).
class DataError : public Error {
public:
  using Error::Error;
};

// A precondition on an argument was violated (k out of range, mismatched T, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

// The input is valid but the estimate is undefined (e.g. all points identical).
class DegenerateInput : public Error {
public:
  using Error::Error;
};

}  // namespace copent
