#pragma once

#include <stdexcept>
#include <string>

namespace kiri {

// Error taxonomy mirrors the CLI exit-code classes: usage (2), I/O (3),
// format (4), numeric (5).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input text, corpus lines, model files, label misalignment.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Non-finite scores, diverging training, undefined statistics.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace kiri
