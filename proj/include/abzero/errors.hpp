#pragma once

#include <stdexcept>
#include <string>

namespace abz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gamma evaluated at (or within the guard margin of) a non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested at (or too close to) a solenoid center.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

class ExtractionError : public Error {
 public:
  using Error::Error;
};

class DegenerateSystemError : public Error {
 public:
  using Error::Error;
};

class StepError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace abz
