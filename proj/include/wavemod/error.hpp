#pragma once

#include <stdexcept>
#include <string>

namespace wavemod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// symbol of a multiplier is not finite at a lattice point
class SingularSymbolError : public Error {
 public:
  using Error::Error;
};

// derivative of omega requested at xi = 0
class SingularPointError : public Error {
 public:
  using Error::Error;
};

class NearResonanceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCoincidenceError : public Error {
 public:
  using Error::Error;
};

class DependencyError : public Error {
 public:
  using Error::Error;
};

class DepthViolationError : public Error {
 public:
  DepthViolationError(const std::string& what, double guard)
      : Error(what), guard_(guard) {}
  double guard() const { return guard_; }

 private:
  double guard_;
};

class IncommensurabilityError : public Error {
 public:
  using Error::Error;
};

class NumericalAbort : public Error {
 public:
  NumericalAbort(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string key = {})
      : Error(what), line_(line), key_(std::move(key)) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

// a hypothesis of the error experiment (hyperbolicity, depth, resonance) fails
class GateFailure : public Error {
 public:
  GateFailure(const std::string& hypothesis, const std::string& what)
      : Error(what), hypothesis_(hypothesis) {}
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

}  // namespace wavemod
