#pragma once

#include <stdexcept>
#include <string>

namespace pinchip {

// Base of every error raised by the library. Catching this is enough for
// callers that only need a message.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnknownMaterial : public Error {
public:
  explicit UnknownMaterial(const std::string& name)
    : Error("unknown material '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

class NotAConductor : public Error {
public:
  explicit NotAConductor(const std::string& name)
    : Error("material '" + name + "' is not a conductor") {}
};

class OutOfRange : public Error {
public:
  using Error::Error;
};

class PitchConditionViolated : public Error {
public:
  PitchConditionViolated(double wire_pitch, double qubit_pitch)
    : Error("pitch condition violated: wire pitch " + std::to_string(wire_pitch) +
            " m exceeds qubit pitch " + std::to_string(qubit_pitch) + " m") {}
};

class DegenerateGeometry : public Error {
public:
  using Error::Error;
};

// Validation failure tied to a location in a config document, e.g.
// "layout.hole_diameter".
class ConfigInvalid : public Error {
public:
  ConfigInvalid(std::string field, const std::string& what)
    : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class UnsupportedFormat : public Error {
public:
  explicit UnsupportedFormat(const std::string& format)
    : Error("unsupported format '" + format + "'") {}
};

class UnknownParameter : public Error {
public:
  explicit UnknownParameter(const std::string& path)
    : Error("unknown sweep parameter '" + path + "'"), path_(path) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace pinchip
