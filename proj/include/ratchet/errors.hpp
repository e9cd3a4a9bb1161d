#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratchet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
  explicit InvalidParameter(const std::string& field, const std::string& why)
      : Error("invalid parameter '" + field + "': " + why), field(field) {}
  std::string field;
};

struct CotangentPole : Error {
  explicit CotangentPole(double beta_hbar_gamma_half)
      : Error("beta*hbar*gamma/2 = " + std::to_string(beta_hbar_gamma_half) +
              " hits a pole of cot; shift beta or gamma") {}
};

struct MatsubaraResonance : Error {
  explicit MatsubaraResonance(int k)
      : Error("Matsubara frequency nu_" + std::to_string(k) +
              " coincides with gamma; Theta_k denominator vanishes"),
        k(k) {}
  int k;
};

struct GridShiftMismatch : Error {
  explicit GridShiftMismatch(double dp)
      : Error("dp = " + std::to_string(dp) +
              " does not divide hbar*kappa; momentum shift needs an integer stride") {}
};

struct ParseError : Error {
  ParseError(int line, const std::string& why)
      : Error("config line " + std::to_string(line) + ": " + why), line(line) {}
  int line;
};

struct UnknownKey : Error {
  UnknownKey(int line, const std::string& key)
      : Error("config line " + std::to_string(line) + ": unknown key '" + key + "'"),
        line(line),
        key(key) {}
  int line;
  std::string key;
};

struct StrideMismatch : Error {
  using Error::Error;
};

struct NumericalBlowup : Error {
  using Error::Error;
};

struct EquilibrationTimeout : Error {
  using Error::Error;
};

struct DegenerateSampling : Error {
  using Error::Error;
};

struct NoRoot : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct FormatError : Error {
  FormatError(std::size_t byte_offset, const std::string& why)
      : Error("snapshot byte " + std::to_string(byte_offset) + ": " + why),
        byte_offset(byte_offset) {}
  std::size_t byte_offset;
};

}  // namespace ratchet
