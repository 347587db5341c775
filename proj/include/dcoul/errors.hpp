#pragma once

#include <stdexcept>
#include <string>

namespace dcoul {

/// Coarse classification used by the command-line tool to pick an exit code.
enum class ErrorKind { config, domain, convergence };

/// Base of every error raised by the library. `name()` is the stable
/// identifier surfaced to users (e.g. "ThresholdError").
class Error : public std::runtime_error {
public:
  Error(std::string name, ErrorKind kind, const std::string &what)
      : std::runtime_error(what), name_(std::move(name)), kind_(kind) {}

  const std::string &name() const noexcept { return name_; }
  ErrorKind kind() const noexcept { return kind_; }

private:
  std::string name_;
  ErrorKind kind_;
};

#define DCOUL_DEFINE_ERROR(Type, Kind)                                         \
  class Type : public Error {                                                  \
  public:                                                                      \
    explicit Type(const std::string &what)                                     \
        : Error(#Type, ErrorKind::Kind, what) {}                               \
  }

// specfun
DCOUL_DEFINE_ERROR(PoleError, domain);
DCOUL_DEFINE_ERROR(ConvergenceError, convergence);
// pollaczek
DCOUL_DEFINE_ERROR(DegenerateError, domain);
DCOUL_DEFINE_ERROR(RadiusError, domain);
DCOUL_DEFINE_ERROR(BranchError, domain);
DCOUL_DEFINE_ERROR(OverflowError, domain);
// model
DCOUL_DEFINE_ERROR(InvalidParameterError, config);
DCOUL_DEFINE_ERROR(SupercriticalError, domain);
DCOUL_DEFINE_ERROR(SingularMapError, domain);
DCOUL_DEFINE_ERROR(ThresholdError, domain);
// spectrum
DCOUL_DEFINE_ERROR(RepulsiveError, domain);
// scattering
DCOUL_DEFINE_ERROR(FitError, domain);
// resolvent
DCOUL_DEFINE_ERROR(NoConvergence, convergence);
DCOUL_DEFINE_ERROR(SpectrumProximity, domain);
// wavefunction
DCOUL_DEFINE_ERROR(KineticBalanceSingular, domain);
DCOUL_DEFINE_ERROR(GridError, domain);
DCOUL_DEFINE_ERROR(QuadratureOrderError, domain);
// io / cli
DCOUL_DEFINE_ERROR(ConfigError, config);

#undef DCOUL_DEFINE_ERROR

/// Raised by the terminating 2F1 sum when a bottom Pochhammer factor
/// vanishes before the series terminates. Carries the offending indices.
class BottomPoleError : public Error {
public:
  BottomPoleError(int n, int k, const std::string &what)
      : Error("BottomPoleError", ErrorKind::domain, what), n_(n), k_(k) {}
  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

private:
  int n_;
  int k_;
};

} // namespace dcoul
