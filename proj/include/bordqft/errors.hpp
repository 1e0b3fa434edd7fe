#pragma once

#include <stdexcept>
#include <string>

namespace bordqft {

// Base for all domain errors thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structural validation of tables, functors, site sets, ...
struct ValidationError : Error {
  using Error::Error;
};

// lattice
struct SiteNotInSpacetime : Error {
  using Error::Error;
};
struct TargetMismatch : Error {
  using Error::Error;
};

// pseudocat / lbord
struct ObjectMismatch : Error {
  using Error::Error;
};
struct NoCompanion : Error {
  using Error::Error;
};
struct GluingOverlapInconsistent : Error {
  using Error::Error;
};
struct CellMismatch : Error {
  using Error::Error;
};
struct CollarTooSmall : Error {
  using Error::Error;
};

// kleingordon
struct SourceTouchesBoundary : Error {
  using Error::Error;
};
struct DegenerateRegion : Error {
  using Error::Error;
};
struct NotACauchyRow : Error {
  using Error::Error;
};
struct NotCauchy : Error {
  using Error::Error;
};

// ccr
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct ParentMismatch : Error {
  using Error::Error;
};
struct NotPoisson : Error {
  using Error::Error;
};

// compare
struct TimeSliceViolation : Error {
  using Error::Error;
};

}  // namespace bordqft
