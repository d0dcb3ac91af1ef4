#ifndef SIFTHOM_ERRORS_HPP_
#define SIFTHOM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sifthom {

// Base class for all recoverable estimation failures. Invalid arguments that
// violate documented type invariants throw std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A point maps to the plane at infinity (projective depth below tolerance).
class DegenerateDepth : public Error {
 public:
  using Error::Error;
};

// A homography required to be invertible is singular within tolerance.
class SingularHomography : public Error {
 public:
  using Error::Error;
};

// A point cloud handed to normalization has no spread.
class DegenerateCloud : public Error {
 public:
  using Error::Error;
};

// A local feature frame has a non-invertible Jacobian.
class SingularJacobian : public Error {
 public:
  using Error::Error;
};

// An affine approximation is singular where invertibility is needed.
class SingularAffinity : public Error {
 public:
  using Error::Error;
};

// A feature scale that must be positive is not.
class NonPositiveScale : public Error {
 public:
  using Error::Error;
};

// A linear system lost rank, e.g. duplicated or dependent correspondences.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

// A polynomial system is not zero dimensional (identically zero resultant).
class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

// A solver produced no real solution within tolerance.
class EmptySolution : public Error {
 public:
  using Error::Error;
};

// A minimal sample is in degenerate position, e.g. collinear points.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

// Fewer correspondences than the estimator needs.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Robust estimation exhausted its budget without an acceptable model.
class NoModelFound : public Error {
 public:
  using Error::Error;
};

// The synthetic scene sampler failed repeatedly to produce a valid scene.
class DegenerateScene : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sifthom

#endif  // SIFTHOM_ERRORS_HPP_
