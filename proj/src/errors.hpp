#pragma once

#include <stdexcept>
#include <string>

namespace rcsp {

// A method was invoked outside its validity region (e.g. the Inglot sandwich
// below its radius threshold). The caller is expected to fall back to another
// method; nothing was computed.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The scheme never decodes: the joint error probability at the final
// transmission is 1, so expected latency is infinite.
class DegenerateSchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested computation is outside supported limits (e.g. exact joint
// integration beyond three transmissions).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature exhausted its subdivision depth before reaching the
// requested tolerance. Carries the best estimate accumulated so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial_estimate)
      : std::runtime_error(what), partial_estimate_(partial_estimate) {}
  double partial_estimate() const { return partial_estimate_; }

 private:
  double partial_estimate_;
};

}  // namespace rcsp
