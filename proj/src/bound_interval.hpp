#pragma once

namespace rcsp {

// Provenance tag for each end of a certified interval. Enumerator values are
// part of the C ABI (mirrored by rcsp_method in rcsp.h) and ordered by rough
// computational cost, cheapest first; ties between equal bound values are
// broken toward the smaller value.
enum class Method : int {
  Exact = 0,
  TrivialSingle = 1,
  ChernoffPair = 2,
  GeneralChernoff = 3,
  UnionLower = 4,
  InglotPair = 5,
  Decomposition = 6,
  MonteCarlo = 7,
};

const char* method_name(Method m);

// A certified enclosure lower <= p <= upper for one probability, with the
// method that produced each end. Always satisfies 0 <= lower <= upper <= 1.
struct BoundInterval {
  double lower = 0.0;
  double upper = 1.0;
  Method method_lower = Method::TrivialSingle;
  Method method_upper = Method::TrivialSingle;

  double width() const { return upper - lower; }
};

}  // namespace rcsp
