#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace asymlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 166-bit mantissa, comfortably above the 64 fractional bits the bound
// comparisons need at n in the hundreds.
using Real = boost::multiprecision::cpp_bin_float_50;

enum class Errc {
  out_of_range,
  repeat_in_row,
  repeat_in_column,
  inadmissible_order,
  pair_covered_twice,
  pair_uncovered,
  malformed_block,
  odd_order,
  factor_not_perfect_matching,
  edge_repeated,
  edge_missing,
  dimension_too_large,
  rectangle_full,
  resource_limit,
  cap_exceeded,
  budget_exceeded,
  visitor_abort,
  not_an_automorphism,
  has_fixed_vertex,
  bound_violated,
  missing_epsilon,
  not_found,
  not_regular,
  not_strongly_regular,
  kind_mismatch,
  parse_error,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::out_of_range: return "OutOfRange";
    case Errc::repeat_in_row: return "RepeatInRow";
    case Errc::repeat_in_column: return "RepeatInColumn";
    case Errc::inadmissible_order: return "InadmissibleOrder";
    case Errc::pair_covered_twice: return "PairCoveredTwice";
    case Errc::pair_uncovered: return "PairUncovered";
    case Errc::malformed_block: return "MalformedBlock";
    case Errc::odd_order: return "OddOrder";
    case Errc::factor_not_perfect_matching: return "FactorNotPerfectMatching";
    case Errc::edge_repeated: return "EdgeRepeated";
    case Errc::edge_missing: return "EdgeMissing";
    case Errc::dimension_too_large: return "DimensionTooLarge";
    case Errc::rectangle_full: return "RectangleFull";
    case Errc::resource_limit: return "ResourceLimit";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::visitor_abort: return "VisitorAbort";
    case Errc::not_an_automorphism: return "NotAnAutomorphism";
    case Errc::has_fixed_vertex: return "HasFixedVertex";
    case Errc::bound_violated: return "BoundViolated";
    case Errc::missing_epsilon: return "MissingEpsilon";
    case Errc::not_found: return "NotFound";
    case Errc::not_regular: return "NotRegular";
    case Errc::not_strongly_regular: return "NotStronglyRegular";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Domain error. `code()` identifies the failure class, `what()` carries
/// the offending detail (index, pair, edge, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace asymlab
