#include "cesorl/extended.hpp"

#include "cesorl/error.hpp"

namespace cesorl {

std::string_view to_string(Certificate c) {
  switch (c) {
  case Certificate::None: return "none";
  case Certificate::PositiveMeasureAboveB: return "positive_measure_above_b";
  case Certificate::TailLowerBound: return "tail_lower_bound";
  case Certificate::TermwiseLowerBound: return "termwise_lower_bound";
  }
  return "none";
}

Certificate certificate_from_string(std::string_view s) {
  for (auto c : {Certificate::None, Certificate::PositiveMeasureAboveB, Certificate::TailLowerBound,
                 Certificate::TermwiseLowerBound}) {
    if (to_string(c) == s) return c;
  }
  throw ParseError("unknown certificate '" + std::string(s) + "'");
}

ExtendedValue operator+(const ExtendedValue& lhs, const ExtendedValue& rhs) {
  if (lhs.is_infinite()) return lhs;
  if (rhs.is_infinite()) {
    ExtendedValue out = rhs;
    if (out.value != kInf) out.value += lhs.value;
    return out;
  }
  return ExtendedValue::finite(lhs.value + rhs.value, lhs.abs_error + rhs.abs_error);
}

} // namespace cesorl
