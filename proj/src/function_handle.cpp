#include "green/function_handle.hpp"

namespace green {

FunctionHandle scaled(const FunctionHandle& u, double c) {
  if (!(c > 0.0)) throw ContractViolation("scaled: factor must be positive");
  return {[u, c](PointView z) { return u(z) * c; }, u.domain, u.label + "*" + ExtReal(c).str()};
}

FunctionHandle shifted(const FunctionHandle& u, double offset) {
  return {[u, offset](PointView z) { return u(z) + ExtReal(offset); }, u.domain,
          u.label + "+" + ExtReal(offset).str()};
}

}  // namespace green
