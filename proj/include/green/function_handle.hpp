#pragma once

#include <functional>
#include <string>

#include "green/ideal.hpp"
#include "green/types.hpp"

namespace green {

// A real-or-(-inf) valued function on a domain, e.g. a candidate member of
// the class whose envelope is the Green function.
struct FunctionHandle {
  std::function<ExtReal(PointView)> eval;
  ideal::DomainSpec domain;
  std::string label;

  ExtReal operator()(PointView z) const { return eval(z); }
};

// c * u for c > 0.
FunctionHandle scaled(const FunctionHandle& u, double c);
// u + offset (finite values only; -inf stays -inf).
FunctionHandle shifted(const FunctionHandle& u, double offset);

}  // namespace green
