#pragma once

#include <concepts>

#include "lgi/params.hpp"

namespace lgi {

/// The four two-time correlators of one quad and their Leggett-Garg combination
/// C = C12 + C23 + C34 - C14 (bounded by 2 for any macrorealist model).
struct LgiEvaluation {
  TimeQuad quad;
  double c12 = 0.0;
  double c23 = 0.0;
  double c34 = 0.0;
  double c14 = 0.0;
  double c = 0.0;
};

inline double combine_lgi(double c12, double c23, double c34, double c14) { return c12 + c23 + c34 - c14; }

// `correlator(start, separation)` returns <Q(start) Q(start + separation)>.
template <typename F>
  requires std::invocable<F, double, double>
LgiEvaluation evaluate_lgi(const TimeQuad& quad, F&& correlator) {
  LgiEvaluation out{quad};
  out.c12 = correlator(quad.t1(), quad.gap(0));
  out.c23 = correlator(quad.t2(), quad.gap(1));
  out.c34 = correlator(quad.t3(), quad.gap(2));
  out.c14 = correlator(quad.t1(), quad.span());
  out.c = combine_lgi(out.c12, out.c23, out.c34, out.c14);
  return out;
}

}  // namespace lgi
