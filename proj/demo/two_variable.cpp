// Small nonconvex instance where the RLT bound is strict:
// Q = [[-1, -2], [-2, 1]], c = (1, 1).

#include <cstdio>

#include "boxqp/boxqp.hpp"

int main() {
  using namespace boxqp;
  const BoxQpInstance inst(SymMatrix::from_rows({{-1.0, -2.0}, {-2.0, 1.0}}), Vec{1.0, 1.0});

  const auto rlt = solve_rlt(inst);
  const auto global = solve_global(inst);
  std::printf("global value  %.6f at (%g, %g)\n", global.value, global.argmin[0], global.argmin[1]);
  std::printf("RLT value     %.6f at (%g, %g)\n", rlt.value, rlt.argmin_x[0], rlt.argmin_x[1]);
  std::printf("q(1/2, 1/2)   %.6f\n", eval_q(inst, Vec{0.5, 0.5}));

  const auto report = classify(inst);
  std::printf("label         %s (%s)\n", to_string(report.label), report.detail.c_str());
  return 0;
}
