#include <iostream>

#include "supertransform/expression.hpp"
#include "supertransform/render.hpp"
#include "supertransform/supertransform.hpp"

namespace st = supertransform;

int main() {
  // superspace with one bosonic and two fermionic coordinates
  auto u = st::VariableUniverse::standard(1, 1);
  auto y = st::SymbolNames::renamed(u, "y");

  auto f = st::parse_expression("(x1^2 + q1q2)*G", u);
  std::cout << "f            = " << st::to_text(f) << "\n";

  auto ff = st::super_fourier(f, st::FourierSign::Plus);
  std::cout << "F+ f         = " << st::to_text(ff, y) << "\n";
  auto back = st::super_fourier(ff, st::FourierSign::Minus);
  std::cout << "F- F+ f      = " << st::to_text(back) << "\n";

  auto half = st::frac_fourier(f, st::Angle::exact(st::make_rational(1, 2)));
  std::cout << "F^(1/2) f    = " << st::to_text(half, y) << "\n";

  auto r = st::radon(st::parse_expression("x1*q1*G", u));
  std::cout << "R(x1 q1 G)   = " << st::to_text(r) << "\n";

  std::cout << "fundamental solution, m=3 n=1: " << st::to_text(st::super_fundamental_solution(3, 1)) << "\n";
  return 0;
}
