#pragma once

#include <vector>

#include "lcah/elca.hpp"

namespace lcah::test {

// Two declared irrationals with numeric shadows, shared by the unit suites.
struct Symbols {
  SymbolTable table;
  Scalar a, b;
  Symbols() {
    table.declare("a", 1.4142135623730951);
    table.declare("b", 0.7320508075688772);
    a = Scalar::symbol(table, 1);
    b = Scalar::symbol(table, 2);
  }
};

inline Scalar q(long n, long d = 1) {
  Rat r{Int(n), Int(d)};
  r.canonicalize();
  return Scalar(r);
}

inline ElcaMorphism mor(const ElcaGroup &s, const ElcaGroup &t,
                        const std::vector<std::vector<Scalar>> &rows) {
  return ElcaMorphism::from_full(s, t,
                                 ScalarMatrix::from_rows(rows, s.coordinates()));
}

inline IntMatrix imat(const std::vector<std::vector<Int>> &rows,
                      std::size_t cols = 0) {
  return IntMatrix::from_rows(rows, cols);
}

} // namespace lcah::test
