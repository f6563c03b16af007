// The worked examples as ready-made algebras: the 4-element right-handed
// skew chain of Figure 1, the 9-element left-handed algebra of Figure 3,
// the 8-element X_2 obtained from Figure 3 by dropping the bottom, and the
// 3-element skew chain extracted from Figure 1.

#pragma once

#include <vector>

#include "skewlat/algebra.hpp"

namespace skewlat {
namespace fixtures {

inline CayleyAlgebra fig1() {
  // Tables re-indexed from the printed row order 0, 2, 3, 1 to index order.
  std::vector<int> meet{
      0, 0, 0, 0,  //
      0, 1, 2, 3,  //
      0, 2, 2, 3,  //
      0, 3, 2, 3,  //
  };
  std::vector<int> join{
      0, 1, 2, 3,  //
      1, 1, 1, 1,  //
      2, 1, 2, 2,  //
      3, 1, 3, 3,  //
  };
  return CayleyAlgebra(4, std::move(meet), std::move(join));
}

inline CayleyAlgebra fig3() {
  std::vector<int> meet{
      0, 3, 2, 3, 0, 2, 6, 6, 8,  //
      1, 1, 5, 1, 1, 5, 1, 1, 8,  //
      2, 2, 2, 2, 2, 2, 2, 2, 8,  //
      3, 3, 2, 3, 3, 2, 3, 3, 8,  //
      4, 1, 5, 1, 4, 5, 7, 7, 8,  //
      5, 5, 5, 5, 5, 5, 5, 5, 8,  //
      6, 6, 2, 6, 6, 2, 6, 6, 8,  //
      7, 7, 5, 7, 7, 5, 7, 7, 8,  //
      8, 8, 8, 8, 8, 8, 8, 8, 8,  //
  };
  std::vector<int> join{
      0, 4, 0, 0, 4, 4, 0, 4, 0,  //
      0, 1, 6, 3, 4, 1, 6, 7, 1,  //
      0, 1, 2, 3, 4, 5, 6, 7, 2,  //
      0, 1, 3, 3, 4, 7, 6, 7, 3,  //
      0, 4, 0, 0, 4, 4, 0, 4, 4,  //
      0, 1, 2, 3, 4, 5, 6, 7, 5,  //
      0, 1, 6, 3, 4, 1, 6, 7, 6,  //
      0, 1, 3, 3, 4, 7, 6, 7, 7,  //
      0, 1, 2, 3, 4, 5, 6, 7, 8,  //
  };
  return CayleyAlgebra(9, std::move(meet), std::move(join));
}

// X_2: the {0..7} subalgebra of fig3 (fig3 is X_2 with a bottom adjoined).
inline CayleyAlgebra x2() {
  return subalgebra(fig3(), {0, 1, 2, 3, 4, 5, 6, 7});
}

// The strictly categorical, non-normal skew chain {1, 2, 3} inside fig1.
inline CayleyAlgebra ex13_sub() { return subalgebra(fig1(), {1, 2, 3}); }

}  // namespace fixtures
}  // namespace skewlat
