#pragma once

#include "hfl/int_matrix.hpp"

#include <vector>

namespace hfl::linalg {

// U * A * V = D with U, V unimodular and D diagonal, each diagonal entry
// nonnegative and dividing the next nonzero one.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

// finitely generated abelian group as free rank plus invariant factors;
// factors are > 1 and each divides the next.
struct AbelianGroupData {
  std::size_t free_rank = 0;
  std::vector<BigInt> invariant_factors;

  bool operator==(const AbelianGroupData &) const = default;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return free_rank == 0; }

  // order of the torsion part (1 when there is none)
  BigInt torsion_order() const {
    BigInt n = 1;
    for (const auto &f : invariant_factors) n *= f;
    return n;
  }

  std::string to_string() const;
};

// deterministic Smith normal form. pivot choice: smallest nonzero absolute
// value in the working block, first in row-major order on ties, so repeated
// runs and different platforms produce identical U, D, V.
SmithDecomposition smith_normal_form(const IntMatrix &a);

// cokernel of the map whose matrix is `relations`, with rows read as
// relations among `cols` generators: the group Z^cols / rowspan(relations).
AbelianGroupData cokernel(const IntMatrix &relations);

} // namespace hfl::linalg
