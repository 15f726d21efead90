#pragma once

#include "hfl/int_matrix.hpp"
#include "hfl/linking_form.hpp"
#include "hfl/smith.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hfl::surgery {

using linalg::IntMatrix;

// one component of a rational surgery presentation: coefficient p/q with
// gcd(p, q) = 1 and q != 0 (no empty surgery slots)
struct SurgeryComponent {
  BigInt p = 0;
  BigInt q = 1;

  bool operator==(const SurgeryComponent &) const = default;
};

// framed link presentation: components plus the symmetric linking table with
// zero diagonal (self-linking is carried by the coefficients)
struct SurgeryDiagram {
  std::vector<SurgeryComponent> components;
  IntMatrix lk;

  std::size_t size() const { return components.size(); }
  bool operator==(const SurgeryDiagram &) const = default;
};

void validate_diagram(const SurgeryDiagram &d);

// the presentation pair of the surgered manifold:
//   Phi[i][i] = p_i, Phi[i][j] = q_i * lk[i][j] for i != j, Psi = diag(q_i)
struct SurgeryMatrices {
  IntMatrix Phi;
  IntMatrix Psi;
};

SurgeryMatrices phi_psi(const SurgeryDiagram &d);

// H_1 of the surgered manifold, presented by Phi
linalg::AbelianGroupData first_homology(const SurgeryDiagram &d);

// reverse the orientation of one component: its linking numbers with every
// other component change sign, coefficients stay put
SurgeryDiagram orientation_flip(const SurgeryDiagram &d, std::size_t i);

// a diagram whose presentation pair reproduces the block matrices of the
// normalized decomposition entry for entry: free parts become 0-framed split
// unknots, lens terms single components, E0/E1 terms two-component chains
// with linking number 2^k
SurgeryDiagram representative_diagram(const linking::LinkingDecomposition &d);

// split union of the two diagrams (connected sum of the manifolds)
SurgeryDiagram connected_sum(const SurgeryDiagram &d1,
                             const SurgeryDiagram &d2);

std::string to_string(const SurgeryDiagram &d); // e.g. "(0/1),(3/-1) lk(0,1)=2"

} // namespace hfl::surgery
