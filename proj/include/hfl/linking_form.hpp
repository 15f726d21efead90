#pragma once

#include "hfl/int_matrix.hpp"
#include "hfl/smith.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hfl::linking {

using linalg::IntMatrix;

// the three generator families of linkings on finite abelian groups:
//   A(p,q): the form (q/p) on Z/p, gcd(p,q)=1
//   E0(k):  the hyperbolic form [[0,2^-k],[2^-k,0]] on (Z/2^k)^2
//   E1(k):  [[2^{1-k},2^-k],[2^-k,2^{1-k}]] on (Z/2^k)^2, k >= 2
// trivial stand-ins (A with p=1, E0(0), E1(0)) are constructible so that
// degenerate sums can be written down; normalize erases them.
enum class GeneratorKind { A, E0, E1 };

struct GeneratorTerm {
  GeneratorKind kind = GeneratorKind::A;
  BigInt p = 1; // A only
  BigInt q = 0; // A only
  int k = 0;    // E0/E1 only

  static GeneratorTerm lens(BigInt p, BigInt q);
  static GeneratorTerm e0(int k);
  static GeneratorTerm e1(int k);

  bool is_trivial() const;
  bool operator==(const GeneratorTerm &) const = default;
};

// throws ValidationError on malformed terms (p < 1, gcd(p,q) != 1, negative
// k, E1 with k = 1)
void validate_term(const GeneratorTerm &t);

// free rank plus an ordered list of generator terms; the normalized form has
// no trivial terms and the canonical order A-terms (by p, then q), E0 (by k),
// E1 (by k)
struct LinkingDecomposition {
  std::size_t free_rank = 0;
  std::vector<GeneratorTerm> terms;

  bool operator==(const LinkingDecomposition &) const = default;
};

LinkingDecomposition normalize(const LinkingDecomposition &d);
LinkingDecomposition direct_sum(const LinkingDecomposition &d1,
                                const LinkingDecomposition &d2);

std::string to_string(const GeneratorTerm &t);
std::string to_string(const LinkingDecomposition &d); // e.g. "free^2 + E0(3)"

// the two square blocks of the determinant criterion, assembled in the fixed
// order free part, A terms, E0 terms, E1 terms:
//   S = O_r (+) diag(p_l) (+) [[0,2^k],[2^k,0]] ... (+) [[2^{k+1},-2^k],[-3*2^k,2^{k+1}]] ...
//   T = I_r (+) diag(-q_l) (+) I_2 ...            (+) diag(-1,-3) ...
struct TheoremMatrices {
  IntMatrix S;
  IntMatrix T;
};

// input is normalized first; both outputs are square of size r + a + 2e0 + 2e1
TheoremMatrices theorem_matrices(const LinkingDecomposition &d);

// a symmetric pairing on a finite abelian group, stored as the gram matrix of
// the chosen generating set with entries reduced into [0,1). construction
// checks symmetry mod 1 and well-definedness (order(g_i) * gram[i][j] is an
// integer); non-singularity is expensive and exposed separately.
class LinkingGram {
public:
  LinkingGram(linalg::AbelianGroupData group,
              std::vector<std::vector<BigRat>> gram);

  const linalg::AbelianGroupData &group() const { return group_; }
  const std::vector<std::vector<BigRat>> &gram() const { return gram_; }

  // orientation reversal: every entry negated mod 1
  LinkingGram negated() const;

  bool operator==(const LinkingGram &) const = default;

private:
  linalg::AbelianGroupData group_;
  std::vector<std::vector<BigRat>> gram_;
};

// reduce an exact rational into the half-open unit interval
BigRat mod_one(const BigRat &v);

// standard gram of a single nontrivial generator term
LinkingGram gram_of_generator(const GeneratorTerm &t);

// homological gluing data of a genus-g splitting: the two blocks of the
// gluing map that determine H_1 and the linking form. both must be g x g,
// and det B != 0 (rational homology sphere) for the form to exist.
struct HeegaardGluingData {
  IntMatrix A;
  IntMatrix B;

  std::size_t genus() const { return A.rows(); }
};

void validate_gluing(const HeegaardGluingData &h);

// torsion linking form of the glued manifold: H_1 = Z^g / B^t Z^g and the
// pairing (v,w) -> -v^t (B^-1 A) w mod 1, re-expressed on the Smith normal
// form generating set of the cokernel (only torsion generators kept).
// throws SingularMatrixError when det B = 0 and ValidationError when the
// data does not define a symmetric pairing.
LinkingGram linking_form_from_heegaard(const HeegaardGluingData &h);

// the same pairing on the presentation basis (meridian generators), i.e. the
// full g x g matrix of -B^-1 A with entries reduced into [0,1). this is the
// basis in which small examples are usually written down by hand.
std::vector<std::vector<BigRat>>
heegaard_presentation_gram(const HeegaardGluingData &h);

// brute-force check that the pairing is non-singular: g -> (g, .) is
// injective into Hom(G, Q/Z). enumeration over the group; capacity-limited.
bool nonsingular(const LinkingGram &g, std::size_t order_bound = 4096);

// whether some group isomorphism carries g1 to g2. enumeration over
// isomorphisms, pruned by element orders and partial gram agreement.
// groups of different invariant-factor type give false; torsion order above
// order_bound throws CapacityError (deliberately not a mathematical "no").
bool gram_equivalent(const LinkingGram &g1, const LinkingGram &g2,
                     std::size_t order_bound = 4096);

} // namespace hfl::linking
