#pragma once

#include "hfl/int_matrix.hpp"
#include "hfl/linking_form.hpp"
#include "hfl/smith.hpp"
#include "hfl/surgery.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hfl::engine {

using linalg::IntMatrix;

// fiber surface of genus g with n+1 boundary components; it contributes
// d = 2g + n unknown columns to the block equation
struct FiberType {
  std::size_t g = 0;
  std::size_t n = 0;

  std::size_t block_size() const { return 2 * g + n; }
  bool operator==(const FiberType &) const = default;
};

// one instance of the block determinant question: does an integer m x d
// matrix X and a symmetric integer d x d matrix Y exist with
//   det [[M0, W*X], [X^t, Y + pairing]] = +-1,
// where pairing is the fiber's fixed intersection block?
struct BlockProblem {
  IntMatrix M0;
  IntMatrix W;
  FiberType fiber;
  std::string provenance; // free-text origin, carried into certificates
};

void validate_problem(const BlockProblem &p);

BlockProblem problem_from_decomposition(const linking::LinkingDecomposition &d,
                                        FiberType fiber);
BlockProblem problem_from_diagram(const surgery::SurgeryDiagram &d,
                                  FiberType fiber);

// the d x d intersection block of the fiber: +1 at (2i, 2i+1) for each of
// the g handle pairs, zeros elsewhere (the symmetric partner entry is
// absorbed into Y)
IntMatrix fiber_pairing_block(FiberType fiber);

struct CandidateSolution {
  IntMatrix X; // m x d
  IntMatrix Y; // d x d, symmetric

  bool operator==(const CandidateSolution &) const = default;
};

// candidate from the flat coordinate layout the search uses: X row-major,
// then the upper triangle of Y row-major
CandidateSolution candidate_from_coordinates(std::size_t m, FiberType fiber,
                                             const std::vector<BigInt> &coords);
std::vector<BigInt> candidate_coordinates(const CandidateSolution &c);

// number of free entries of a candidate: m*d + d(d+1)/2
std::size_t variable_count(const BlockProblem &p);

IntMatrix assemble(const BlockProblem &p, const CandidateSolution &c);

struct VerifyResult {
  bool ok = false;
  BigInt det;
};

VerifyResult verify(const BlockProblem &p, const CandidateSolution &c);

// a verified solution survives reversing the orientation of surgery
// component i: negate the corresponding row of X, keep Y
CandidateSolution transport_solution(const CandidateSolution &c,
                                     std::size_t component_index);

enum class ObstructionKind { FullModular, SquareBlock };

std::string to_string(ObstructionKind k);

// finite proof that the determinant cannot be +-1: the set of residues the
// determinant attains mod `modulus` misses both 1 and modulus-1
struct ObstructionCertificate {
  ObstructionKind kind = ObstructionKind::FullModular;
  std::int64_t modulus = 0;
  std::vector<std::int64_t> attainable; // sorted, duplicates removed
  std::int64_t det_w_mod = 0;           // square-block rule only

  bool operator==(const ObstructionCertificate &) const = default;
};

struct Exists {
  CandidateSolution solution;
  BigInt det;
};

struct NotExists {
  ObstructionCertificate certificate;
};

struct Unknown {
  // every candidate with max-norm <= entry_bound was examined (-1: none)
  std::int64_t entry_bound = -1;
  std::uint64_t candidates_examined = 0;
  bool budget_exhausted = false;
  std::vector<std::int64_t> moduli_tried; // obstruction moduli that failed
};

using Verdict = std::variant<Exists, NotExists, Unknown>;

struct SearchOptions {
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
};

// bounded exhaustive search in max-norm shells, lexicographic within each
// shell; returns the first solution in that order, so results do not depend
// on the worker count. a shell is entered only if it fits entirely in the
// remaining budget, which keeps the examined region worker-independent too.
Verdict search(const BlockProblem &p, std::size_t entry_bound,
               const SearchOptions &opts = {});

// enumerate every candidate mod q and collect the attainable determinant
// residues; a certificate exists iff neither 1 nor q-1 shows up. throws
// CapacityError when q^(variable count) exceeds the budget.
std::optional<ObstructionCertificate>
modular_obstruction(const BlockProblem &p, std::int64_t q,
                    std::uint64_t budget = 100'000'000);

// the cheap variant for square X with M0 vanishing mod q: the determinant is
// then congruent to +-det(W) times a square, so the attainable residues lie
// in {+-det(W) * s : s a square mod q}
bool square_block_applicable(const BlockProblem &p, std::int64_t q);
std::optional<ObstructionCertificate>
square_block_obstruction(const BlockProblem &p, std::int64_t q);

// recompute a certificate from scratch and compare
bool recheck(const BlockProblem &p, const ObstructionCertificate &cert,
             std::uint64_t budget = 100'000'000);

// the degenerate fiber (0,0) asks for a disk: possible iff the homology is
// trivial
bool disk_case(const linalg::AbelianGroupData &h);

struct DecideOptions {
  std::size_t entry_bound = 8;
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
  bool obstructions = true;
};

// obstructions first (square-block mod 8 and 9, then full enumerations where
// they fit the budget), then bounded search
Verdict decide(const BlockProblem &p, const DecideOptions &opts = {});

// destabilization step: the input problem comes from a diagram whose first
// component is a 0-framed unknot split from the rest, and the verified
// solution has fiber (0, n>=2) or (1, 0). column operations on the fiber
// basis shrink the unknot's row of X to (+-1, 0, ..., 0); dropping that row
// and column yields a verified solution for the diagram without the unknot
// and the fiber with one less handle worth of columns.
struct ReducedProblem {
  BlockProblem problem;
  CandidateSolution solution;
};

ReducedProblem stabilization_reduce(const BlockProblem &p,
                                    const CandidateSolution &c);

} // namespace hfl::engine
