#pragma once

#include "hfl/engine.hpp"
#include "hfl/linking_form.hpp"
#include "hfl/smith.hpp"
#include "hfl/surgery.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hfl::hc {

// input manifold, given either homologically (a linking decomposition) or by
// a surgery diagram; exactly one of the two must be present
struct ManifoldSpec {
  std::optional<linking::LinkingDecomposition> decomposition;
  std::optional<surgery::SurgeryDiagram> diagram;
};

void validate_spec(const ManifoldSpec &spec);

// first homology determined by a decomposition: Z^free_rank plus one cyclic
// summand per torsion generator slot
linalg::AbelianGroupData
decomposition_group(const linking::LinkingDecomposition &d);

// least g with 2g + n generators covering the homology
std::size_t genus_lower_bound(const linalg::AbelianGroupData &h,
                              std::size_t n);

// evidence entries carry enough data to re-verify the bound they support

struct LowerEvidence {
  std::size_t genus = 0;
  std::string reason;
};

struct ObstructionEvidence {
  std::size_t genus = 0;
  engine::FiberType fiber;
  engine::BlockProblem problem;
  engine::ObstructionCertificate certificate;
};

struct WitnessEvidence {
  std::size_t genus = 0;
  engine::FiberType fiber;
  engine::BlockProblem problem;
  engine::CandidateSolution solution;
  BigInt det;
};

struct TableEvidence {
  std::size_t genus = 0;
  std::string construction;
};

using Evidence =
    std::variant<LowerEvidence, ObstructionEvidence, WitnessEvidence,
                 TableEvidence>;

std::string describe(const Evidence &e);

struct HcBounds {
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  std::optional<std::size_t> exact; // set only when lower == upper
  std::vector<Evidence> evidence;
};

// upper bound assembled from known fibered constructions: genus-one pieces
// for lens spaces, E0(1) and E1(2), genus-two pieces for E0(k>=2) and
// E1(k>=3) (the latter through the Sigma_{1,2} witness), pairs of S^2 x S^1
// summands sharing one genus, and the documented absorption rules for free
// summands riding along with a torsion piece
struct TableUpper {
  std::size_t genus = 0;
  std::string construction;
};

// nullopt for diagram-only input (nothing to pattern-match) and for
// decompositions outside the table's reach
std::optional<TableUpper> known_upper_bounds(const ManifoldSpec &spec);

struct HcOptions {
  std::size_t bound = 8;
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
  std::size_t genus_cap = 16; // stop raising the lower bound past this
};

// minimal fiber genus over knot fibers (n = 0): iterate g upward from the
// homological lower bound, closing each genus by obstruction certificate,
// search witness, or the construction table; inconclusive genera end the
// climb with an honest interval
HcBounds hc_compute(const ManifoldSpec &spec, const HcOptions &opts = {});

// genus-one two-boundary solution for the E1(k) block, k >= 3: solve the
// collapsed 3x3 lens-type problem for (2^{k+1}, 3) by bounded search and
// lift; nullopt when the search bound is exhausted
std::optional<engine::CandidateSolution>
sigma12_witness(std::size_t k, std::uint64_t budget = 100'000'000);

} // namespace hfl::hc
