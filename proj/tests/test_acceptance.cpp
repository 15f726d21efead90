// acceptance gate: each criterion prints exactly one PASS/FAIL line with a
// short detail, and the process exits nonzero if any criterion fails. the
// checks pin frozen oracles (hand-computed grams, witnesses, residue sets)
// and enforce the runtime budgets they were specified with.

#include "hfl/engine.hpp"
#include "hfl/errors.hpp"
#include "hfl/hc.hpp"
#include "hfl/int_matrix.hpp"
#include "hfl/io.hpp"
#include "hfl/linking_form.hpp"
#include "hfl/smith.hpp"
#include "hfl/surgery.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace en = hfl::engine;
namespace lk = hfl::linking;
namespace sg = hfl::surgery;

using hfl::BigInt;
using hfl::BigRat;
using hfl::linalg::IntMatrix;

namespace {

std::mt19937 rng(20260819);

class Stopwatch {
public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

struct Gate {
  bool all_ok = true;

  void report(int index, const std::string &label, bool ok,
              const std::string &detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << index << ": "
              << label;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n" << std::flush;
    all_ok = all_ok && ok;
  }
};

en::BlockProblem term_problem(lk::GeneratorTerm t, en::FiberType f) {
  return en::problem_from_decomposition({0, {std::move(t)}}, f);
}

BigInt pow2(int k) {
  BigInt v = 1;
  return v << k;
}

std::string set_str(const std::vector<std::int64_t> &v) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "}";
  return out.str();
}

// ---------------------------------------------------------------------------
// criterion 1: the torsion linking forms computed from genus-one and
// genus-two gluing data reproduce the hand-written grams of the three
// generator families and are equivalent to the standard generator grams.

bool criterion1(std::string &detail) {
  Stopwatch timer;
  bool ok = true;

  struct LensRow {
    int p, q, r; // r q = -1 mod p
  };
  const std::vector<LensRow> lens_rows = {{2, 1, 1},  {3, 1, 2}, {4, 1, 3},
                                          {5, 2, 2},  {7, 3, 2}, {12, 5, 7}};
  for (const auto &row : lens_rows) {
    const lk::HeegaardGluingData h{IntMatrix{{BigInt(-row.r)}},
                                   IntMatrix{{BigInt(-row.p)}}};
    const BigRat expect = lk::mod_one(BigRat(-row.r, row.p));
    const auto pres = lk::heegaard_presentation_gram(h);
    ok = ok && pres.size() == 1 && pres[0][0] == expect;

    const auto form = lk::linking_form_from_heegaard(h);
    ok = ok && form.group() ==
                   hfl::linalg::AbelianGroupData{0, {BigInt(row.p)}};
    ok = ok && form.gram().size() == 1 && form.gram()[0][0] == expect;
    ok = ok && lk::gram_equivalent(
                   form, lk::gram_of_generator(
                             lk::GeneratorTerm::lens(row.p, row.q)));
  }

  int displayed_matches = 0;
  for (int k = 1; k <= 6; ++k) {
    const BigInt m = pow2(k);
    const lk::HeegaardGluingData h{IntMatrix{{0, 1}, {1, 1}},
                                   IntMatrix{{m, 0}, {-m, m}}};
    const BigRat off = lk::mod_one(BigRat(-1, m));
    const BigRat corner = lk::mod_one(BigRat(-2, m));
    const auto pres = lk::heegaard_presentation_gram(h);
    ok = ok && pres == std::vector<std::vector<BigRat>>{{BigRat(0), off},
                                                        {off, corner}};
    // the displayed corner has the opposite sign; mod 1 that only
    // coincides with the faithful value for k <= 2
    const bool displayed_same = corner == lk::mod_one(BigRat(2, m));
    if (displayed_same) ++displayed_matches;
    ok = ok && (displayed_same == (k <= 2));

    const auto form = lk::linking_form_from_heegaard(h);
    ok = ok && form.group() == hfl::linalg::AbelianGroupData{0, {m, m}};
    ok = ok && form.gram() == pres;
    ok = ok && lk::gram_equivalent(
                   form, lk::gram_of_generator(lk::GeneratorTerm::e0(k)));
  }

  for (int k = 2; k <= 6; ++k) {
    const BigInt m = pow2(k);
    const lk::HeegaardGluingData h{
        IntMatrix{{0, -1}, {-3, 3}},
        IntMatrix{{m, 2 * m}, {-m, -3 * m}}};
    const BigRat six = lk::mod_one(BigRat(6, m));
    const BigRat moff = lk::mod_one(BigRat(-3, m));
    const BigRat two = lk::mod_one(BigRat(2, m));
    const BigRat noff = lk::mod_one(BigRat(-1, m));
    ok = ok && lk::heegaard_presentation_gram(h) ==
                   std::vector<std::vector<BigRat>>{{six, moff},
                                                    {moff, two}};
    const auto form = lk::linking_form_from_heegaard(h);
    ok = ok && form.group() == hfl::linalg::AbelianGroupData{0, {m, m}};
    ok = ok && form.gram() == std::vector<std::vector<BigRat>>{{two, noff},
                                                               {noff, two}};
    ok = ok && lk::gram_equivalent(
                   form, lk::gram_of_generator(lk::GeneratorTerm::e1(k)));
  }

  const auto elapsed = timer.ms();
  ok = ok && displayed_matches == 2 && elapsed < 1000;
  std::ostringstream d;
  d << "exact grams for 6 lens rows, e0 k=1..6, e1 k=2..6; the displayed e0 "
       "corner agrees mod 1 only for k <= 2, the faithful value is matched "
       "and generator equivalence holds for all k; "
    << elapsed << " ms";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 2: explicit genus-one witnesses for the even wall forms.

bool criterion2(std::string &detail) {
  Stopwatch timer;
  bool ok = true;

  const auto p1 = term_problem(lk::GeneratorTerm::e0(1), {1, 0});
  const en::CandidateSolution w1{IntMatrix{{3, 1}, {0, 1}},
                                 IntMatrix{{-1, 0}, {0, 0}}};
  ok = ok && en::verify(p1, w1).det == -1;

  for (int k = 3; k <= 8; ++k) {
    const auto p = term_problem(lk::GeneratorTerm::e0(k), {1, 0});
    const en::CandidateSolution w{
        IntMatrix{{pow2(k - 1), 1}, {1, 1}},
        IntMatrix{{pow2(k - 3) + 1, 0}, {0, 0}}};
    ok = ok && en::verify(p, w).det == 1;
  }

  const auto elapsed = timer.ms();
  ok = ok && elapsed < 1000;
  std::ostringstream d;
  d << "e0(1) witness has determinant -1, the k = 3..8 family determinant "
       "+1; "
    << elapsed << " ms";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 3: full mod-8 enumerations over all 8^7 residue candidates rule
// out genus one for e0(2) and e1(3), with the frozen attainable sets.

bool criterion3(std::string &detail, std::vector<std::int64_t> &full_e13) {
  bool ok = true;
  std::ostringstream d;

  Stopwatch t1;
  const auto cert_a =
      en::modular_obstruction(term_problem(lk::GeneratorTerm::e0(2), {1, 0}),
                              8);
  const auto ms_a = t1.ms();
  ok = ok && cert_a.has_value() &&
       cert_a->attainable == std::vector<std::int64_t>{0, 4, 5};

  Stopwatch t2;
  const auto cert_b =
      en::modular_obstruction(term_problem(lk::GeneratorTerm::e1(3), {1, 0}),
                              8);
  const auto ms_b = t2.ms();
  ok = ok && cert_b.has_value() &&
       cert_b->attainable == std::vector<std::int64_t>{0, 3, 4};
  if (cert_b) full_e13 = cert_b->attainable;

  // the binding consequence: neither residue 1 nor 7 is attainable
  for (const auto *cert : {&cert_a, &cert_b}) {
    if (!cert->has_value()) continue;
    const auto &att = (*cert)->attainable;
    ok = ok && std::find(att.begin(), att.end(), 1) == att.end() &&
         std::find(att.begin(), att.end(), 7) == att.end();
  }

  ok = ok && ms_a < 300000 && ms_b < 300000;
  d << "e0(2) attains " << (cert_a ? set_str(cert_a->attainable) : "{}")
    << " in " << ms_a << " ms, e1(3) attains "
    << (cert_b ? set_str(cert_b->attainable) : "{}") << " in " << ms_b
    << " ms; 1 and 7 unattained in both";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 4: the square-block shortcut certifies a wider problem in
// microseconds and never contradicts the full enumeration where both apply.

bool criterion4(std::string &detail,
                const std::vector<std::int64_t> &full_e13) {
  Stopwatch timer;
  bool ok = true;

  const auto wide = en::problem_from_decomposition(
      {2, {lk::GeneratorTerm::e1(3)}}, {2, 0});
  const auto cert_w = en::square_block_obstruction(wide, 8);
  ok = ok && cert_w.has_value() &&
       cert_w->attainable == std::vector<std::int64_t>{0, 3, 4, 5} &&
       cert_w->det_w_mod == 3 && en::recheck(wide, *cert_w);

  const auto narrow = term_problem(lk::GeneratorTerm::e1(3), {1, 0});
  const auto cert_n = en::square_block_obstruction(narrow, 8);
  ok = ok && cert_n.has_value() &&
       cert_n->attainable == std::vector<std::int64_t>{0, 3, 4, 5} &&
       en::recheck(narrow, *cert_n);

  // overlap with criterion 3: the exact attainable set refines the rule's
  ok = ok && !full_e13.empty() && cert_n.has_value() &&
       std::includes(cert_n->attainable.begin(), cert_n->attainable.end(),
                     full_e13.begin(), full_e13.end());

  const auto elapsed = timer.ms();
  ok = ok && elapsed < 1000;
  std::ostringstream d;
  d << "square-block certificates mod 8 on fibers (2,0) and (1,0), residues "
       "{0,3,4,5}, det W = 3, containing the exact set "
    << set_str(full_e13) << "; " << elapsed << " ms";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 5: bounded search settles the odd wall form e1(2) at genus one,
// an independent hand witness at the bound confirms it, and the stray
// published candidate is recorded with its actual determinant.

bool criterion5(std::string &detail) {
  Stopwatch timer;
  bool ok = true;

  const auto p = term_problem(lk::GeneratorTerm::e1(2), {1, 0});
  const auto v = en::search(p, 11);
  const auto *e = std::get_if<en::Exists>(&v);
  ok = ok && e != nullptr;
  BigInt found_det = 0;
  if (e) {
    const auto r = en::verify(p, e->solution);
    ok = ok && r.ok && r.det == e->det;
    found_det = e->det;
  }

  const en::CandidateSolution independent{IntMatrix{{0, 1}, {1, 1}},
                                          IntMatrix{{-1, 0}, {0, 11}}};
  ok = ok && en::verify(p, independent).det == -1;

  // transcribed from a published table; it evaluates to 7, so it is kept on
  // record as a non-witness rather than counted either way
  const en::CandidateSolution published{IntMatrix{{-1, 1}, {1, 0}},
                                        IntMatrix{{1, 0}, {0, 0}}};
  const BigInt published_det = en::verify(p, published).det;
  ok = ok && published_det == 7;

  const auto elapsed = timer.ms();
  ok = ok && elapsed < 300000;
  std::ostringstream d;
  d << "search found determinant " << found_det.str()
    << ", independent norm-11 witness -1, published candidate evaluates to "
    << published_det.str() << "; " << elapsed << " ms";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 6: every lens space with p <= 12 admits a genus-one solution
// within entry bound 8.

bool criterion6(std::string &detail) {
  Stopwatch timer;
  int solved = 0, total = 0;
  for (int p = 2; p <= 12; ++p)
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++total;
      const auto prob = term_problem(lk::GeneratorTerm::lens(p, q), {1, 0});
      const auto v = en::search(prob, 8);
      const auto *e = std::get_if<en::Exists>(&v);
      if (e && en::verify(prob, e->solution).ok) ++solved;
    }

  const auto elapsed = timer.ms();
  const bool ok = total == 45 && solved == 45 && elapsed < 600000;
  std::ostringstream d;
  d << solved << "/" << total << " lens problems solved at bound 8; "
    << elapsed << " ms";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 7: the 24-cell minimal-genus grid, every cell exact and every
// piece of evidence independently re-verified.

bool reverify_evidence(const hfl::hc::HcBounds &b) {
  bool ok = true;
  for (const auto &e : b.evidence) {
    if (const auto *w = std::get_if<hfl::hc::WitnessEvidence>(&e)) {
      const auto r = en::verify(w->problem, w->solution);
      ok = ok && r.ok && r.det == w->det;
    } else if (const auto *o =
                   std::get_if<hfl::hc::ObstructionEvidence>(&e)) {
      ok = ok && en::recheck(o->problem, o->certificate);
    }
  }
  return ok;
}

bool criterion7(std::string &detail) {
  Stopwatch timer;
  bool ok = true;

  struct Row {
    lk::GeneratorTerm term;
    std::array<std::size_t, 4> want; // free rank 0..3
  };
  const std::vector<Row> rows = {
      {lk::GeneratorTerm::e0(1), {1, 2, 2, 3}},
      {lk::GeneratorTerm::e0(2), {2, 2, 2, 3}},
      {lk::GeneratorTerm::e0(3), {1, 2, 2, 3}},
      {lk::GeneratorTerm::e0(4), {1, 2, 2, 3}},
      {lk::GeneratorTerm::e1(2), {1, 2, 2, 3}},
      {lk::GeneratorTerm::e1(3), {2, 2, 3, 3}},
  };

  int exact_cells = 0, verified_cells = 0;
  for (const auto &row : rows) {
    for (std::size_t r = 0; r <= 3; ++r) {
      hfl::hc::ManifoldSpec spec;
      spec.decomposition = lk::LinkingDecomposition{r, {row.term}};
      const auto b = hfl::hc::hc_compute(spec);
      const bool cell_ok = b.exact.has_value() && *b.exact == row.want[r];
      if (cell_ok) ++exact_cells;
      const bool cell_verified = reverify_evidence(b);
      if (cell_verified) ++verified_cells;
      ok = ok && cell_ok && cell_verified;
    }
  }

  const auto elapsed = timer.ms();
  ok = ok && elapsed < 1800000;
  std::ostringstream d;
  d << exact_cells << "/24 cells exact, " << verified_cells
    << "/24 evidence sets re-verified; " << elapsed << " ms";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 8: the destabilization step turns verified genus-one solutions
// into verified annulus solutions, both on the worked example and on a
// search-produced solution for a connected sum.

bool criterion8(std::string &detail) {
  Stopwatch timer;
  bool ok = true;

  sg::SurgeryDiagram s2s1;
  s2s1.components.push_back({BigInt(0), BigInt(1)});
  s2s1.lk = IntMatrix::zero(1, 1);
  const auto p = en::problem_from_diagram(s2s1, {1, 0});
  const en::CandidateSolution c{IntMatrix{{1, 1}}, IntMatrix::zero(2, 2)};
  ok = ok && en::verify(p, c).det == 1;
  const auto out = en::stabilization_reduce(p, c);
  ok = ok && out.problem.M0.rows() == 0 &&
       out.problem.fiber == en::FiberType{0, 1} &&
       out.solution.Y == IntMatrix{{-1}} &&
       en::verify(out.problem, out.solution).det == -1;

  sg::SurgeryDiagram sum;
  sum.components.push_back({BigInt(0), BigInt(1)});
  sum.components.push_back({BigInt(3), BigInt(-1)});
  sum.lk = IntMatrix::zero(2, 2);
  const auto ps = en::problem_from_diagram(sum, {1, 0});
  const auto v = en::search(ps, 8);
  const auto *e = std::get_if<en::Exists>(&v);
  ok = ok && e != nullptr;
  if (e) {
    const auto red = en::stabilization_reduce(ps, e->solution);
    ok = ok && red.problem.M0 == IntMatrix{{3}} &&
         red.problem.W == IntMatrix{{-1}} &&
         red.problem.fiber == en::FiberType{0, 1} &&
         en::verify(red.problem, red.solution).ok;
  }

  const auto elapsed = timer.ms();
  ok = ok && elapsed < 1000;
  std::ostringstream d;
  d << "worked example reduces to the annulus solution with determinant -1, "
       "search solution for the connected sum reduces and re-verifies; "
    << elapsed << " ms";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// criterion 9: randomized property suites for the exact linear algebra and
// the equivalences the engine depends on.

BigInt cofactor_det(const IntMatrix &a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a.at(0, 0);
  BigInt sum = 0;
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t l = 0, t = 0; l < n; ++l) {
        if (l == j) continue;
        minor.at(i - 1, t++) = a.at(i, l);
      }
    sum += sign * a.at(0, j) * cofactor_det(minor);
    sign = -sign;
  }
  return sum;
}

BigInt abs_big(const BigInt &v) { return v < 0 ? BigInt(-v) : v; }

bool criterion9(std::string &detail) {
  Stopwatch timer;
  bool ok = true;

  std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);

  // smith normal form invariants on 1000 random matrices
  int snf_pass = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = dim(rng), m = dim(rng);
    IntMatrix a(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) a.at(i, j) = entry(rng);
    const auto s = hfl::linalg::smith_normal_form(a);
    bool good = s.U * a * s.V == s.D;
    good = good && abs_big(hfl::linalg::determinant(s.U)) == 1;
    good = good && abs_big(hfl::linalg::determinant(s.V)) == 1;
    for (std::size_t i = 0; i < s.D.rows() && good; ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j && s.D.at(i, j) != 0) good = false;
    const std::size_t k = std::min(s.D.rows(), s.D.cols());
    for (std::size_t i = 0; i + 1 < k && good; ++i) {
      const BigInt &d0 = s.D.at(i, i), &d1 = s.D.at(i + 1, i + 1);
      if (d0 < 0 || d1 < 0) good = false;
      else if (d0 == 0 && d1 != 0) good = false;
      else if (d0 != 0 && d1 != 0 && d1 % d0 != 0) good = false;
    }
    if (good) ++snf_pass;
  }
  ok = ok && snf_pass == 1000;

  // fraction-free determinant against naive cofactor expansion
  int det_pass = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = dim(rng);
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = entry(rng);
    if (hfl::linalg::determinant(a) == cofactor_det(a)) ++det_pass;
  }
  ok = ok && det_pass == 120;

  // orientation transport keeps the determinant of verified solutions
  std::uniform_int_distribution<int> small(-9, 9), sign01(0, 1);
  int transport_pass = 0, transport_total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    sg::SurgeryDiagram d;
    d.components.push_back({BigInt(0), BigInt(1)});
    d.lk = IntMatrix::zero(1, 1);
    const auto prob = en::problem_from_diagram(d, {1, 0});
    en::CandidateSolution c{IntMatrix(1, 2), IntMatrix(2, 2)};
    const int s = sign01(rng) ? 1 : -1;
    const BigInt alpha = small(rng), beta = small(rng);
    if (trial % 2 == 0) {
      c.X.at(0, 0) = 1;
      c.Y.at(0, 0) = alpha;
      c.Y.at(0, 1) = beta;
      c.Y.at(1, 0) = beta;
      c.Y.at(1, 1) = -s;
    } else {
      c.X.at(0, 1) = 1;
      c.Y.at(0, 0) = -s;
      c.Y.at(0, 1) = beta;
      c.Y.at(1, 0) = beta;
      c.Y.at(1, 1) = alpha;
    }
    const auto before = en::verify(prob, c);
    const auto flipped = en::problem_from_diagram(sg::orientation_flip(d, 0),
                                                  {1, 0});
    const auto after = en::verify(flipped, en::transport_solution(c, 0));
    ++transport_total;
    if (before.ok && after.ok && after.det == before.det) ++transport_pass;
  }
  for (int trial = 0; trial < 60; ++trial) {
    sg::SurgeryDiagram d;
    d.components.push_back({BigInt(0), BigInt(1)});
    d.components.push_back({BigInt(0), BigInt(1)});
    d.lk = IntMatrix::zero(2, 2);
    const auto prob = en::problem_from_diagram(d, {2, 0});
    en::CandidateSolution c{IntMatrix(2, 4), IntMatrix(4, 4)};
    c.X.at(0, 0) = 1;
    c.X.at(1, 2) = 1;
    for (int b = 0; b < 2; ++b) {
      const int s = sign01(rng) ? 1 : -1;
      c.Y.at(2 * b, 2 * b) = small(rng);
      c.Y.at(2 * b, 2 * b + 1) = small(rng);
      c.Y.at(2 * b + 1, 2 * b) = c.Y.at(2 * b, 2 * b + 1);
      c.Y.at(2 * b + 1, 2 * b + 1) = -s;
    }
    const std::size_t i = trial % 2;
    const auto before = en::verify(prob, c);
    const auto flipped = en::problem_from_diagram(sg::orientation_flip(d, i),
                                                  {2, 0});
    const auto after = en::verify(flipped, en::transport_solution(c, i));
    ++transport_total;
    if (before.ok && after.ok && after.det == before.det) ++transport_pass;
  }
  ok = ok && transport_pass == transport_total && transport_total >= 100;

  // the decomposition blocks and the representative diagram blocks give the
  // same determinant on shared candidates
  const std::vector<lk::LinkingDecomposition> pool = {
      {0, {}},
      {1, {}},
      {0, {lk::GeneratorTerm::lens(3, 1)}},
      {0, {lk::GeneratorTerm::lens(5, 2)}},
      {0, {lk::GeneratorTerm::e0(1)}},
      {0, {lk::GeneratorTerm::e0(2)}},
      {0, {lk::GeneratorTerm::e1(2)}},
      {0, {lk::GeneratorTerm::lens(2, 1), lk::GeneratorTerm::e0(1)}},
  };
  const std::vector<en::FiberType> fibers = {
      {1, 0}, {0, 2}, {2, 0}, {1, 1}, {0, 3}};
  std::uniform_int_distribution<int> cent(-3, 3);
  int coherent = 0, coherent_total = 0;
  for (const auto &dcmp : pool) {
    const auto rep = sg::representative_diagram(dcmp);
    for (const auto &f : fibers) {
      const auto pd = en::problem_from_decomposition(dcmp, f);
      const auto pg = en::problem_from_diagram(rep, f);
      for (int trial = 0; trial < 3; ++trial) {
        const std::size_t m = pd.M0.rows(), dd = f.block_size();
        en::CandidateSolution c{IntMatrix(m, dd), IntMatrix(dd, dd)};
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < dd; ++j) c.X.at(i, j) = cent(rng);
        for (std::size_t i = 0; i < dd; ++i)
          for (std::size_t j = i; j < dd; ++j) {
            c.Y.at(i, j) = cent(rng);
            c.Y.at(j, i) = c.Y.at(i, j);
          }
        ++coherent_total;
        if (en::verify(pd, c).det == en::verify(pg, c).det) ++coherent;
      }
    }
  }
  ok = ok && coherent == coherent_total;

  const auto elapsed = timer.ms();
  ok = ok && elapsed < 120000;
  std::ostringstream d;
  d << snf_pass << "/1000 smith checks, " << det_pass
    << "/120 determinant cross-checks, " << transport_pass << "/"
    << transport_total << " transport checks, " << coherent << "/"
    << coherent_total << " coherence checks; " << elapsed << " ms";
  detail = d.str();
  return ok;
}

} // namespace

int main() {
  Gate gate;
  std::vector<std::int64_t> full_e13;

  const auto run = [&gate](int index, const std::string &label, auto &&fn) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception &e) {
      detail = std::string("exception: ") + e.what();
    }
    gate.report(index, label, ok, detail);
  };

  run(1, "heegaard linking forms of the three generator families",
      [](std::string &d) { return criterion1(d); });
  run(2, "determinant witnesses for the even wall forms",
      [](std::string &d) { return criterion2(d); });
  run(3, "full mod-8 enumerations rule out genus one",
      [&full_e13](std::string &d) { return criterion3(d, full_e13); });
  run(4, "square-block rule certifies and matches the full enumeration",
      [&full_e13](std::string &d) { return criterion4(d, full_e13); });
  run(5, "bounded search settles the odd wall form at genus one",
      [](std::string &d) { return criterion5(d); });
  run(6, "genus-one solutions for every lens space with p <= 12",
      [](std::string &d) { return criterion6(d); });
  run(7, "minimal fiber genus grid with re-verifiable evidence",
      [](std::string &d) { return criterion7(d); });
  run(8, "stabilization reduction yields verified smaller solutions",
      [](std::string &d) { return criterion8(d); });
  run(9, "randomized property suites",
      [](std::string &d) { return criterion9(d); });

  return gate.all_ok ? 0 : 1;
}
