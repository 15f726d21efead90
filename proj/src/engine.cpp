#include "hfl/engine.hpp"

#include "hfl/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <utility>

namespace hfl::engine {

namespace {

using boost::multiprecision::pow;

// exact determinant of a small nonnegative-residue matrix. Bareiss keeps
// every intermediate an honest minor of the input; with entries < 16 and
// n <= 12 those minors fit int64 and the transient products fit 128 bits.
std::int64_t det_small(std::vector<std::int64_t> &a, std::size_t n) {
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r * n + k] == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = k; j < n; ++j)
        std::swap(a[k * n + j], a[r * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 t = static_cast<__int128>(a[i * n + j]) * a[k * n + k] -
                     static_cast<__int128>(a[i * n + k]) * a[k * n + j];
        a[i * n + j] = static_cast<std::int64_t>(t / prev);
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return n == 0 ? sign : sign * a[n * n - 1];
}

// reductions of the fixed blocks, shared by the pruning and the full
// modular enumeration
struct ModTable {
  std::int64_t q = 0;
  std::size_t m = 0, d = 0, n = 0;
  std::vector<std::int64_t> m0, w, e;

  ModTable() = default;
  ModTable(const BlockProblem &p, std::int64_t q_) : q(q_) {
    m = p.M0.rows();
    d = p.fiber.block_size();
    n = m + d;
    m0.resize(m * m);
    w.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        m0[i * m + j] = linalg::mod_reduce(p.M0.at(i, j), q);
        w[i * m + j] = linalg::mod_reduce(p.W.at(i, j), q);
      }
    const IntMatrix eb = fiber_pairing_block(p.fiber);
    e.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        e[i * d + j] = linalg::mod_reduce(eb.at(i, j), q);
  }
};

// index of Y[r][c] in the flat coordinate layout (upper triangle row-major
// after the m*d X entries)
std::size_t y_index(std::size_t m, std::size_t d, std::size_t r,
                    std::size_t c) {
  if (r > c) std::swap(r, c);
  return m * d + r * d - r * (r - 1) / 2 + (c - r);
}

// determinant residue of the assembled matrix for integer coordinates
// (arbitrary sign; reduced internally)
std::int64_t mod_det(const ModTable &t, const std::vector<std::int64_t> &coords,
                     std::vector<std::int64_t> &scratch,
                     std::vector<std::int64_t> &xq) {
  const std::size_t m = t.m, d = t.d, n = t.n;
  xq.assign(m * d, 0);
  for (std::size_t i = 0; i < m * d; ++i) {
    std::int64_t v = coords[i] % t.q;
    xq[i] = v < 0 ? v + t.q : v;
  }
  scratch.assign(n * n, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      scratch[i * n + j] = t.m0[i * m + j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < d; ++c) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < m; ++k)
        s += t.w[i * m + k] * xq[k * d + c];
      scratch[i * n + (m + c)] = s % t.q;
    }
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t j = 0; j < m; ++j)
      scratch[(m + c) * n + j] = xq[j * d + c];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      std::int64_t v = coords[y_index(m, d, r, c)] % t.q;
      if (v < 0) v += t.q;
      scratch[(m + r) * n + (m + c)] = (v + t.e[r * d + c]) % t.q;
    }
  std::int64_t det = det_small(scratch, n) % t.q;
  return det < 0 ? det + t.q : det;
}

// per-worker candidate tester: cheap residue filters first, exact
// determinant only for survivors
class CandidateTester {
public:
  explicit CandidateTester(const BlockProblem &p)
      : p_(p), m_(p.M0.rows()), d_(p.fiber.block_size()),
        prune_(m_ + d_ <= 12) {
    if (prune_) {
      mod8_ = ModTable(p, 8);
      mod9_ = ModTable(p, 9);
    }
  }

  // det when |det| = 1, nothing otherwise
  std::optional<BigInt> test(const std::vector<std::int64_t> &coords) {
    if (prune_) {
      const std::int64_t r8 = mod_det(mod8_, coords, scratch_, xq_);
      if (r8 != 1 && r8 != 7) return std::nullopt;
      const std::int64_t r9 = mod_det(mod9_, coords, scratch_, xq_);
      if (r9 != 1 && r9 != 8) return std::nullopt;
    }
    std::vector<BigInt> big(coords.begin(), coords.end());
    const auto cand = candidate_from_coordinates(m_, p_.fiber, big);
    const auto vr = verify(p_, cand);
    if (vr.ok) return vr.det;
    return std::nullopt;
  }

private:
  const BlockProblem &p_;
  std::size_t m_, d_;
  bool prune_;
  ModTable mod8_, mod9_;
  std::vector<std::int64_t> scratch_, xq_;
};

struct ShellHit {
  std::vector<std::int64_t> coords;
  BigInt det;
};

// lexicographic scan of one worker's share of the shell: the given leading
// coordinates, each followed by every completion of max-norm exactly s
std::optional<ShellHit> scan_groups(const BlockProblem &p, std::int64_t s,
                                    std::size_t len,
                                    const std::vector<std::int64_t> &leads) {
  CandidateTester tester(p);
  std::vector<std::int64_t> c(len, 0);
  std::optional<ShellHit> hit;

  auto dfs = [&](auto &&self, std::size_t pos, bool have) -> bool {
    if (pos == len) {
      if (!have) return false;
      if (auto det = tester.test(c)) {
        hit = ShellHit{c, *det};
        return true;
      }
      return false;
    }
    if (pos + 1 == len && !have) {
      for (std::int64_t v : {-s, s}) {
        c[pos] = v;
        if (self(self, pos + 1, true)) return true;
      }
      return false;
    }
    for (std::int64_t v = -s; v <= s; ++v) {
      c[pos] = v;
      if (self(self, pos + 1, have || v == -s || v == s)) return true;
    }
    return false;
  };

  for (std::int64_t lead : leads) {
    c[0] = lead;
    if (dfs(dfs, 1, lead == -s || lead == s)) return hit;
  }
  return std::nullopt;
}

// number of length-len integer vectors with max-norm exactly s
BigInt shell_count(std::size_t len, std::int64_t s) {
  if (s == 0) return 1;
  if (len == 0) return 0;
  return pow(BigInt(2 * s + 1), static_cast<unsigned>(len)) -
         pow(BigInt(2 * s - 1), static_cast<unsigned>(len));
}

std::optional<ShellHit> scan_shell(const BlockProblem &p, std::int64_t s,
                                   std::size_t len, unsigned workers) {
  std::vector<std::int64_t> leads;
  for (std::int64_t v = -s; v <= s; ++v) leads.push_back(v);

  const unsigned active = std::min<unsigned>(
      std::max(1u, workers), static_cast<unsigned>(leads.size()));
  if (active == 1) return scan_groups(p, s, len, leads);

  std::vector<std::optional<ShellHit>> found(active);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < active; ++w) {
    std::vector<std::int64_t> share;
    for (std::size_t i = w; i < leads.size(); i += active)
      share.push_back(leads[i]);
    pool.emplace_back([&p, s, len, share = std::move(share), &found, w]() {
      found[w] = scan_groups(p, s, len, share);
    });
  }
  for (auto &t : pool) t.join();

  std::optional<ShellHit> best;
  for (auto &h : found) {
    if (!h) continue;
    if (!best || h->coords < best->coords) best = std::move(h);
  }
  return best;
}

BigInt abs_big(const BigInt &v) { return v < 0 ? BigInt(-v) : v; }

} // namespace

void validate_problem(const BlockProblem &p) {
  if (!p.M0.is_square() || !p.W.is_square() || p.M0.rows() != p.W.rows())
    throw DimensionError("problem blocks must be square and the same size");
}

BlockProblem problem_from_decomposition(const linking::LinkingDecomposition &d,
                                        FiberType fiber) {
  const auto tm = linking::theorem_matrices(d);
  return {tm.S, tm.T, fiber,
          "decomposition: " + linking::to_string(linking::normalize(d))};
}

BlockProblem problem_from_diagram(const surgery::SurgeryDiagram &d,
                                  FiberType fiber) {
  const auto sm = surgery::phi_psi(d);
  return {sm.Phi, sm.Psi, fiber, "diagram: " + surgery::to_string(d)};
}

IntMatrix fiber_pairing_block(FiberType fiber) {
  const std::size_t d = fiber.block_size();
  IntMatrix e(d, d);
  for (std::size_t i = 0; i < fiber.g; ++i) e.at(2 * i, 2 * i + 1) = 1;
  return e;
}

CandidateSolution
candidate_from_coordinates(std::size_t m, FiberType fiber,
                           const std::vector<BigInt> &coords) {
  const std::size_t d = fiber.block_size();
  if (coords.size() != m * d + d * (d + 1) / 2)
    throw DimensionError("coordinate count does not match the problem shape");
  CandidateSolution c{IntMatrix(m, d), IntMatrix(d, d)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) c.X.at(i, j) = coords[i * d + j];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = r; s < d; ++s) {
      const BigInt &v = coords[y_index(m, d, r, s)];
      c.Y.at(r, s) = v;
      c.Y.at(s, r) = v;
    }
  return c;
}

std::vector<BigInt> candidate_coordinates(const CandidateSolution &c) {
  const std::size_t m = c.X.rows(), d = c.X.cols();
  std::vector<BigInt> coords(m * d + d * (d + 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = c.X.at(i, j);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = r; s < d; ++s)
      coords[y_index(m, d, r, s)] = c.Y.at(r, s);
  return coords;
}

std::size_t variable_count(const BlockProblem &p) {
  const std::size_t m = p.M0.rows(), d = p.fiber.block_size();
  return m * d + d * (d + 1) / 2;
}

IntMatrix assemble(const BlockProblem &p, const CandidateSolution &c) {
  validate_problem(p);
  const std::size_t m = p.M0.rows(), d = p.fiber.block_size();
  if (c.X.rows() != m || c.X.cols() != d)
    throw DimensionError("X must be (block size) x (fiber size)");
  if (c.Y.rows() != d || c.Y.cols() != d)
    throw DimensionError("Y must be square of the fiber size");
  if (!c.Y.is_symmetric()) throw ValidationError("Y must be symmetric");

  const IntMatrix tx = p.W * c.X;
  const IntMatrix e = fiber_pairing_block(p.fiber);
  IntMatrix out(m + d, m + d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.at(i, j) = p.M0.at(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) out.at(i, m + j) = tx.at(i, j);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j) out.at(m + i, j) = c.X.at(j, i);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.at(m + i, m + j) = c.Y.at(i, j) + e.at(i, j);
  return out;
}

VerifyResult verify(const BlockProblem &p, const CandidateSolution &c) {
  const BigInt det = linalg::determinant(assemble(p, c));
  return {det == 1 || det == -1, det};
}

CandidateSolution transport_solution(const CandidateSolution &c,
                                     std::size_t component_index) {
  if (component_index >= c.X.rows())
    throw DimensionError("component index out of range");
  CandidateSolution out = c;
  for (std::size_t j = 0; j < out.X.cols(); ++j)
    out.X.at(component_index, j) = -out.X.at(component_index, j);
  return out;
}

std::string to_string(ObstructionKind k) {
  return k == ObstructionKind::FullModular ? "full-modular" : "square-block";
}

Verdict search(const BlockProblem &p, std::size_t entry_bound,
               const SearchOptions &opts) {
  validate_problem(p);
  const std::size_t m = p.M0.rows(), d = p.fiber.block_size();
  const std::size_t len = m * d + d * (d + 1) / 2;

  std::uint64_t examined = 0;
  std::int64_t completed = -1;

  for (std::int64_t s = 0; s <= static_cast<std::int64_t>(entry_bound); ++s) {
    const BigInt count = shell_count(len, s);
    if (BigInt(examined) + count > opts.budget)
      return Unknown{completed, examined, true, {}};

    if (len == 0) {
      if (s == 0) {
        CandidateTester tester(p);
        if (auto det = tester.test({}))
          return Exists{candidate_from_coordinates(m, p.fiber, {}), *det};
      }
    } else {
      if (auto hit = scan_shell(p, s, len, opts.workers)) {
        std::vector<BigInt> big(hit->coords.begin(), hit->coords.end());
        return Exists{candidate_from_coordinates(m, p.fiber, big), hit->det};
      }
    }
    examined += count.convert_to<std::uint64_t>();
    completed = s;
  }
  return Unknown{completed, examined, false, {}};
}

std::optional<ObstructionCertificate>
modular_obstruction(const BlockProblem &p, std::int64_t q,
                    std::uint64_t budget) {
  validate_problem(p);
  if (q < 2) throw ValidationError("modulus must be at least 2");
  const std::size_t v = variable_count(p);
  if (pow(BigInt(q), static_cast<unsigned>(v)) > budget)
    throw CapacityError("modular enumeration exceeds the budget");

  const std::size_t m = p.M0.rows(), d = p.fiber.block_size();
  const bool small = m + d <= 12;
  ModTable table;
  if (small) table = ModTable(p, q);

  std::vector<bool> attained(static_cast<std::size_t>(q), false);
  std::vector<std::int64_t> coords(v, 0), scratch, xq;

  auto evaluate = [&]() -> std::int64_t {
    if (small) return mod_det(table, coords, scratch, xq);
    std::vector<BigInt> big(coords.begin(), coords.end());
    const auto cand = candidate_from_coordinates(m, p.fiber, big);
    return linalg::determinant_mod(assemble(p, cand), q);
  };

  for (;;) {
    attained[static_cast<std::size_t>(evaluate())] = true;
    if (attained[1] && attained[static_cast<std::size_t>(q - 1)])
      return std::nullopt;
    std::size_t i = v;
    bool done = true;
    while (i > 0) {
      --i;
      if (++coords[i] < q) {
        done = false;
        break;
      }
      coords[i] = 0;
    }
    if (done) break;
  }

  if (attained[1] || attained[static_cast<std::size_t>(q - 1)])
    return std::nullopt;
  ObstructionCertificate cert{ObstructionKind::FullModular, q, {}, 0};
  for (std::int64_t r = 0; r < q; ++r)
    if (attained[static_cast<std::size_t>(r)]) cert.attainable.push_back(r);
  return cert;
}

bool square_block_applicable(const BlockProblem &p, std::int64_t q) {
  validate_problem(p);
  if (q < 2) throw ValidationError("modulus must be at least 2");
  if (p.M0.rows() != p.fiber.block_size()) return false;
  for (const auto &v : p.M0.entries())
    if (v % q != 0) return false;
  return true;
}

std::optional<ObstructionCertificate>
square_block_obstruction(const BlockProblem &p, std::int64_t q) {
  if (!square_block_applicable(p, q)) return std::nullopt;
  const std::int64_t dw = linalg::mod_reduce(linalg::determinant(p.W), q);

  std::vector<bool> attained(static_cast<std::size_t>(q), false);
  for (std::int64_t x = 0; x < q; ++x) {
    const std::int64_t s = (x * x) % q;
    attained[static_cast<std::size_t>((dw * s) % q)] = true;
    attained[static_cast<std::size_t>(((q - dw) * s) % q)] = true;
  }

  if (attained[1] || attained[static_cast<std::size_t>(q - 1)])
    return std::nullopt;
  ObstructionCertificate cert{ObstructionKind::SquareBlock, q, {}, dw};
  for (std::int64_t r = 0; r < q; ++r)
    if (attained[static_cast<std::size_t>(r)]) cert.attainable.push_back(r);
  return cert;
}

bool recheck(const BlockProblem &p, const ObstructionCertificate &cert,
             std::uint64_t budget) {
  if (cert.modulus < 2) return false;
  std::optional<ObstructionCertificate> fresh;
  switch (cert.kind) {
  case ObstructionKind::FullModular:
    fresh = modular_obstruction(p, cert.modulus, budget);
    break;
  case ObstructionKind::SquareBlock:
    fresh = square_block_obstruction(p, cert.modulus);
    break;
  }
  return fresh && *fresh == cert;
}

bool disk_case(const linalg::AbelianGroupData &h) { return h.is_trivial(); }

Verdict decide(const BlockProblem &p, const DecideOptions &opts) {
  validate_problem(p);
  const std::size_t d = p.fiber.block_size();

  if (d == 0) {
    // a disk fiber leaves no unknowns: the block itself must be unimodular
    const BigInt det = linalg::determinant(p.M0);
    if (abs_big(det) == 1)
      return Exists{CandidateSolution{IntMatrix(p.M0.rows(), 0),
                                      IntMatrix(0, 0)},
                    det};
    std::int64_t q = 2;
    for (;; ++q) {
      const std::int64_t r = linalg::mod_reduce(det, q);
      if (r != 1 && r != q - 1) break;
    }
    return NotExists{{ObstructionKind::FullModular, q,
                      {linalg::mod_reduce(det, q)}, 0}};
  }

  std::vector<std::int64_t> tried;
  if (opts.obstructions) {
    for (std::int64_t q : {8, 9}) {
      if (!square_block_applicable(p, q)) continue;
      if (auto cert = square_block_obstruction(p, q)) return NotExists{*cert};
      tried.push_back(q);
    }
    for (std::int64_t q : {8, 9}) {
      try {
        if (auto cert = modular_obstruction(p, q, opts.budget))
          return NotExists{*cert};
        if (tried.empty() || tried.back() != q) tried.push_back(q);
      } catch (const CapacityError &) {
        // enumeration does not fit; the search below still runs
      }
    }
  }

  Verdict v = search(p, opts.entry_bound, {opts.budget, opts.workers});
  if (auto *u = std::get_if<Unknown>(&v)) {
    std::sort(tried.begin(), tried.end());
    tried.erase(std::unique(tried.begin(), tried.end()), tried.end());
    u->moduli_tried = std::move(tried);
  }
  return v;
}

ReducedProblem stabilization_reduce(const BlockProblem &p,
                                    const CandidateSolution &c) {
  const auto vr = verify(p, c);
  if (!vr.ok)
    throw ValidationError("reduction input must be a verified solution");

  const std::size_t m = p.M0.rows(), d = p.fiber.block_size();
  const bool knot_style = p.fiber == FiberType{1, 0};
  if (!knot_style && !(p.fiber.g == 0 && p.fiber.n >= 2))
    throw ValidationError("reduction needs fiber (0, n>=2) or (1, 0)");
  if (m == 0)
    throw ValidationError("reduction needs a leading unknot component");
  for (std::size_t j = 0; j < m; ++j)
    if (p.M0.at(0, j) != 0 || p.M0.at(j, 0) != 0)
      throw ValidationError("leading component must be a split 0-framed unknot");
  if (p.W.at(0, 0) != 1)
    throw ValidationError("leading component must carry coefficient q = 1");
  for (std::size_t j = 1; j < m; ++j)
    if (p.W.at(0, j) != 0 || p.W.at(j, 0) != 0)
      throw ValidationError("leading scaling row must be diagonal");

  IntMatrix x = c.X;
  IntMatrix ycap = c.Y + fiber_pairing_block(p.fiber);

  // basis change of the fiber's first homology: X -> X C and
  // Ycap -> C^t Ycap C for the shear C adding l times column i to column j.
  // shears have determinant one, so the (1,0) pairing block survives up to a
  // symmetric integer correction that Y absorbs.
  auto shear = [&](std::size_t i, std::size_t j, const BigInt &l) {
    for (std::size_t r = 0; r < m; ++r) x.at(r, j) += l * x.at(r, i);
    for (std::size_t r = 0; r < d; ++r) ycap.at(r, j) += l * ycap.at(r, i);
    for (std::size_t r = 0; r < d; ++r) ycap.at(j, r) += l * ycap.at(i, r);
  };

  // euclidean sweep of the unknot's row to (+-1, 0, ..., 0); the content
  // must be a unit, since it divides the unimodular determinant
  for (std::size_t j = 1; j < d; ++j) {
    while (x.at(0, j) != 0) {
      if (x.at(0, 0) == 0) {
        shear(j, 0, 1);
        continue;
      }
      const BigInt a = abs_big(x.at(0, 0)), b = abs_big(x.at(0, j));
      if (b >= a)
        shear(0, j, -(x.at(0, j) / x.at(0, 0)));
      else
        shear(j, 0, -(x.at(0, 0) / x.at(0, j)));
    }
  }
  if (abs_big(x.at(0, 0)) != 1)
    throw ValidationError("unknot row content is not a unit");

  const FiberType out_fiber =
      knot_style ? FiberType{0, 1} : FiberType{0, p.fiber.n - 1};
  BlockProblem out{p.M0.drop_row_col(0, 0), p.W.drop_row_col(0, 0), out_fiber,
                   "reduced: " + p.provenance};
  // the reduced fiber has no handle pairs, so its pairing block vanishes and
  // the trimmed Ycap is the new Y outright
  CandidateSolution reduced{x.drop_row_col(0, 0), ycap.drop_row_col(0, 0)};

  const auto check = verify(out, reduced);
  if (!check.ok)
    throw ValidationError("reduced solution failed re-verification");
  return {std::move(out), std::move(reduced)};
}

} // namespace hfl::engine
