#include "hfl/linking_form.hpp"

#include "hfl/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <unordered_set>
#include <utility>

namespace hfl::linking {

namespace {

using RatMatrix = std::vector<std::vector<BigRat>>;

BigInt pow2(int k) { return BigInt(1) << k; }

int kind_rank(GeneratorKind k) {
  switch (k) {
  case GeneratorKind::A: return 0;
  case GeneratorKind::E0: return 1;
  case GeneratorKind::E1: return 2;
  }
  return 3;
}

bool term_less(const GeneratorTerm &a, const GeneratorTerm &b) {
  int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
  if (ra != rb) return ra < rb;
  if (a.kind == GeneratorKind::A) {
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  }
  return a.k < b.k;
}

BigInt gcd_abs(const BigInt &a, const BigInt &b) {
  BigInt x = a < 0 ? BigInt(-a) : a;
  BigInt y = b < 0 ? BigInt(-b) : b;
  while (y != 0) {
    BigInt r = x % y;
    x = y;
    y = r;
  }
  return x;
}

// exact -B^-1 A on the presentation basis, before any mod-1 reduction
RatMatrix negated_b_inverse_a(const HeegaardGluingData &h) {
  validate_gluing(h);
  const auto binv = linalg::rational_inverse(h.B);
  const std::size_t g = h.genus();
  RatMatrix out(g, std::vector<BigRat>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      BigRat s = 0;
      for (std::size_t k = 0; k < g; ++k) {
        if (binv[i][k] == 0 || h.A.at(k, j) == 0) continue;
        s += binv[i][k] * BigRat(h.A.at(k, j));
      }
      out[i][j] = -s;
    }
  return out;
}

} // namespace

GeneratorTerm GeneratorTerm::lens(BigInt p, BigInt q) {
  GeneratorTerm t;
  t.kind = GeneratorKind::A;
  t.p = std::move(p);
  t.q = std::move(q);
  validate_term(t);
  return t;
}

GeneratorTerm GeneratorTerm::e0(int k) {
  GeneratorTerm t;
  t.kind = GeneratorKind::E0;
  t.k = k;
  validate_term(t);
  return t;
}

GeneratorTerm GeneratorTerm::e1(int k) {
  GeneratorTerm t;
  t.kind = GeneratorKind::E1;
  t.k = k;
  validate_term(t);
  return t;
}

bool GeneratorTerm::is_trivial() const {
  if (kind == GeneratorKind::A) return p == 1;
  return k == 0;
}

void validate_term(const GeneratorTerm &t) {
  switch (t.kind) {
  case GeneratorKind::A:
    if (t.p < 1) throw ValidationError("lens term needs p >= 1");
    if (gcd_abs(t.p, t.q) != 1)
      throw ValidationError("lens term needs gcd(p, q) = 1");
    break;
  case GeneratorKind::E0:
    if (t.k < 0) throw ValidationError("e0 term needs k >= 0");
    break;
  case GeneratorKind::E1:
    if (t.k < 0 || t.k == 1)
      throw ValidationError("e1 term needs k >= 2 (or 0 for the trivial stand-in)");
    break;
  }
}

LinkingDecomposition normalize(const LinkingDecomposition &d) {
  LinkingDecomposition out;
  out.free_rank = d.free_rank;
  for (const auto &t : d.terms) {
    validate_term(t);
    if (!t.is_trivial()) out.terms.push_back(t);
  }
  std::sort(out.terms.begin(), out.terms.end(), term_less);
  return out;
}

LinkingDecomposition direct_sum(const LinkingDecomposition &d1,
                                const LinkingDecomposition &d2) {
  LinkingDecomposition out;
  out.free_rank = d1.free_rank + d2.free_rank;
  out.terms = d1.terms;
  out.terms.insert(out.terms.end(), d2.terms.begin(), d2.terms.end());
  return normalize(out);
}

std::string to_string(const GeneratorTerm &t) {
  switch (t.kind) {
  case GeneratorKind::A:
    return "A(" + t.p.str() + "," + t.q.str() + ")";
  case GeneratorKind::E0:
    return "E0(" + std::to_string(t.k) + ")";
  case GeneratorKind::E1:
    return "E1(" + std::to_string(t.k) + ")";
  }
  return "?";
}

std::string to_string(const LinkingDecomposition &d) {
  if (d.free_rank == 0 && d.terms.empty()) return "trivial";
  std::string out;
  if (d.free_rank > 0) {
    out = "free";
    if (d.free_rank > 1) out += "^" + std::to_string(d.free_rank);
  }
  for (const auto &t : d.terms) {
    if (!out.empty()) out += " + ";
    out += to_string(t);
  }
  return out;
}

TheoremMatrices theorem_matrices(const LinkingDecomposition &d0) {
  const auto d = normalize(d0);
  const std::size_t r = d.free_rank;
  IntMatrix S = IntMatrix::zero(r, r);
  IntMatrix T = IntMatrix::identity(r);
  for (const auto &t : d.terms) {
    switch (t.kind) {
    case GeneratorKind::A:
      S = S.direct_sum(IntMatrix{{t.p}});
      T = T.direct_sum(IntMatrix{{-t.q}});
      break;
    case GeneratorKind::E0: {
      const BigInt m = pow2(t.k);
      S = S.direct_sum(IntMatrix{{0, m}, {m, 0}});
      T = T.direct_sum(IntMatrix::identity(2));
      break;
    }
    case GeneratorKind::E1: {
      const BigInt m = pow2(t.k);
      S = S.direct_sum(IntMatrix{{2 * m, -m}, {-3 * m, 2 * m}});
      T = T.direct_sum(IntMatrix::diagonal({-1, -3}));
      break;
    }
    }
  }
  return {S, T};
}

BigRat mod_one(const BigRat &v) {
  const BigInt n = numerator(v);
  const BigInt d = denominator(v);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return v - BigRat(q);
}

LinkingGram::LinkingGram(linalg::AbelianGroupData group,
                         std::vector<std::vector<BigRat>> gram)
    : group_(std::move(group)), gram_(std::move(gram)) {
  if (group_.free_rank != 0)
    throw ValidationError("linking gram is defined on a finite group");
  const auto &f = group_.invariant_factors;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 2)
      throw ValidationError("invariant factors must be greater than 1");
    if (i + 1 < f.size() && f[i + 1] % f[i] != 0)
      throw ValidationError("invariant factors must divide in order");
  }
  const std::size_t m = f.size();
  if (gram_.size() != m)
    throw DimensionError("gram size does not match the generator count");
  for (auto &row : gram_) {
    if (row.size() != m)
      throw DimensionError("gram rows must all have the generator count");
    for (auto &e : row) e = mod_one(e);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (gram_[i][j] != gram_[j][i])
        throw ValidationError("gram is not symmetric mod 1");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const BigRat s = gram_[i][j] * BigRat(f[i]);
      if (denominator(s) != 1)
        throw ValidationError(
            "pairing value times generator order is not an integer");
    }
}

LinkingGram LinkingGram::negated() const {
  auto g = gram_;
  for (auto &row : g)
    for (auto &e : row) e = mod_one(-e);
  return LinkingGram(group_, std::move(g));
}

LinkingGram gram_of_generator(const GeneratorTerm &t) {
  validate_term(t);
  if (t.is_trivial()) return LinkingGram({}, {});
  switch (t.kind) {
  case GeneratorKind::A:
    return LinkingGram({0, {t.p}}, {{mod_one(BigRat(t.q, t.p))}});
  case GeneratorKind::E0: {
    const BigInt m = pow2(t.k);
    const BigRat h(1, m);
    return LinkingGram({0, {m, m}}, {{0, h}, {h, 0}});
  }
  case GeneratorKind::E1: {
    const BigInt m = pow2(t.k);
    const BigRat h(1, m), dd(2, m);
    return LinkingGram({0, {m, m}}, {{dd, h}, {h, dd}});
  }
  }
  throw ValidationError("unknown generator kind");
}

void validate_gluing(const HeegaardGluingData &h) {
  if (!h.A.is_square() || !h.B.is_square() || h.A.rows() != h.B.rows())
    throw DimensionError("gluing blocks must be square and the same size");
  // a genuine gluing satisfies A B^t = B A^t; the check needs no inverse, so
  // it also covers data whose second block is singular
  const IntMatrix left = h.A * h.B.transpose();
  const IntMatrix right = h.B * h.A.transpose();
  if (left != right)
    throw ValidationError("gluing data does not define a symmetric pairing");
}

LinkingGram linking_form_from_heegaard(const HeegaardGluingData &h) {
  const auto pres = negated_b_inverse_a(h);
  const std::size_t g = h.genus();

  const auto snf = linalg::smith_normal_form(h.B.transpose());
  const auto uinv = linalg::unimodular_inverse(snf.U);

  // generators of Z^g / B^t Z^g are the columns of U^-1; re-express the
  // pairing on them and keep the generators of order > 1
  RatMatrix full(g, std::vector<BigRat>(g));
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      BigRat s = 0;
      for (std::size_t i = 0; i < g; ++i) {
        if (uinv.at(i, a) == 0) continue;
        for (std::size_t j = 0; j < g; ++j) {
          if (pres[i][j] == 0 || uinv.at(j, b) == 0) continue;
          s += BigRat(uinv.at(i, a)) * pres[i][j] * BigRat(uinv.at(j, b));
        }
      }
      full[a][b] = s;
    }

  std::vector<std::size_t> idx;
  std::vector<BigInt> factors;
  for (std::size_t i = 0; i < g; ++i) {
    if (snf.D.at(i, i) > 1) {
      idx.push_back(i);
      factors.push_back(snf.D.at(i, i));
    }
  }

  const std::size_t m = idx.size();
  RatMatrix sub(m, std::vector<BigRat>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      sub[x][y] = mod_one(full[idx[x]][idx[y]]);

  return LinkingGram({0, std::move(factors)}, std::move(sub));
}

std::vector<std::vector<BigRat>>
heegaard_presentation_gram(const HeegaardGluingData &h) {
  auto pres = negated_b_inverse_a(h);
  const std::size_t g = h.genus();
  for (auto &row : pres)
    for (auto &e : row) e = mod_one(e);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j)
      if (pres[i][j] != pres[j][i])
        throw ValidationError("gluing data does not define a symmetric pairing");
  return pres;
}

bool nonsingular(const LinkingGram &g, std::size_t order_bound) {
  const auto &fB = g.group().invariant_factors;
  if (g.group().torsion_order() > order_bound)
    throw CapacityError("group too large for the brute-force radical scan");
  const std::size_t m = fB.size();
  if (m == 0) return true;

  std::vector<std::int64_t> f(m);
  for (std::size_t i = 0; i < m; ++i)
    f[i] = fB[i].convert_to<std::int64_t>();

  std::vector<std::int64_t> c(m, 0);
  for (;;) {
    // advance the mixed-radix counter; the all-zero element is skipped
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++c[i] < f[i]) break;
      c[i] = 0;
      if (i == 0) return true;
    }

    // c is in the radical when it pairs integrally with every generator
    bool radical = true;
    for (std::size_t j = 0; j < m && radical; ++j) {
      BigRat s = 0;
      for (std::size_t t = 0; t < m; ++t)
        if (c[t] != 0) s += BigRat(c[t]) * g.gram()[t][j];
      if (mod_one(s) != 0) radical = false;
    }
    if (radical) return false;
  }
}

bool gram_equivalent(const LinkingGram &g1, const LinkingGram &g2,
                     std::size_t order_bound) {
  if (g1.group() != g2.group()) return false;
  const auto &fB = g1.group().invariant_factors;
  const BigInt order_big = g1.group().torsion_order();
  if (order_big > order_bound)
    throw CapacityError("group too large for the isomorphism search");
  const std::size_t m = fB.size();
  if (m == 0) return true;

  std::vector<std::int64_t> f(m);
  for (std::size_t i = 0; i < m; ++i)
    f[i] = fB[i].convert_to<std::int64_t>();
  const std::int64_t order = order_big.convert_to<std::int64_t>();
  const std::int64_t D = f[m - 1]; // exponent of the group

  // common-denominator numerators: gram * D is integral because every entry's
  // denominator divides the order of a generator, which divides D
  auto numerators = [&](const LinkingGram &g) {
    std::vector<std::vector<std::int64_t>> num(m,
                                               std::vector<std::int64_t>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const BigRat s = g.gram()[i][j] * BigRat(D);
        num[i][j] =
            linalg::mod_reduce(numerator(s), D);
      }
    return num;
  };
  const auto num1 = numerators(g1);
  const auto num2 = numerators(g2);

  // mixed-radix packing for the subgroup closure test
  std::vector<std::int64_t> weight(m, 1);
  for (std::size_t i = 1; i < m; ++i) weight[i] = weight[i - 1] * f[i - 1];

  auto elt_order = [&](const std::vector<std::int64_t> &c) {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < m; ++i)
      o = std::lcm(o, f[i] / std::gcd(f[i], c[i]));
    return o;
  };

  auto pairing2 = [&](const std::vector<std::int64_t> &a,
                      const std::vector<std::int64_t> &b) {
    std::int64_t s = 0;
    for (std::size_t x = 0; x < m; ++x) {
      if (a[x] == 0) continue;
      for (std::size_t y = 0; y < m; ++y) {
        if (b[y] == 0 || num2[x][y] == 0) continue;
        s = (s + a[x] % D * (b[y] % D) % D * num2[x][y]) % D;
      }
    }
    return s;
  };

  std::vector<std::vector<std::int64_t>> cols;

  auto generates_everything = [&]() {
    std::unordered_set<std::uint64_t> seen;
    std::queue<std::vector<std::int64_t>> work;
    seen.insert(0);
    work.push(std::vector<std::int64_t>(m, 0));
    while (!work.empty()) {
      auto cur = work.front();
      work.pop();
      for (const auto &gcol : cols) {
        auto next = cur;
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < m; ++i) {
          next[i] = (next[i] + gcol[i]) % f[i];
          code += static_cast<std::uint64_t>(next[i] * weight[i]);
        }
        if (seen.insert(code).second) work.push(std::move(next));
      }
    }
    return static_cast<std::int64_t>(seen.size()) == order;
  };

  // choose the image of generator j; earlier columns are already consistent
  // with num1 up to their own index
  auto choose = [&](auto &&self, std::size_t j) -> bool {
    if (j == m) return generates_everything();
    std::vector<std::int64_t> c(m, 0);
    // homomorphism constraint: f[j] * c must vanish, so coordinates above j
    // are restricted to multiples of f[i]/f[j]
    std::vector<std::int64_t> step(m, 1);
    for (std::size_t i = j + 1; i < m; ++i) step[i] = f[i] / f[j];
    for (;;) {
      if (elt_order(c) == f[j]) {
        bool ok = pairing2(c, c) == num1[j][j];
        for (std::size_t a = 0; a < j && ok; ++a)
          if (pairing2(cols[a], c) != num1[a][j]) ok = false;
        if (ok) {
          cols.push_back(c);
          if (self(self, j + 1)) return true;
          cols.pop_back();
        }
      }
      std::size_t i = m;
      bool done = true;
      while (i > 0) {
        --i;
        c[i] += step[i];
        if (c[i] < f[i]) {
          done = false;
          break;
        }
        c[i] = 0;
      }
      if (done) return false;
    }
  };

  return choose(choose, 0);
}

} // namespace hfl::linking
