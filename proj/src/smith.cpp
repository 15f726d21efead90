#include "hfl/smith.hpp"

#include <sstream>

namespace hfl::linalg {

std::string AbelianGroupData::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < free_rank; ++i) {
    out << (first ? "" : " + ") << "Z";
    first = false;
  }
  for (const auto &f : invariant_factors) {
    out << (first ? "" : " + ") << "Z/" << f;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

namespace {

// row operations on D are mirrored on U (left witness), column operations
// on V (right witness), keeping U*A*V == D at every step.
struct SmithWorker {
  IntMatrix D, U, V;

  explicit SmithWorker(const IntMatrix &a)
      : D(a), U(IntMatrix::identity(a.rows())), V(IntMatrix::identity(a.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D.at(i, c), D.at(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D.at(r, i), D.at(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
  }

  // row i += f * row j
  void add_row(std::size_t i, std::size_t j, const BigInt &f) {
    if (f == 0) return;
    for (std::size_t c = 0; c < D.cols(); ++c) D.at(i, c) += f * D.at(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) += f * U.at(j, c);
  }

  // col i += f * col j
  void add_col(std::size_t i, std::size_t j, const BigInt &f) {
    if (f == 0) return;
    for (std::size_t r = 0; r < D.rows(); ++r) D.at(r, i) += f * D.at(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r) V.at(r, i) += f * V.at(r, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c) D.at(i, c) = -D.at(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) = -U.at(i, c);
  }

  // smallest nonzero |entry| in the block with corner (k,k); row-major first
  // on ties. returns false when the block is all zero.
  bool find_pivot(std::size_t k, std::size_t &pi, std::size_t &pj) const {
    bool found = false;
    BigInt best = 0;
    for (std::size_t i = k; i < D.rows(); ++i)
      for (std::size_t j = k; j < D.cols(); ++j) {
        const BigInt &v = D.at(i, j);
        if (v == 0) continue;
        BigInt a = v < 0 ? -v : v;
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  // quotient of the division with the symmetric remainder, |a - q*d| <= |d|/2.
  // halving the remainder instead of merely shrinking it keeps intermediate
  // entries from snowballing across corners.
  static BigInt nearest_quotient(const BigInt &a, const BigInt &d) {
    BigInt q = a / d;
    const BigInt r = a - q * d;
    BigInt r2 = r < 0 ? BigInt(-2 * r) : BigInt(2 * r);
    const BigInt ad = d < 0 ? BigInt(-d) : d;
    if (r2 > ad) q += ((r > 0) == (d > 0)) ? 1 : -1;
    return q;
  }

  void run() {
    const std::size_t n = std::min(D.rows(), D.cols());
    bool exhausted = false;
    for (std::size_t k = 0; k < n && !exhausted; ++k) {
      // every round re-selects the smallest remaining entry as the pivot, so
      // any surviving remainder forces the next pivot to be strictly smaller
      // in magnitude and the corner finishes
      for (;;) {
        std::size_t pi = k, pj = k;
        if (!find_pivot(k, pi, pj)) {
          exhausted = true;
          break;
        }
        swap_rows(k, pi);
        swap_cols(k, pj);
        const BigInt d = D.at(k, k);

        bool leftover = false;
        for (std::size_t i = k + 1; i < D.rows(); ++i) {
          if (D.at(i, k) == 0) continue;
          add_row(i, k, -nearest_quotient(D.at(i, k), d));
          if (D.at(i, k) != 0) leftover = true;
        }
        if (leftover) continue;
        for (std::size_t j = k + 1; j < D.cols(); ++j) {
          if (D.at(k, j) == 0) continue;
          add_col(j, k, -nearest_quotient(D.at(k, j), d));
          if (D.at(k, j) != 0) leftover = true;
        }
        if (leftover) continue;

        // row and column k are clear; if the pivot misses some entry of the
        // remaining block, fold that column in and go around once more
        bool fold = false;
        for (std::size_t i = k + 1; i < D.rows() && !fold; ++i)
          for (std::size_t j = k + 1; j < D.cols() && !fold; ++j)
            if (D.at(i, j) % d != 0) {
              add_col(k, j, 1);
              fold = true;
            }
        if (!fold) break;
      }
      if (!exhausted && D.at(k, k) < 0) negate_row(k);
    }
  }
};

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix &a) {
  SmithWorker w(a);
  w.run();
  return {std::move(w.U), std::move(w.D), std::move(w.V)};
}

AbelianGroupData cokernel(const IntMatrix &relations) {
  SmithDecomposition s = smith_normal_form(relations);
  AbelianGroupData g;
  const std::size_t n = std::min(s.D.rows(), s.D.cols());
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt &d = s.D.at(i, i);
    if (d == 0) break;
    ++rank;
    if (d > 1) g.invariant_factors.push_back(d);
  }
  g.free_rank = relations.cols() - rank;
  return g;
}

} // namespace hfl::linalg
