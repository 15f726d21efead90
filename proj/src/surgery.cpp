#include "hfl/surgery.hpp"

#include "hfl/errors.hpp"

namespace hfl::surgery {

namespace {

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

} // namespace

void validate_diagram(const SurgeryDiagram &d) {
  for (const auto &c : d.components) {
    if (c.q == 0)
      throw ValidationError("surgery coefficient needs q != 0");
    if (gcd_abs(c.p, c.q) != 1)
      throw ValidationError("surgery coefficient needs gcd(p, q) = 1");
  }
  const std::size_t n = d.size();
  if (d.lk.rows() != n || d.lk.cols() != n)
    throw DimensionError("linking table size does not match component count");
  if (!d.lk.is_symmetric())
    throw ValidationError("linking table must be symmetric");
  for (std::size_t i = 0; i < n; ++i)
    if (d.lk.at(i, i) != 0)
      throw ValidationError("linking table diagonal must be zero");
}

SurgeryMatrices phi_psi(const SurgeryDiagram &d) {
  validate_diagram(d);
  const std::size_t n = d.size();
  IntMatrix phi(n, n), psi(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    phi.at(i, i) = d.components[i].p;
    psi.at(i, i) = d.components[i].q;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) phi.at(i, j) = d.components[i].q * d.lk.at(i, j);
  }
  return {phi, psi};
}

linalg::AbelianGroupData first_homology(const SurgeryDiagram &d) {
  // the columns of Phi span the relation lattice; cokernel reads rows, so
  // hand it the transpose
  return linalg::cokernel(phi_psi(d).Phi.transpose());
}

SurgeryDiagram orientation_flip(const SurgeryDiagram &d, std::size_t i) {
  validate_diagram(d);
  if (i >= d.size())
    throw DimensionError("component index out of range");
  SurgeryDiagram out = d;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j == i) continue;
    out.lk.at(i, j) = -out.lk.at(i, j);
    out.lk.at(j, i) = -out.lk.at(j, i);
  }
  return out;
}

SurgeryDiagram representative_diagram(const linking::LinkingDecomposition &d0) {
  const auto d = linking::normalize(d0);
  SurgeryDiagram out;
  std::vector<std::pair<std::size_t, BigInt>> pair_links; // (first index, lk)

  for (std::size_t i = 0; i < d.free_rank; ++i)
    out.components.push_back({0, 1});
  for (const auto &t : d.terms) {
    switch (t.kind) {
    case linking::GeneratorKind::A:
      out.components.push_back({t.p, -t.q});
      break;
    case linking::GeneratorKind::E0: {
      const BigInt m = BigInt(1) << t.k;
      pair_links.emplace_back(out.components.size(), m);
      out.components.push_back({0, 1});
      out.components.push_back({0, 1});
      break;
    }
    case linking::GeneratorKind::E1: {
      const BigInt m = BigInt(1) << t.k;
      pair_links.emplace_back(out.components.size(), m);
      out.components.push_back({2 * m, -1});
      out.components.push_back({2 * m, -3});
      break;
    }
    }
  }

  out.lk = IntMatrix::zero(out.size(), out.size());
  for (const auto &[i, l] : pair_links) {
    out.lk.at(i, i + 1) = l;
    out.lk.at(i + 1, i) = l;
  }
  validate_diagram(out);
  return out;
}

std::string to_string(const SurgeryDiagram &d) {
  if (d.size() == 0) return "empty";
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + d.components[i].p.str() + "/" + d.components[i].q.str() + ")";
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d.lk.at(i, j) != 0)
        out += " lk(" + std::to_string(i) + "," + std::to_string(j) +
               ")=" + d.lk.at(i, j).str();
  return out;
}

SurgeryDiagram connected_sum(const SurgeryDiagram &d1,
                             const SurgeryDiagram &d2) {
  validate_diagram(d1);
  validate_diagram(d2);
  SurgeryDiagram out;
  out.components = d1.components;
  out.components.insert(out.components.end(), d2.components.begin(),
                        d2.components.end());
  out.lk = d1.lk.direct_sum(d2.lk);
  return out;
}

} // namespace hfl::surgery
