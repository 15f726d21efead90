#include "hfl/engine.hpp"
#include "hfl/errors.hpp"
#include "hfl/hc.hpp"
#include "hfl/linking_form.hpp"
#include "hfl/smith.hpp"
#include "hfl/surgery.hpp"
#include "hfl/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;

namespace {

using hfl::BigInt;
using hfl::linalg::IntMatrix;

// arbitrary-precision values cross the boundary as decimal strings
py::object to_py_int(const BigInt &v) {
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

BigInt from_py_int(const py::handle &h) {
  return BigInt(py::str(h).cast<std::string>());
}

IntMatrix matrix_in(const py::sequence &rows) {
  const std::size_t r = rows.size();
  std::size_t c = 0;
  if (r > 0) c = py::sequence(rows[0]).size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    py::sequence row(rows[i]);
    if (row.size() != c) throw hfl::DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = from_py_int(row[j]);
  }
  return m;
}

py::list matrix_out(const IntMatrix &m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.append(to_py_int(m.at(i, j)));
    rows.append(row);
  }
  return rows;
}

py::dict group_out(const hfl::linalg::AbelianGroupData &h) {
  py::dict d;
  d["free_rank"] = h.free_rank;
  py::list factors;
  for (const auto &f : h.invariant_factors) factors.append(to_py_int(f));
  d["invariant_factors"] = factors;
  return d;
}

hfl::linking::LinkingDecomposition
decomposition_in(std::size_t free_rank, const py::sequence &terms) {
  hfl::linking::LinkingDecomposition d;
  d.free_rank = free_rank;
  for (const auto &item : terms) {
    py::sequence t(item.cast<py::object>());
    const auto kind = py::str(t[0]).cast<std::string>();
    if (kind == "lens") {
      d.terms.push_back(
          hfl::linking::GeneratorTerm::lens(from_py_int(t[1]),
                                            from_py_int(t[2])));
    } else if (kind == "e0") {
      d.terms.push_back(hfl::linking::GeneratorTerm::e0(t[1].cast<int>()));
    } else if (kind == "e1") {
      d.terms.push_back(hfl::linking::GeneratorTerm::e1(t[1].cast<int>()));
    } else {
      throw hfl::ValidationError("term kind must be lens, e0 or e1");
    }
  }
  return d;
}

hfl::surgery::SurgeryDiagram diagram_in(const py::sequence &components,
                                        const py::sequence &lk) {
  hfl::surgery::SurgeryDiagram d;
  for (const auto &item : components) {
    py::sequence comp(item.cast<py::object>());
    d.components.push_back({from_py_int(comp[0]), from_py_int(comp[1])});
  }
  d.lk = matrix_in(lk);
  hfl::surgery::validate_diagram(d);
  return d;
}

py::dict verdict_out(const hfl::engine::Verdict &v) {
  py::dict out;
  if (const auto *e = std::get_if<hfl::engine::Exists>(&v)) {
    out["verdict"] = "exists";
    out["det"] = to_py_int(e->det);
    out["x"] = matrix_out(e->solution.X);
    out["y"] = matrix_out(e->solution.Y);
  } else if (const auto *ne = std::get_if<hfl::engine::NotExists>(&v)) {
    out["verdict"] = "not-exists";
    out["method"] = hfl::engine::to_string(ne->certificate.kind);
    out["modulus"] = ne->certificate.modulus;
    out["attainable"] = ne->certificate.attainable;
  } else {
    const auto &u = std::get<hfl::engine::Unknown>(v);
    out["verdict"] = "unknown";
    out["entry_bound"] = u.entry_bound;
    out["candidates_examined"] = u.candidates_examined;
    out["budget_exhausted"] = u.budget_exhausted;
    out["moduli_tried"] = u.moduli_tried;
  }
  return out;
}

py::dict decide_problem(const hfl::engine::BlockProblem &problem,
                        std::size_t bound, std::uint64_t budget,
                        unsigned workers) {
  return verdict_out(
      hfl::engine::decide(problem, {bound, budget, workers, true}));
}

py::dict hc_out(const hfl::hc::HcBounds &b) {
  py::dict out;
  out["lower"] = b.lower;
  out["upper"] = b.upper ? py::object(py::int_(*b.upper)) : py::none();
  out["exact"] = b.exact ? py::object(py::int_(*b.exact)) : py::none();
  py::list ev;
  for (const auto &e : b.evidence) ev.append(hfl::hc::describe(e));
  out["evidence"] = ev;
  return out;
}

} // namespace

PYBIND11_MODULE(_hfl, m) {
  m.doc() = "block determinant decision toolkit";
  m.attr("__version__") = hfl::version;

  py::register_exception<hfl::ValidationError>(m, "ValidationError",
                                               PyExc_ValueError);
  py::register_exception<hfl::DimensionError>(m, "DimensionError",
                                              PyExc_ValueError);
  py::register_exception<hfl::CapacityError>(m, "CapacityError",
                                             PyExc_RuntimeError);

  m.def(
      "determinant",
      [](const py::sequence &rows) {
        return to_py_int(hfl::linalg::determinant(matrix_in(rows)));
      },
      py::arg("matrix"), "exact integer determinant");

  m.def(
      "smith_normal_form",
      [](const py::sequence &rows) {
        const auto s = hfl::linalg::smith_normal_form(matrix_in(rows));
        py::dict out;
        out["U"] = matrix_out(s.U);
        out["D"] = matrix_out(s.D);
        out["V"] = matrix_out(s.V);
        return out;
      },
      py::arg("matrix"), "U*A*V = D with D in Smith normal form");

  m.def(
      "diagram_homology",
      [](const py::sequence &components, const py::sequence &lk) {
        return group_out(
            hfl::surgery::first_homology(diagram_in(components, lk)));
      },
      py::arg("components"), py::arg("lk"),
      "first homology of a surgery diagram");

  m.def(
      "decomposition_homology",
      [](std::size_t free_rank, const py::sequence &terms) {
        return group_out(
            hfl::hc::decomposition_group(decomposition_in(free_rank, terms)));
      },
      py::arg("free_rank"), py::arg("terms"),
      "first homology carried by a linking decomposition");

  m.def(
      "theorem_matrices",
      [](std::size_t free_rank, const py::sequence &terms) {
        const auto tm = hfl::linking::theorem_matrices(
            decomposition_in(free_rank, terms));
        py::dict out;
        out["S"] = matrix_out(tm.S);
        out["T"] = matrix_out(tm.T);
        return out;
      },
      py::arg("free_rank"), py::arg("terms"),
      "the S and T blocks of the determinant criterion");

  m.def(
      "decide_decomposition",
      [](std::size_t free_rank, const py::sequence &terms, std::size_t g,
         std::size_t n, std::size_t bound, std::uint64_t budget,
         unsigned workers) {
        const auto problem = hfl::engine::problem_from_decomposition(
            decomposition_in(free_rank, terms), {g, n});
        return decide_problem(problem, bound, budget, workers);
      },
      py::arg("free_rank"), py::arg("terms"), py::arg("g"), py::arg("n"),
      py::arg("bound") = 8, py::arg("budget") = 100'000'000,
      py::arg("workers") = 1,
      "decide the block determinant equation for a decomposition");

  m.def(
      "decide_diagram",
      [](const py::sequence &components, const py::sequence &lk,
         std::size_t g, std::size_t n, std::size_t bound,
         std::uint64_t budget, unsigned workers) {
        const auto problem = hfl::engine::problem_from_diagram(
            diagram_in(components, lk), {g, n});
        return decide_problem(problem, bound, budget, workers);
      },
      py::arg("components"), py::arg("lk"), py::arg("g"), py::arg("n"),
      py::arg("bound") = 8, py::arg("budget") = 100'000'000,
      py::arg("workers") = 1,
      "decide the block determinant equation for a surgery diagram");

  m.def(
      "hc_decomposition",
      [](std::size_t free_rank, const py::sequence &terms, std::size_t bound,
         std::uint64_t budget, unsigned workers, std::size_t max_genus) {
        hfl::hc::ManifoldSpec spec;
        spec.decomposition = decomposition_in(free_rank, terms);
        return hc_out(
            hfl::hc::hc_compute(spec, {bound, budget, workers, max_genus}));
      },
      py::arg("free_rank"), py::arg("terms"), py::arg("bound") = 8,
      py::arg("budget") = 100'000'000, py::arg("workers") = 1,
      py::arg("max_genus") = 16, "minimal homological fiber genus bounds");
}
