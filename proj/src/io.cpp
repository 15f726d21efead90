#include "hfl/io.hpp"

#include "hfl/errors.hpp"
#include "hfl/sha256.hpp"
#include "hfl/version.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace hfl::io {

namespace {

using linalg::IntMatrix;

struct Line {
  std::size_t number = 0;
  std::string key;
  std::string value;
};

std::string trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string &msg) {
  throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

std::vector<Line> split_lines(const std::string &text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos) fail(number, "expected 'key: value'");
    out.push_back(
        {number, trim(s.substr(0, colon)), trim(s.substr(colon + 1))});
  }
  return out;
}

std::vector<std::string> tokens(const std::string &value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool decimal_shaped(const std::string &t) {
  std::size_t i = t[0] == '-' ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (t[i] < '0' || t[i] > '9') return false;
  return true;
}

BigInt parse_big(const Line &l, const std::string &t) {
  if (t.empty() || !decimal_shaped(t)) fail(l.number, "bad integer '" + t + "'");
  return BigInt(t);
}

std::int64_t parse_i64(const Line &l, const std::string &t) {
  const BigInt v = parse_big(l, t);
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    fail(l.number, "value out of range: " + t);
  return v.convert_to<std::int64_t>();
}

// sequential reader over the meaningful lines
class Cursor {
public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  const Line &expect(const std::string &key) {
    if (pos_ >= lines_.size())
      throw ValidationError("unexpected end of document, wanted '" + key +
                            "'");
    const Line &l = lines_[pos_];
    if (l.key != key)
      fail(l.number, "expected '" + key + "', found '" + l.key + "'");
    ++pos_;
    return l;
  }

  const Line *accept(const std::string &key) {
    if (pos_ >= lines_.size() || lines_[pos_].key != key) return nullptr;
    return &lines_[pos_++];
  }

  void finish() const {
    if (pos_ < lines_.size())
      fail(lines_[pos_].number, "unexpected trailing content");
  }

private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::vector<BigInt> row_of(const Line &l, std::size_t want) {
  const auto ts = tokens(l.value);
  if (ts.size() != want)
    fail(l.number, "expected " + std::to_string(want) + " entries, found " +
                       std::to_string(ts.size()));
  std::vector<BigInt> out;
  out.reserve(ts.size());
  for (const auto &t : ts) out.push_back(parse_big(l, t));
  return out;
}

IntMatrix read_matrix(Cursor &c, const std::string &key, std::size_t rows,
                      std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = row_of(c.expect(key), cols);
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = row[j];
  }
  return m;
}

void write_matrix(std::ostream &out, const std::string &key,
                  const IntMatrix &m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << key << ":";
    for (std::size_t j = 0; j < m.cols(); ++j) out << " " << m.at(i, j).str();
    out << "\n";
  }
}

int read_schema(Cursor &c) {
  const Line &l = c.expect("schema-version");
  const int schema = static_cast<int>(parse_i64(l, trim(l.value)));
  if (schema != hfl::schema_version)
    fail(l.number, "unsupported schema version " + std::to_string(schema));
  return schema;
}

} // namespace

SpecDocument parse_spec(const std::string &text) {
  Cursor c(split_lines(text));
  SpecDocument doc;
  doc.schema = read_schema(c);
  const Line &kind = c.expect("kind");

  if (kind.value == "decomposition") {
    linking::LinkingDecomposition d;
    const Line &fr = c.expect("free-rank");
    const std::int64_t r = parse_i64(fr, trim(fr.value));
    if (r < 0) fail(fr.number, "free rank must be nonnegative");
    d.free_rank = static_cast<std::size_t>(r);
    while (const Line *t = c.accept("term")) {
      const auto ts = tokens(t->value);
      if (ts.empty()) fail(t->number, "empty term");
      // the factories validate eagerly, so their complaints get the line
      // number stitched on here
      linking::GeneratorTerm term;
      if (ts[0] == "lens") {
        if (ts.size() != 3) fail(t->number, "lens takes p and q");
        const BigInt p = parse_big(*t, ts[1]);
        const BigInt q = parse_big(*t, ts[2]);
        try {
          term = linking::GeneratorTerm::lens(p, q);
        } catch (const ValidationError &e) {
          fail(t->number, e.what());
        }
      } else if (ts[0] == "e0" || ts[0] == "e1") {
        if (ts.size() != 2) fail(t->number, ts[0] + " takes k");
        const std::int64_t k = parse_i64(*t, ts[1]);
        if (k < 0 || k > 62) fail(t->number, "k out of range");
        try {
          term = ts[0] == "e0"
                     ? linking::GeneratorTerm::e0(static_cast<int>(k))
                     : linking::GeneratorTerm::e1(static_cast<int>(k));
        } catch (const ValidationError &e) {
          fail(t->number, e.what());
        }
      } else {
        fail(t->number, "unknown term kind '" + ts[0] + "'");
      }
      try {
        linking::validate_term(term);
      } catch (const ValidationError &e) {
        fail(t->number, e.what());
      }
      d.terms.push_back(term);
    }
    c.finish();
    doc.decomposition = std::move(d);
    return doc;
  }

  if (kind.value == "diagram") {
    const Line &n = c.expect("components");
    const std::int64_t count = parse_i64(n, trim(n.value));
    if (count < 0) fail(n.number, "component count must be nonnegative");
    surgery::SurgeryDiagram d;
    for (std::int64_t i = 0; i < count; ++i) {
      const Line &comp = c.expect("component");
      const auto row = row_of(comp, 2);
      d.components.push_back({row[0], row[1]});
    }
    d.lk = read_matrix(c, "lk-row", static_cast<std::size_t>(count),
                       static_cast<std::size_t>(count));
    c.finish();
    surgery::validate_diagram(d);
    doc.diagram = std::move(d);
    return doc;
  }

  if (kind.value == "heegaard") {
    const Line &g = c.expect("genus");
    const std::int64_t genus = parse_i64(g, trim(g.value));
    if (genus < 0) fail(g.number, "genus must be nonnegative");
    linking::HeegaardGluingData h{
        read_matrix(c, "a-row", static_cast<std::size_t>(genus),
                    static_cast<std::size_t>(genus)),
        read_matrix(c, "b-row", static_cast<std::size_t>(genus),
                    static_cast<std::size_t>(genus))};
    c.finish();
    linking::validate_gluing(h);
    doc.heegaard = std::move(h);
    return doc;
  }

  fail(kind.number, "unknown kind '" + kind.value + "'");
}

std::string serialize_spec(const SpecDocument &doc) {
  const int present = (doc.decomposition ? 1 : 0) + (doc.diagram ? 1 : 0) +
                      (doc.heegaard ? 1 : 0);
  if (present != 1)
    throw ValidationError("spec document needs exactly one payload");
  std::ostringstream out;
  out << "schema-version: " << doc.schema << "\n";
  if (doc.decomposition) {
    out << "kind: decomposition\n";
    out << "free-rank: " << doc.decomposition->free_rank << "\n";
    for (const auto &t : doc.decomposition->terms) {
      switch (t.kind) {
      case linking::GeneratorKind::A:
        out << "term: lens " << t.p.str() << " " << t.q.str() << "\n";
        break;
      case linking::GeneratorKind::E0:
        out << "term: e0 " << t.k << "\n";
        break;
      case linking::GeneratorKind::E1:
        out << "term: e1 " << t.k << "\n";
        break;
      }
    }
  } else if (doc.diagram) {
    out << "kind: diagram\n";
    out << "components: " << doc.diagram->components.size() << "\n";
    for (const auto &comp : doc.diagram->components)
      out << "component: " << comp.p.str() << " " << comp.q.str() << "\n";
    write_matrix(out, "lk-row", doc.diagram->lk);
  } else {
    out << "kind: heegaard\n";
    out << "genus: " << doc.heegaard->genus() << "\n";
    write_matrix(out, "a-row", doc.heegaard->A);
    write_matrix(out, "b-row", doc.heegaard->B);
  }
  return out.str();
}

std::string canonical_problem(const engine::BlockProblem &p) {
  std::ostringstream out;
  out << p.M0.rows() << "\n";
  for (std::size_t i = 0; i < p.M0.rows(); ++i) {
    for (std::size_t j = 0; j < p.M0.cols(); ++j)
      out << (j ? " " : "") << p.M0.at(i, j).str();
    out << "\n";
  }
  for (std::size_t i = 0; i < p.W.rows(); ++i) {
    for (std::size_t j = 0; j < p.W.cols(); ++j)
      out << (j ? " " : "") << p.W.at(i, j).str();
    out << "\n";
  }
  out << p.fiber.g << " " << p.fiber.n << "\n";
  return out.str();
}

std::string fingerprint(const engine::BlockProblem &p) {
  return sha256_hex(canonical_problem(p));
}

std::string serialize_certificate(const CertificateFile &c) {
  const std::size_t m = c.problem.M0.rows();
  const std::size_t d = c.problem.fiber.block_size();
  std::ostringstream out;
  out << "schema-version: " << c.schema << "\n";
  out << "kind: "
      << (std::holds_alternative<engine::Exists>(c.payload) ? "witness"
                                                            : "obstruction")
      << "\n";
  out << "tool-version: " << c.tool_version << "\n";
  out << "problem-fingerprint: " << c.problem_fingerprint << "\n";
  if (!c.problem.provenance.empty())
    out << "provenance: " << c.problem.provenance << "\n";
  out << "fiber: " << c.problem.fiber.g << " " << c.problem.fiber.n << "\n";
  out << "block-size: " << m << "\n";
  write_matrix(out, "m0-row", c.problem.M0);
  write_matrix(out, "w-row", c.problem.W);
  if (const auto *e = std::get_if<engine::Exists>(&c.payload)) {
    if (e->solution.X.rows() != m || e->solution.X.cols() != d ||
        e->solution.Y.rows() != d)
      throw ValidationError("witness shape does not match the problem");
    write_matrix(out, "x-row", e->solution.X);
    write_matrix(out, "y-row", e->solution.Y);
    out << "det: " << e->det.str() << "\n";
  } else {
    const auto &cert = std::get<engine::NotExists>(c.payload).certificate;
    out << "method: " << engine::to_string(cert.kind) << "\n";
    out << "modulus: " << cert.modulus << "\n";
    out << "attainable:";
    for (const auto r : cert.attainable) out << " " << r;
    out << "\n";
    if (cert.kind == engine::ObstructionKind::SquareBlock)
      out << "det-w-mod: " << cert.det_w_mod << "\n";
  }
  out << "elapsed-ms: " << c.elapsed_ms << "\n";
  return out.str();
}

CertificateFile parse_certificate(const std::string &text) {
  Cursor c(split_lines(text));
  CertificateFile out;
  out.schema = read_schema(c);
  const Line &kind = c.expect("kind");
  if (kind.value != "witness" && kind.value != "obstruction")
    fail(kind.number, "unknown certificate kind '" + kind.value + "'");
  out.tool_version = trim(c.expect("tool-version").value);
  out.problem_fingerprint = trim(c.expect("problem-fingerprint").value);
  if (const Line *prov = c.accept("provenance"))
    out.problem.provenance = prov->value;

  const Line &fiber = c.expect("fiber");
  const auto f = row_of(fiber, 2);
  if (f[0] < 0 || f[1] < 0 || f[0] > 1'000'000 || f[1] > 1'000'000)
    fail(fiber.number, "fiber out of range");
  out.problem.fiber = {f[0].convert_to<std::size_t>(),
                       f[1].convert_to<std::size_t>()};

  const Line &bs = c.expect("block-size");
  const std::int64_t m64 = parse_i64(bs, trim(bs.value));
  if (m64 < 0) fail(bs.number, "block size must be nonnegative");
  const auto m = static_cast<std::size_t>(m64);
  const std::size_t d = out.problem.fiber.block_size();

  out.problem.M0 = read_matrix(c, "m0-row", m, m);
  out.problem.W = read_matrix(c, "w-row", m, m);

  if (kind.value == "witness") {
    engine::CandidateSolution sol{read_matrix(c, "x-row", m, d),
                                  read_matrix(c, "y-row", d, d)};
    const Line &det = c.expect("det");
    const auto ts = tokens(det.value);
    if (ts.size() != 1) fail(det.number, "det takes one value");
    out.payload = engine::Exists{std::move(sol), parse_big(det, ts[0])};
  } else {
    engine::ObstructionCertificate cert;
    const Line &method = c.expect("method");
    if (method.value == "full-modular") {
      cert.kind = engine::ObstructionKind::FullModular;
    } else if (method.value == "square-block") {
      cert.kind = engine::ObstructionKind::SquareBlock;
    } else {
      fail(method.number, "unknown method '" + method.value + "'");
    }
    const Line &mod = c.expect("modulus");
    cert.modulus = parse_i64(mod, trim(mod.value));
    if (cert.modulus < 2) fail(mod.number, "modulus must be at least 2");
    const Line &att = c.expect("attainable");
    for (const auto &t : tokens(att.value))
      cert.attainable.push_back(parse_i64(att, t));
    if (cert.kind == engine::ObstructionKind::SquareBlock) {
      const Line &dw = c.expect("det-w-mod");
      cert.det_w_mod = parse_i64(dw, trim(dw.value));
    }
    out.payload = engine::NotExists{std::move(cert)};
  }

  const Line &ms = c.expect("elapsed-ms");
  out.elapsed_ms = parse_i64(ms, trim(ms.value));
  c.finish();
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file_atomic(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ValidationError("rename to " + path + " failed: " +
                          std::strerror(errno));
}

} // namespace hfl::io
