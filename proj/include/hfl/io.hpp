#pragma once

#include "hfl/engine.hpp"
#include "hfl/linking_form.hpp"
#include "hfl/surgery.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace hfl::io {

// one parsed input document; exactly one payload is present. the on-disk
// format is line-oriented "key: value" text with '#' comments, documented in
// FORMATS.md
struct SpecDocument {
  int schema = 1;
  std::optional<linking::LinkingDecomposition> decomposition;
  std::optional<surgery::SurgeryDiagram> diagram;
  std::optional<linking::HeegaardGluingData> heegaard;
};

// parse errors throw ValidationError with the offending line number
SpecDocument parse_spec(const std::string &text);
std::string serialize_spec(const SpecDocument &doc);

// canonical problem serialization the fingerprint is taken over:
// dimension prefix, the rows of M0 and W in decimal, then g and n
std::string canonical_problem(const engine::BlockProblem &p);
std::string fingerprint(const engine::BlockProblem &p);

// a self-contained, re-verifiable record of a decision: the problem blocks
// travel inside the file, the fingerprint pins them, and the payload is
// either a witness or an obstruction certificate
struct CertificateFile {
  int schema = 1;
  std::string tool_version;
  std::string problem_fingerprint;
  engine::BlockProblem problem;
  std::variant<engine::Exists, engine::NotExists> payload;
  std::int64_t elapsed_ms = 0; // excluded from determinism comparisons
};

std::string serialize_certificate(const CertificateFile &c);
CertificateFile parse_certificate(const std::string &text);

std::string read_file(const std::string &path);
// write-temp-then-rename so readers never observe a partial file
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace hfl::io
