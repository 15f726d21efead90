#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hfl/engine.hpp"
#include "hfl/errors.hpp"
#include "hfl/int_matrix.hpp"
#include "hfl/io.hpp"
#include "hfl/linking_form.hpp"
#include "hfl/sha256.hpp"
#include "hfl/surgery.hpp"
#include "hfl/version.hpp"

#include <cstdio>
#include <string>
#include <variant>

namespace en = hfl::engine;
namespace io = hfl::io;
namespace lk = hfl::linking;
namespace sg = hfl::surgery;

using hfl::BigInt;
using hfl::ValidationError;
using hfl::linalg::IntMatrix;

namespace {

en::BlockProblem lens_problem(int p, int q, en::FiberType f) {
  return en::problem_from_decomposition(
      {0, {lk::GeneratorTerm::lens(p, q)}}, f);
}

sg::SurgeryDiagram two_component_diagram() {
  sg::SurgeryDiagram d;
  d.components.push_back({BigInt(0), BigInt(1)});
  d.components.push_back({BigInt(3), BigInt(-1)});
  d.lk = IntMatrix{{0, 2}, {2, 0}};
  return d;
}

} // namespace

TEST_SUITE("hashing") {
  TEST_CASE("sha256 reference vectors") {
    CHECK(io::sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::sha256_hex(
              "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(io::sha256_hex(std::string(1'000'000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
  }

  TEST_CASE("canonical problem text") {
    CHECK(io::canonical_problem(lens_problem(3, 1, {1, 0})) ==
          "1\n3\n-1\n1 0\n");
    CHECK(io::canonical_problem(en::problem_from_decomposition({0, {}},
                                                               {1, 0})) ==
          "0\n1 0\n");
    const auto p = en::problem_from_decomposition(
        {0, {lk::GeneratorTerm::e0(1)}}, {0, 2});
    CHECK(io::canonical_problem(p) == "2\n0 2\n2 0\n1 0\n0 1\n0 2\n");
  }

  TEST_CASE("fingerprint is a pinned hash of the canonical text") {
    const auto p = lens_problem(3, 1, {1, 0});
    CHECK(io::fingerprint(p) ==
          "a4c52a2db6c64c363b56b22c68666d9d58969159e6020750dba3a4c9a31f1588");
    CHECK(io::fingerprint(p).size() == 64);
    // provenance is free text and must not enter the fingerprint
    auto q = p;
    q.provenance = "something else";
    CHECK(io::fingerprint(q) == io::fingerprint(p));
    // the fiber does
    CHECK(io::fingerprint(lens_problem(3, 1, {0, 2})) != io::fingerprint(p));
    CHECK(io::fingerprint(lens_problem(5, 1, {1, 0})) != io::fingerprint(p));
  }
}

TEST_SUITE("spec_documents") {
  TEST_CASE("decomposition round trip") {
    io::SpecDocument doc;
    doc.decomposition =
        lk::LinkingDecomposition{2, {lk::GeneratorTerm::lens(5, 2),
                                     lk::GeneratorTerm::e0(3),
                                     lk::GeneratorTerm::e1(2)}};
    const auto text = io::serialize_spec(doc);
    CHECK(text == "schema-version: 1\n"
                  "kind: decomposition\n"
                  "free-rank: 2\n"
                  "term: lens 5 2\n"
                  "term: e0 3\n"
                  "term: e1 2\n");
    const auto back = io::parse_spec(text);
    REQUIRE(back.decomposition.has_value());
    CHECK(*back.decomposition == *doc.decomposition);
    CHECK_FALSE(back.diagram.has_value());
    CHECK_FALSE(back.heegaard.has_value());
  }

  TEST_CASE("diagram round trip") {
    io::SpecDocument doc;
    doc.diagram = two_component_diagram();
    const auto text = io::serialize_spec(doc);
    CHECK(text == "schema-version: 1\n"
                  "kind: diagram\n"
                  "components: 2\n"
                  "component: 0 1\n"
                  "component: 3 -1\n"
                  "lk-row: 0 2\n"
                  "lk-row: 2 0\n");
    const auto back = io::parse_spec(text);
    REQUIRE(back.diagram.has_value());
    CHECK(back.diagram->components.size() == 2);
    CHECK(back.diagram->components[1].p == 3);
    CHECK(back.diagram->components[1].q == -1);
    CHECK(back.diagram->lk == doc.diagram->lk);
  }

  TEST_CASE("heegaard round trip") {
    io::SpecDocument doc;
    doc.heegaard = lk::HeegaardGluingData{IntMatrix{{-1}}, IntMatrix{{-2}}};
    const auto text = io::serialize_spec(doc);
    CHECK(text == "schema-version: 1\n"
                  "kind: heegaard\n"
                  "genus: 1\n"
                  "a-row: -1\n"
                  "b-row: -2\n");
    const auto back = io::parse_spec(text);
    REQUIRE(back.heegaard.has_value());
    CHECK(back.heegaard->A == doc.heegaard->A);
    CHECK(back.heegaard->B == doc.heegaard->B);
  }

  TEST_CASE("comments, blank lines and crlf endings are tolerated") {
    const auto doc = io::parse_spec("# a manifold\r\n"
                                    "\r\n"
                                    "schema-version: 1\r\n"
                                    "kind: decomposition\r\n"
                                    "   free-rank:   1  \r\n"
                                    "term: lens 7 3\r\n");
    REQUIRE(doc.decomposition.has_value());
    CHECK(doc.decomposition->free_rank == 1);
    CHECK(doc.decomposition->terms.size() == 1);
    CHECK(doc.decomposition->terms[0].p == 7);
  }

  TEST_CASE("exactly one payload on the way out") {
    io::SpecDocument none;
    CHECK_THROWS_AS(io::serialize_spec(none), ValidationError);
    io::SpecDocument both;
    both.decomposition = lk::LinkingDecomposition{0, {}};
    both.diagram = two_component_diagram();
    CHECK_THROWS_AS(io::serialize_spec(both), ValidationError);
  }

  TEST_CASE("parse errors carry the line number") {
    CHECK_THROWS_WITH_AS(io::parse_spec("nonsense\n"),
                         "line 1: expected 'key: value'", ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 2\n"),
                         "line 1: unsupported schema version 2",
                         ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\nkind: wat\n"),
                         "line 2: unknown kind 'wat'", ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: decomposition\n"
                                        "free-rank: bogus\n"),
                         "line 3: bad integer 'bogus'", ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: decomposition\n"
                                        "free-rank: -1\n"),
                         "line 3: free rank must be nonnegative",
                         ValidationError);
    // comment and blank lines still count toward the line number
    CHECK_THROWS_WITH_AS(io::parse_spec("# spec\n"
                                        "\n"
                                        "schema-version: 1\n"
                                        "kind: decomposition\n"
                                        "free-rank: 0\n"
                                        "term: lens 4 2\n"),
                         "line 6: lens term needs gcd(p, q) = 1",
                         ValidationError);
    CHECK_THROWS_WITH_AS(
        io::parse_spec("schema-version: 1\n"
                       "kind: decomposition\n"
                       "free-rank: 0\n"
                       "term: e1 1\n"),
        "line 4: e1 term needs k >= 2 (or 0 for the trivial stand-in)",
        ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: decomposition\n"
                                        "free-rank: 0\n"
                                        "term: weird 1\n"),
                         "line 4: unknown term kind 'weird'", ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: decomposition\n"
                                        "free-rank: 0\n"
                                        "extra: 1\n"),
                         "line 4: unexpected trailing content",
                         ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: diagram\n"
                                        "components: 1\n"
                                        "component: 3 -1\n"
                                        "lk-row: 0 0\n"),
                         "line 5: expected 1 entries, found 2",
                         ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: heegaard\n"
                                        "genus: 1\n"),
                         "unexpected end of document, wanted 'a-row'",
                         ValidationError);
  }

  TEST_CASE("semantic validation still runs after parsing") {
    // nonzero diagonal linking number
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: diagram\n"
                                        "components: 1\n"
                                        "component: 3 -1\n"
                                        "lk-row: 1\n"),
                         "linking table diagonal must be zero",
                         ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_spec("schema-version: 1\n"
                                        "kind: heegaard\n"
                                        "genus: 2\n"
                                        "a-row: 0 1\n"
                                        "a-row: 0 0\n"
                                        "b-row: 2 0\n"
                                        "b-row: 0 2\n"),
                         "gluing data does not define a symmetric pairing",
                         ValidationError);
  }
}

TEST_SUITE("certificates") {
  TEST_CASE("witness file, exact layout and round trip") {
    const auto p = lens_problem(3, 1, {0, 1});
    io::CertificateFile file;
    file.tool_version = hfl::version;
    file.problem_fingerprint = io::fingerprint(p);
    file.problem = p;
    file.payload = en::Exists{{IntMatrix{{1}}, IntMatrix{{0}}}, BigInt(1)};
    file.elapsed_ms = 7;

    const auto text = io::serialize_certificate(file);
    CHECK(text == "schema-version: 1\n"
                  "kind: witness\n"
                  "tool-version: 0.1.0\n"
                  "problem-fingerprint: " +
                      io::fingerprint(p) +
                      "\n"
                      "provenance: decomposition: A(3,1)\n"
                      "fiber: 0 1\n"
                      "block-size: 1\n"
                      "m0-row: 3\n"
                      "w-row: -1\n"
                      "x-row: 1\n"
                      "y-row: 0\n"
                      "det: 1\n"
                      "elapsed-ms: 7\n");

    const auto back = io::parse_certificate(text);
    CHECK(back.schema == 1);
    CHECK(back.tool_version == "0.1.0");
    CHECK(back.problem_fingerprint == file.problem_fingerprint);
    CHECK(back.problem.M0 == p.M0);
    CHECK(back.problem.W == p.W);
    CHECK(back.problem.fiber == p.fiber);
    CHECK(back.problem.provenance == p.provenance);
    CHECK(back.elapsed_ms == 7);
    REQUIRE(std::holds_alternative<en::Exists>(back.payload));
    const auto &e = std::get<en::Exists>(back.payload);
    CHECK(e.solution.X == IntMatrix{{1}});
    CHECK(e.solution.Y == IntMatrix{{0}});
    CHECK(e.det == 1);
    // the payload re-verifies against the problem carried in the file
    CHECK(en::verify(back.problem, e.solution).det == e.det);
    CHECK(io::fingerprint(back.problem) == back.problem_fingerprint);
  }

  TEST_CASE("witness without surgery components") {
    const auto p = en::problem_from_decomposition({0, {}}, {0, 2});
    io::CertificateFile file;
    file.tool_version = hfl::version;
    file.problem_fingerprint = io::fingerprint(p);
    file.problem = p;
    file.payload =
        en::Exists{{IntMatrix(0, 2), IntMatrix{{0, 1}, {1, 0}}}, BigInt(-1)};
    const auto back = io::parse_certificate(io::serialize_certificate(file));
    REQUIRE(std::holds_alternative<en::Exists>(back.payload));
    const auto &e = std::get<en::Exists>(back.payload);
    CHECK(e.solution.X.rows() == 0);
    CHECK(e.solution.X.cols() == 2);
    CHECK(e.solution.Y == IntMatrix{{0, 1}, {1, 0}});
    CHECK(en::verify(back.problem, e.solution).ok);
  }

  TEST_CASE("obstruction files round trip both methods") {
    const auto p = en::problem_from_decomposition(
        {0, {lk::GeneratorTerm::e1(3)}}, {1, 0});
    const auto sq = en::square_block_obstruction(p, 8);
    REQUIRE(sq.has_value());
    io::CertificateFile file;
    file.tool_version = hfl::version;
    file.problem_fingerprint = io::fingerprint(p);
    file.problem = p;
    file.payload = en::NotExists{*sq};
    const auto text = io::serialize_certificate(file);
    CHECK(text.find("method: square-block\n") != std::string::npos);
    CHECK(text.find("det-w-mod: 3\n") != std::string::npos);
    const auto back = io::parse_certificate(text);
    REQUIRE(std::holds_alternative<en::NotExists>(back.payload));
    CHECK(std::get<en::NotExists>(back.payload).certificate == *sq);
    CHECK(en::recheck(back.problem,
                      std::get<en::NotExists>(back.payload).certificate));

    const auto q = en::problem_from_decomposition(
        {0, {lk::GeneratorTerm::e0(2)}}, {1, 0});
    const auto full = en::modular_obstruction(q, 8);
    REQUIRE(full.has_value());
    io::CertificateFile file2;
    file2.tool_version = hfl::version;
    file2.problem_fingerprint = io::fingerprint(q);
    file2.problem = q;
    file2.payload = en::NotExists{*full};
    const auto text2 = io::serialize_certificate(file2);
    CHECK(text2.find("method: full-modular\n") != std::string::npos);
    CHECK(text2.find("det-w-mod") == std::string::npos);
    const auto back2 = io::parse_certificate(text2);
    REQUIRE(std::holds_alternative<en::NotExists>(back2.payload));
    CHECK(std::get<en::NotExists>(back2.payload).certificate == *full);
  }

  TEST_CASE("witness shape is checked before writing") {
    const auto p = lens_problem(3, 1, {0, 1});
    io::CertificateFile file;
    file.problem = p;
    file.payload =
        en::Exists{{IntMatrix(2, 1), IntMatrix{{0}}}, BigInt(1)};
    CHECK_THROWS_AS(io::serialize_certificate(file), ValidationError);
  }

  TEST_CASE("certificate parse errors") {
    CHECK_THROWS_WITH_AS(io::parse_certificate("schema-version: 1\n"
                                               "kind: sideways\n"),
                         "line 2: unknown certificate kind 'sideways'",
                         ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_certificate("schema-version: 1\n"
                                               "kind: obstruction\n"
                                               "tool-version: 0.1.0\n"
                                               "problem-fingerprint: ab\n"
                                               "fiber: 1 0\n"
                                               "block-size: 0\n"
                                               "method: magic\n"),
                         "line 7: unknown method 'magic'", ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_certificate("schema-version: 1\n"
                                               "kind: obstruction\n"
                                               "tool-version: 0.1.0\n"
                                               "problem-fingerprint: ab\n"
                                               "fiber: 1 0\n"
                                               "block-size: 0\n"
                                               "method: full-modular\n"
                                               "modulus: 1\n"),
                         "line 8: modulus must be at least 2",
                         ValidationError);
    CHECK_THROWS_WITH_AS(io::parse_certificate("schema-version: 1\n"
                                               "kind: witness\n"
                                               "tool-version: 0.1.0\n"
                                               "problem-fingerprint: ab\n"
                                               "fiber: 1 0\n"
                                               "block-size: 0\n"
                                               "y-row: 0 0\n"
                                               "y-row: 0 0\n"),
                         "unexpected end of document, wanted 'det'",
                         ValidationError);
  }

  TEST_CASE("decide output survives the file boundary") {
    const auto p = en::problem_from_decomposition(
        {0, {lk::GeneratorTerm::e0(1)}}, {1, 0});
    const auto v = en::decide(p);
    REQUIRE(std::holds_alternative<en::Exists>(v));
    io::CertificateFile file;
    file.tool_version = hfl::version;
    file.problem_fingerprint = io::fingerprint(p);
    file.problem = p;
    file.payload = std::get<en::Exists>(v);
    const auto back = io::parse_certificate(io::serialize_certificate(file));
    const auto &e = std::get<en::Exists>(back.payload);
    const auto r = en::verify(back.problem, e.solution);
    CHECK(r.ok);
    CHECK(r.det == e.det);
    CHECK(io::fingerprint(back.problem) == back.problem_fingerprint);
  }
}

TEST_SUITE("files") {
  TEST_CASE("atomic write then read round trip") {
    const std::string path = "/tmp/hfl_io_test_artifact.txt";
    io::write_file_atomic(path, "first\n");
    CHECK(io::read_file(path) == "first\n");
    // overwrite in place
    io::write_file_atomic(path, "second contents\nwith two lines\n");
    CHECK(io::read_file(path) == "second contents\nwith two lines\n");
    std::remove(path.c_str());
  }

  TEST_CASE("missing file is reported") {
    CHECK_THROWS_AS(io::read_file("/tmp/hfl_io_does_not_exist_491"),
                    ValidationError);
  }
}
