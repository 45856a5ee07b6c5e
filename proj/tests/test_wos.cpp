#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "citemesh/wos.hpp"

using namespace citemesh;

namespace {

std::string fixture(const char* name) {
  std::ifstream is(std::string{CITEMESH_FIXTURE_DIR} + "/" + name,
                   std::ios::binary);
  REQUIRE(is);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("fixture records carry the tagged fields") {
  auto result = parse_wos(fixture("wos_10.txt"));
  REQUIRE(result.records.size() == 8);
  CHECK(result.report.errors.empty());

  const WosRecord& first = result.records[0];
  CHECK(first.first_author == "Adler, K");
  CHECK(first.journal_abbrev_29 == "J NEUROSCI");
  REQUIRE(first.pub_year.has_value());
  CHECK(*first.pub_year == 1991);
  CHECK(first.volume == "11");
  CHECK(first.begin_page == "100");
  CHECK(first.times_cited == 20);
  REQUIRE(first.pmid.has_value());
  CHECK(*first.pmid == "9001");
  CHECK(first.ut == "WOS:000000000100001");
  REQUIRE(first.cited_refs_raw.size() == 2);
  CHECK(first.cited_refs_raw[0] == "SMITH A, 1980, NATURE, V288, P50");

  // a CR block of three lines yields three references
  CHECK(result.records[2].cited_refs_raw.size() == 3);
}

TEST_CASE("times cited parses as integer") {
  auto result = parse_wos("FN x\nVR 1.0\nPT J\nAU A, B\nTC 16\nER\nEF\n");
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].times_cited == 16);
}

TEST_CASE("missing TC defaults to zero") {
  auto result = parse_wos("FN x\nVR 1.0\nPT J\nAU A, B\nER\nEF\n");
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].times_cited == 0);
}

TEST_CASE("author block continuations become separate authors") {
  auto result = parse_wos(
      "FN x\nVR 1.0\n"
      "PT J\n"
      "AU Evans, NA\n"
      "   Smith, B\n"
      "   Liu, XQ\n"
      "TC 1\nER\nEF\n");
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].first_author == "Evans, NA");
  CHECK(result.records[0].all_authors ==
        std::vector<std::string>{"Evans, NA", "Smith, B", "Liu, XQ"});
}

TEST_CASE("header with zero record blocks") {
  auto result = parse_wos("FN Clarivate\nVR 1.0\nEF\n");
  CHECK(result.records.empty());
}

TEST_CASE("missing final ER still emits the record, with a warning") {
  auto result = parse_wos("FN x\nVR 1.0\nPT J\nAU A, B\nTC 2\nEF\n");
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].times_cited == 2);
  REQUIRE_FALSE(result.report.warnings.empty());
}

TEST_CASE("missing FN header warns only") {
  auto result = parse_wos("PT J\nAU A, B\nER\n");
  REQUIRE(result.records.size() == 1);
  bool found = false;
  for (const auto& w : result.report.warnings)
    found |= w.find("FN") != std::string::npos;
  CHECK(found);
}

TEST_CASE("CR line count equals total reference count") {
  const std::string text = fixture("wos_10.txt");
  auto result = parse_wos(text);
  long total = 0;
  for (const auto& r : result.records) total += static_cast<long>(r.cited_refs_raw.size());
  CHECK(total == 19);
}

TEST_CASE("wrapped title joins") {
  auto result = parse_wos(fixture("wos_10.txt"));
  CHECK(result.records[0].other_fields.at("TI") ==
        std::vector<std::string>{
            "Amyloid deposits in transgenic mouse cortex respond to early "
            "intervention"});
}

// --- parse_cited_reference --------------------------------------------------

TEST_CASE("reference with all five fields") {
  auto ref = parse_cited_reference("Zhang CL, 2002, CLIN CANCER RES, V8, P1234");
  CHECK(ref.raw == "Zhang CL, 2002, CLIN CANCER RES, V8, P1234");
  REQUIRE(ref.author);
  CHECK(*ref.author == "Zhang CL");
  REQUIRE(ref.year);
  CHECK(*ref.year == 2002);
  REQUIRE(ref.journal);
  CHECK(*ref.journal == "CLIN CANCER RES");
  REQUIRE(ref.volume);
  CHECK(*ref.volume == "8");
  REQUIRE(ref.page);
  CHECK(*ref.page == "1234");
  CHECK_FALSE(ref.doi);
}

TEST_CASE("degenerate string keeps only raw") {
  auto ref = parse_cited_reference("ANONYMOUS REPORT");
  CHECK(ref.raw == "ANONYMOUS REPORT");
  CHECK_FALSE(ref.author);
  CHECK_FALSE(ref.year);
  CHECK_FALSE(ref.journal);
  CHECK_FALSE(ref.volume);
  CHECK_FALSE(ref.page);
}

TEST_CASE("reference with DOI suffix") {
  auto ref = parse_cited_reference(
      "Hardy J, 1992, SCIENCE, V256, P184, DOI 10.1126/science.1566067");
  REQUIRE(ref.doi);
  CHECK(*ref.doi == "10.1126/science.1566067");
  REQUIRE(ref.journal);
  CHECK(*ref.journal == "SCIENCE");
}

TEST_CASE("journals whose names start with P or V survive") {
  auto pnas = parse_cited_reference("Doe J, 1999, P NATL ACAD SCI USA, V96, P1");
  REQUIRE(pnas.journal);
  CHECK(*pnas.journal == "P NATL ACAD SCI USA");
  CHECK(pnas.page == "1");

  auto pediatrics = parse_cited_reference("Roe A, 2001, PEDIATRICS, V107, P4");
  REQUIRE(pediatrics.journal);
  CHECK(*pediatrics.journal == "PEDIATRICS");

  auto vaccine = parse_cited_reference("Poe B, 2003, VACCINE, V21, P99");
  REQUIRE(vaccine.journal);
  CHECK(*vaccine.journal == "VACCINE");
}

TEST_CASE("journal lowercased in the export is normalized upward") {
  auto ref = parse_cited_reference("Low C, 1991, j neurosci, V11, P5");
  REQUIRE(ref.journal);
  CHECK(*ref.journal == "J NEUROSCI");
}

TEST_CASE("year absent: token 1 tried as journal unless digits or V/P/DOI") {
  auto book = parse_cited_reference("AUTHOR X, HANDBOOK TITLE");
  REQUIRE(book.journal);
  CHECK(*book.journal == "HANDBOOK TITLE");
  CHECK_FALSE(book.year);

  auto numbered = parse_cited_reference("AUTHOR X, 123456, SOMETHING");
  CHECK_FALSE(numbered.journal);  // token 1 all digits, no year found
}

TEST_CASE("parsing is total over random noise") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> ch(32, 126);
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) s += static_cast<char>(ch(rng));
    auto ref = parse_cited_reference(s);
    CHECK(ref.raw == trim(s));
  }
}

TEST_CASE("reconstruct and reparse is a fixpoint") {
  const char* inputs[] = {
      "Zhang CL, 2002, CLIN CANCER RES, V8, P1234",
      "Hardy J, 1992, SCIENCE, V256, P184, DOI 10.1126/science.1566067",
      "Doe J, 1999, P NATL ACAD SCI USA, V96, P1",
  };
  for (const char* raw : inputs) {
    auto first = parse_cited_reference(raw);
    auto rebuilt = reconstruct_reference(first);
    REQUIRE(rebuilt);
    auto second = parse_cited_reference(*rebuilt);
    CHECK(second.author == first.author);
    CHECK(second.year == first.year);
    CHECK(second.journal == first.journal);
    CHECK(second.volume == first.volume);
    CHECK(second.page == first.page);
    CHECK(reconstruct_reference(second) == rebuilt);
  }
}

TEST_CASE("referenced journal accessor") {
  CHECK(*referenced_journal(
            parse_cited_reference("Zhang CL, 2002, CLIN CANCER RES, V8, P1234")) ==
        "CLIN CANCER RES");
  CHECK_FALSE(referenced_journal(parse_cited_reference("ANONYMOUS REPORT")));
}
