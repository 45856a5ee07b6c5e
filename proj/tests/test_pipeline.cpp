#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "citemesh/pipeline.hpp"

using namespace citemesh;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("citemesh_pipe_" + std::to_string(::getpid()) + "_" + tag + "_" +
                  std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

RunConfig fixture_config(const fs::path& out) {
  RunConfig cfg;
  cfg.medline_path = std::string{CITEMESH_FIXTURE_DIR} + "/medline_10.txt";
  cfg.wos_path = std::string{CITEMESH_FIXTURE_DIR} + "/wos_10.txt";
  cfg.out_dir = out.string();
  return cfg;
}

const std::vector<std::string> kPaperNames = {
    "mtrx.net", "mtrx.txt", "mtrx.sps", "cr_mh.net",
    "jcr_mh.net", "jcr_mh_a.net", "lcs.net"};

}  // namespace

TEST_CASE("pipeline produces the full fixed-name file set") {
  const fs::path out = temp_dir("full");
  PipelineOutcome outcome = run_pipeline(fixture_config(out));
  for (const auto& name : kPaperNames) {
    INFO(name);
    CHECK(fs::exists(out / name));
  }
  CHECK(fs::exists(out / "string.wos"));
  CHECK(fs::exists(out / "string.pubmed"));
  CHECK(fs::exists(out / "corpus_summary.csv"));
  CHECK(fs::exists(out / "counts.csv"));
  CHECK(fs::exists(out / "run_report.json"));
  CHECK(outcome.corpus.documents.size() == 10);
  CHECK(outcome.corpus.linked_n == 8);
  CHECK_FALSE(fs::exists(out / ".citemesh.lock"));  // lock released
  fs::remove_all(out);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path out1 = temp_dir("r1");
  const fs::path out2 = temp_dir("r2");
  run_pipeline(fixture_config(out1));
  run_pipeline(fixture_config(out2));
  for (const auto& entry : fs::directory_iterator(out1)) {
    const fs::path other = out2 / entry.path().filename();
    INFO(entry.path().filename().string());
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
  // overwriting rerun into the same directory also reproduces the bytes
  const std::string before = slurp(out1 / "mtrx.net");
  run_pipeline(fixture_config(out1));
  CHECK(slurp(out1 / "mtrx.net") == before);
  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("medline-only input skips the citation network with a notice") {
  const fs::path out = temp_dir("med");
  RunConfig cfg = fixture_config(out);
  cfg.wos_path.clear();
  PipelineOutcome outcome = run_pipeline(cfg);
  CHECK(fs::exists(out / "mtrx.net"));
  CHECK_FALSE(fs::exists(out / "lcs.net"));
  CHECK_FALSE(fs::exists(out / "cr_mh.net"));
  bool noticed = false;
  for (const auto& n : outcome.notices)
    noticed |= n.find("lcs") != std::string::npos;
  CHECK(noticed);
  CHECK(fs::exists(out / "string.wos"));
  fs::remove_all(out);
}

TEST_CASE("wos-only input builds the reference matrix from citations") {
  const fs::path out = temp_dir("wos");
  RunConfig cfg = fixture_config(out);
  cfg.medline_path.clear();
  run_pipeline(cfg);
  CHECK(fs::exists(out / "mtrx.net"));
  CHECK(fs::exists(out / "lcs.net"));
  CHECK_FALSE(fs::exists(out / "cr_mh.net"));
  CHECK(fs::exists(out / "string.pubmed"));
  CHECK_FALSE(fs::exists(out / "string.wos"));
  // doc x CR matrix: 8 docs + 11 unique refs
  CHECK_THAT(slurp(out / "mtrx.net"),
             Catch::Matchers::ContainsSubstring("*Vertices 19 8"));
  fs::remove_all(out);
}

TEST_CASE("search strings cover the fixture PMIDs") {
  const fs::path out = temp_dir("strings");
  RunConfig cfg = fixture_config(out);
  cfg.chunk = 4;
  run_pipeline(cfg);
  const std::string wos_queries = slurp(out / "string.wos");
  CHECK(wos_queries ==
        "PMID=(9001 OR 9002 OR 9003 OR 9004)\n"
        "PMID=(9005 OR 9006 OR 9007 OR 9008)\n"
        "PMID=(9009 OR 9010)\n");
  const std::string pubmed = slurp(out / "string.pubmed");
  CHECK(pubmed.find("9001[PMID]") == 0);
  CHECK_THAT(pubmed, Catch::Matchers::ContainsSubstring("9008[PMID]"));
  fs::remove_all(out);
}

TEST_CASE("no command mutates the input files") {
  const fs::path out = temp_dir("inputs");
  RunConfig cfg = fixture_config(out);
  const std::string medline_before = slurp(cfg.medline_path);
  const std::string wos_before = slurp(cfg.wos_path);
  run_pipeline(cfg);
  CHECK(slurp(cfg.medline_path) == medline_before);
  CHECK(slurp(cfg.wos_path) == wos_before);
  fs::remove_all(out);
}

TEST_CASE("held lock refuses a second run") {
  const fs::path out = temp_dir("lock");
  {
    DirLock lock(out);
    CHECK_THROWS_AS(run_pipeline(fixture_config(out)), DataError);
  }
  // released: now it works
  run_pipeline(fixture_config(out));
  fs::remove_all(out);
}

TEST_CASE("crlf flag switches the Pajek line endings") {
  const fs::path out = temp_dir("crlf");
  RunConfig cfg = fixture_config(out);
  cfg.crlf = true;
  run_pipeline(cfg);
  CHECK_THAT(slurp(out / "lcs.net"), Catch::Matchers::ContainsSubstring("\r\n"));
  fs::remove_all(out);
}

TEST_CASE("missing inputs are refused") {
  RunConfig cfg;
  cfg.out_dir = temp_dir("none").string();
  CHECK_THROWS_AS(run_pipeline(cfg), DataError);
}

// --- main-path command ------------------------------------------------------

TEST_CASE("mainpath over the fixture lcs network") {
  const fs::path out = temp_dir("mp");
  run_pipeline(fixture_config(out));

  MainPathRunConfig cfg;
  cfg.net_path = (out / "lcs.net").string();
  cfg.out_dir = (out / "mp").string();
  cfg.variant = MainPathVariant::global_standard;
  MainPathOutcome outcome = run_mainpath(cfg);

  CHECK(fs::exists(out / "mp" / "spc.net"));
  CHECK(fs::exists(out / "mp" / "main_path.csv"));
  CHECK(fs::exists(out / "mp" / "main_path.clu"));
  CHECK(fs::exists(out / "mp" / "mainpath_report.json"));

  // the fixture graph: 3 weak components, one 2-cycle, one self-loop
  CHECK(outcome.prepared.report.n_weak_components == 3);
  CHECK(outcome.prepared.report.largest_component_size == 8);
  CHECK(outcome.prepared.report.n_strong_components_shrunk == 1);
  CHECK(outcome.prepared.report.n_loops_removed == 1);
  CHECK(outcome.prepared.graph.keys.size() == 7);
  CHECK(outcome.prepared.graph.arcs.size() == 10);

  // hand-checked optimum: 9008 9007 9006 9004 [9003+9005] 9002 9001, weight 28
  CHECK(outcome.result.total_weight == BigUint{28});
  CHECK(outcome.result.vertices.size() == 7);

  // the partition marks exactly the on-path vertices
  std::ifstream clu(out / "mp" / "main_path.clu");
  std::string line;
  std::getline(clu, line);
  int ones = 0, lines = 0;
  while (std::getline(clu, line)) {
    ++lines;
    if (line == "1") ++ones;
  }
  CHECK(lines == 7);
  CHECK(ones == static_cast<int>(outcome.result.vertices.size()));
  fs::remove_all(out);
}

TEST_CASE("acyclic input reports nothing shrunk and no loops") {
  const fs::path dir = temp_dir("acyclic");
  CitationGraph g;
  g.keys = {"a", "b", "c"};
  g.arcs = {{0, 1}, {1, 2}};
  const fs::path net = dir / "g.net";
  write_pajek(to_pajek(g), net.string());

  MainPathRunConfig cfg;
  cfg.net_path = net.string();
  cfg.out_dir = (dir / "out").string();
  MainPathOutcome outcome = run_mainpath(cfg);
  CHECK(outcome.prepared.report.n_strong_components_shrunk == 0);
  CHECK(outcome.prepared.report.n_loops_removed == 0);
  fs::remove_all(dir);
}

TEST_CASE("key-route supersets grow with k on the fixture network") {
  const fs::path out = temp_dir("kr");
  run_pipeline(fixture_config(out));
  MainPathRunConfig cfg;
  cfg.net_path = (out / "lcs.net").string();
  cfg.variant = MainPathVariant::key_route;
  cfg.out_dir = (out / "k1").string();
  cfg.k = 1;
  auto k1 = run_mainpath(cfg);
  cfg.out_dir = (out / "k2").string();
  cfg.k = 2;
  auto k2 = run_mainpath(cfg);
  std::set<std::pair<int, int>> s1(k1.result.arcs.begin(), k1.result.arcs.end());
  std::set<std::pair<int, int>> s2(k2.result.arcs.begin(), k2.result.arcs.end());
  CHECK(std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()));
  fs::remove_all(out);
}

TEST_CASE("2-mode network is rejected as main-path input") {
  const fs::path dir = temp_dir("twomode");
  SparseLabeledMatrix m;
  m.kind = MatrixKind::binary;
  m.row_labels = {"r"};
  m.col_labels = {"c"};
  m.set_one(0, 0);
  const fs::path net = dir / "m.net";
  write_pajek(to_pajek(m), net.string());
  MainPathRunConfig cfg;
  cfg.net_path = net.string();
  cfg.out_dir = (dir / "out").string();
  CHECK_THROWS_AS(run_mainpath(cfg), DataError);
  fs::remove_all(dir);
}
