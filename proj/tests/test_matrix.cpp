#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "citemesh/matrix.hpp"
#include "oracles.hpp"

using namespace citemesh;

namespace {

Corpus fixture_corpus() {
  auto read = [](const char* name) {
    std::ifstream is(std::string{CITEMESH_FIXTURE_DIR} + "/" + name,
                     std::ios::binary);
    REQUIRE(is);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
  };
  auto medline = parse_medline(read("medline_10.txt"));
  auto wos = parse_wos(read("wos_10.txt"));
  Corpus corpus = link_by_pmid(medline.records, wos.records);
  attach_times_cited(corpus, wos.records);
  return corpus;
}

int label_index(const std::vector<std::string>& labels, const std::string& l) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("doc x mesh equals the document-scan oracle") {
  Corpus corpus = fixture_corpus();
  SparseLabeledMatrix m = build_doc_mesh(corpus);
  CHECK(m.kind == MatrixKind::binary);
  CHECK(m.rows() == 10);
  CHECK(m.cols() == 12);
  for (int r = 0; r < m.rows(); ++r) {
    const auto terms = oracles::doc_terms(corpus.documents[r], corpus.mesh_mode);
    for (int c = 0; c < m.cols(); ++c) {
      const double expected = terms.count(m.col_labels[c]) ? 1.0 : 0.0;
      CHECK(m.at(r, c) == expected);
    }
  }
  for (const auto& [rc, v] : m.cells) CHECK(v == 1.0);  // binary
}

TEST_CASE("doc x mesh column sums equal per-term document counts") {
  Corpus corpus = fixture_corpus();
  SparseLabeledMatrix m = build_doc_mesh(corpus);
  for (int c = 0; c < m.cols(); ++c) {
    double sum = 0;
    for (int r = 0; r < m.rows(); ++r) sum += m.at(r, c);
    int brute = 0;
    for (const auto& d : corpus.documents)
      brute += oracles::doc_terms(d, corpus.mesh_mode).count(m.col_labels[c]) ? 1 : 0;
    CHECK(sum == brute);
  }
  CHECK(m.at(0, label_index(m.col_labels, "Alzheimer Disease")) == 1.0);
}

TEST_CASE("one document with one term gives a 1x1 cell") {
  MedlineRecord rec;
  rec.pmid = "1";
  rec.mesh_raw = {"Animals"};
  Corpus corpus = link_by_pmid({rec}, {});
  SparseLabeledMatrix m = build_doc_mesh(corpus);
  CHECK(m.rows() == 1);
  CHECK(m.cols() == 1);
  CHECK(m.at(0, 0) == 1.0);
}

TEST_CASE("corpus without mesh cannot build doc x mesh") {
  WosRecord w;
  w.pmid = "1";
  w.first_author = "A, B";
  Corpus corpus = link_by_pmid({}, {w});
  CHECK_THROWS_AS(build_doc_mesh(corpus), DataError);
}

TEST_CASE("doc x cr is binary despite repeated references") {
  WosRecord w;
  w.pmid = "1";
  w.first_author = "A, B";
  w.cited_refs_raw = {"SMITH A, 1980, NATURE, V288, P50",
                      "Smith A, 1980, NATURE, V288, P50"};  // same after casefold
  Corpus corpus = link_by_pmid({}, {w});
  SparseLabeledMatrix m = build_doc_cr(corpus);
  CHECK(m.cols() == 1);
  CHECK(m.at(0, 0) == 1.0);
}

TEST_CASE("doc x cr row sums equal per-document unique reference counts") {
  Corpus corpus = fixture_corpus();
  SparseLabeledMatrix m = build_doc_cr(corpus);
  CHECK(m.kind == MatrixKind::binary);
  CHECK(m.rows() == 10);
  CHECK(m.cols() == 11);  // 19 instances, 11 unique strings
  for (int r = 0; r < m.rows(); ++r) {
    double sum = 0;
    for (int c = 0; c < m.cols(); ++c) sum += m.at(r, c);
    CHECK(sum == static_cast<double>(oracles::doc_refs(corpus.documents[r]).size()));
  }
}

TEST_CASE("cr x mesh cells equal the brute-force triple loop") {
  Corpus corpus = fixture_corpus();
  SparseLabeledMatrix m = build_cr_mesh(corpus);
  CHECK(m.kind == MatrixKind::count);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      CHECK(m.at(r, c) == oracles::co_document_count(corpus, m.row_labels[r],
                                                     m.col_labels[c], false));
}

TEST_CASE("two documents sharing a reference and a term give cell 2") {
  auto make = [](const char* pmid) {
    MedlineRecord r;
    r.pmid = pmid;
    r.mesh_raw = {"Humans"};
    return r;
  };
  auto wrec = [](const char* pmid) {
    WosRecord w;
    w.pmid = pmid;
    w.first_author = "A, B";
    w.cited_refs_raw = {"SMITH A, 1980, NATURE, V288, P50"};
    return w;
  };
  Corpus corpus = link_by_pmid({make("1"), make("2")}, {wrec("1"), wrec("2")});
  SparseLabeledMatrix m = build_cr_mesh(corpus);
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  CHECK(m.at(0, 0) == 2.0);
}

TEST_CASE("jcr x mesh counts each document once per journal") {
  Corpus corpus = fixture_corpus();
  SparseLabeledMatrix m = build_jcr_mesh(corpus);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      CHECK(m.at(r, c) == oracles::co_document_count(corpus, m.row_labels[r],
                                                     m.col_labels[c], true));
  // cell bounded by both document frequencies
  for (const auto& [rc, v] : m.cells) {
    int jdocs = 0, tdocs = 0;
    for (const auto& d : corpus.documents) {
      jdocs += oracles::doc_journals(d).count(m.row_labels[rc.first]) ? 1 : 0;
      tdocs += oracles::doc_terms(d, corpus.mesh_mode).count(m.col_labels[rc.second])
                   ? 1
                   : 0;
    }
    CHECK(v <= std::min(jdocs, tdocs));
  }
}

TEST_CASE("document citing a journal twice contributes one co-occurrence") {
  MedlineRecord m;
  m.pmid = "1";
  m.mesh_raw = {"Humans"};
  WosRecord w;
  w.pmid = "1";
  w.first_author = "A, B";
  w.cited_refs_raw = {"SMITH A, 1980, NATURE, V288, P50",
                      "JONES B, 1990, NATURE, V343, P1"};
  Corpus corpus = link_by_pmid({m}, {w});
  SparseLabeledMatrix jcr = build_jcr_mesh(corpus);
  REQUIRE(jcr.rows() == 1);
  CHECK(jcr.row_labels[0] == "NATURE");
  CHECK(jcr.at(0, 0) == 1.0);
}

TEST_CASE("doc x attributes concatenates namespaced vocabularies") {
  Corpus corpus = fixture_corpus();
  SparseLabeledMatrix m = build_doc_attributes(corpus);
  CHECK(m.kind == MatrixKind::binary);
  CHECK(m.rows() == 10);
  CHECK(m.cols() == 6 + 12);  // journals + mesh terms
  for (int c = 0; c < m.cols(); ++c) {
    const std::string& label = m.col_labels[c];
    REQUIRE(label.size() > 2);
    CHECK((label.rfind("J:", 0) == 0 || label.rfind("M:", 0) == 0));
  }
  for (int r = 0; r < m.rows(); ++r) {
    const auto& d = corpus.documents[r];
    const auto journals = oracles::doc_journals(d);
    const auto terms = oracles::doc_terms(d, corpus.mesh_mode);
    for (int c = 0; c < m.cols(); ++c) {
      const std::string& label = m.col_labels[c];
      const bool expected = label.rfind("J:", 0) == 0
                                ? journals.count(label.substr(2)) > 0
                                : terms.count(label.substr(2)) > 0;
      CHECK(m.at(r, c) == (expected ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("vocabulary order is deterministic across rebuilds") {
  Corpus corpus = fixture_corpus();
  SparseLabeledMatrix a = build_cr_mesh(corpus);
  SparseLabeledMatrix b = build_cr_mesh(corpus);
  CHECK(a.row_labels == b.row_labels);
  CHECK(a.col_labels == b.col_labels);
  CHECK(a.cells == b.cells);
}

// --- projection -------------------------------------------------------------

TEST_CASE("projection of a single row connects its columns") {
  SparseLabeledMatrix m;
  m.kind = MatrixKind::binary;
  m.row_labels = {"r"};
  m.col_labels = {"a", "b"};
  m.set_one(0, 0);
  m.set_one(0, 1);
  SparseLabeledMatrix p = project_columns(m);
  CHECK(p.at(0, 0) == 1.0);
  CHECK(p.at(0, 1) == 1.0);
  CHECK(p.at(1, 0) == 1.0);
  CHECK(p.at(1, 1) == 1.0);
}

TEST_CASE("disjoint column supports stay disconnected") {
  SparseLabeledMatrix m;
  m.kind = MatrixKind::binary;
  m.row_labels = {"r1", "r2"};
  m.col_labels = {"a", "b"};
  m.set_one(0, 0);
  m.set_one(1, 1);
  SparseLabeledMatrix p = project_columns(m);
  CHECK(p.at(0, 1) == 0.0);
  CHECK(p.at(1, 0) == 0.0);
  CHECK(p.at(0, 0) == 1.0);
  CHECK(p.at(1, 1) == 1.0);
}

TEST_CASE("random 6x6 projection equals the explicit double loop") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int iter = 0; iter < 30; ++iter) {
    SparseLabeledMatrix m;
    m.kind = MatrixKind::binary;
    for (int i = 0; i < 6; ++i) {
      m.row_labels.push_back("r" + std::to_string(i));
      m.col_labels.push_back("c" + std::to_string(i));
    }
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        if (coin(rng)) m.set_one(r, c);
    if (m.cells.empty()) continue;
    SparseLabeledMatrix p = project_columns(m);
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        int expected = 0;
        for (int r = 0; r < 6; ++r)
          expected += (m.at(r, a) > 0 && m.at(r, b) > 0) ? 1 : 0;
        CHECK(p.at(a, b) == expected);
      }
    }
    // diagonal = column frequency of the binarized input
    for (int c = 0; c < 6; ++c) {
      int freq = 0;
      for (int r = 0; r < 6; ++r) freq += m.at(r, c) > 0 ? 1 : 0;
      CHECK(p.at(c, c) == freq);
    }
  }
}

// --- similarity -------------------------------------------------------------

namespace {

SparseLabeledMatrix two_row_matrix(std::vector<double> u, std::vector<double> v) {
  SparseLabeledMatrix m;
  m.kind = MatrixKind::count;
  m.row_labels = {"u", "v"};
  for (std::size_t c = 0; c < u.size(); ++c)
    m.col_labels.push_back("c" + std::to_string(c));
  for (std::size_t c = 0; c < u.size(); ++c) {
    if (u[c] != 0) m.cells[{0, static_cast<int>(c)}] = u[c];
    if (v[c] != 0) m.cells[{1, static_cast<int>(c)}] = v[c];
  }
  return m;
}

}  // namespace

TEST_CASE("identical vectors have similarity one") {
  auto m = two_row_matrix({1, 2, 3}, {1, 2, 3});
  auto cos = similarity(m, SimilarityMeasure::cosine, Axis::rows);
  CHECK_THAT(cos.at(0, 1), Catch::Matchers::WithinAbs(1.0, 1e-12));
  auto jac = similarity(m, SimilarityMeasure::jaccard, Axis::rows);
  CHECK(jac.at(0, 1) == 1.0);
}

TEST_CASE("orthogonal vectors have similarity zero") {
  auto m = two_row_matrix({1, 0}, {0, 1});
  CHECK(similarity(m, SimilarityMeasure::cosine, Axis::rows).at(0, 1) == 0.0);
  CHECK(similarity(m, SimilarityMeasure::jaccard, Axis::rows).at(0, 1) == 0.0);
}

TEST_CASE("hand-computed cosine and jaccard") {
  auto m = two_row_matrix({1, 1, 0}, {1, 0, 1});
  CHECK_THAT(similarity(m, SimilarityMeasure::cosine, Axis::rows).at(0, 1),
             Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK_THAT(similarity(m, SimilarityMeasure::jaccard, Axis::rows).at(0, 1),
             Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
}

TEST_CASE("zero vector row is all zero including the diagonal, with warning") {
  auto m = two_row_matrix({1, 1}, {0, 0});
  std::vector<std::string> warnings;
  auto s = similarity(m, SimilarityMeasure::cosine, Axis::rows, &warnings);
  CHECK(s.at(1, 1) == 0.0);
  CHECK(s.at(0, 1) == 0.0);
  CHECK(s.at(0, 0) == 1.0);
  REQUIRE(warnings.size() == 1);
}

TEST_CASE("column-axis similarity runs over column vectors") {
  SparseLabeledMatrix m;
  m.kind = MatrixKind::binary;
  m.row_labels = {"r0", "r1"};
  m.col_labels = {"a", "b"};
  m.set_one(0, 0);
  m.set_one(0, 1);
  m.set_one(1, 1);
  auto s = similarity(m, SimilarityMeasure::jaccard, Axis::columns);
  CHECK(s.rows() == 2);
  CHECK_THAT(s.at(0, 1), Catch::Matchers::WithinAbs(0.5, 1e-12));
}

TEST_CASE("similarity is symmetric and bounded on random matrices") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dim(2, 7);
  std::uniform_real_distribution<double> val(0.0, 5.0);
  std::uniform_int_distribution<int> fill(0, 2);
  for (int iter = 0; iter < 40; ++iter) {
    SparseLabeledMatrix m;
    m.kind = MatrixKind::count;
    const int rows = dim(rng), cols = dim(rng);
    for (int r = 0; r < rows; ++r) m.row_labels.push_back("r" + std::to_string(r));
    for (int c = 0; c < cols; ++c) m.col_labels.push_back("c" + std::to_string(c));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (fill(rng) == 0) m.cells[{r, c}] = val(rng);
    for (auto measure : {SimilarityMeasure::cosine, SimilarityMeasure::jaccard}) {
      auto s = similarity(m, measure, Axis::rows);
      for (int a = 0; a < rows; ++a) {
        for (int b = 0; b < rows; ++b) {
          CHECK(s.at(a, b) == s.at(b, a));
          CHECK(s.at(a, b) >= 0.0);
          CHECK(s.at(a, b) <= 1.0);
        }
      }
    }
  }
}
