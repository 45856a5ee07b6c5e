#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "citemesh/common.hpp"
#include "citemesh/corpus.hpp"

namespace citemesh {

enum class MatrixKind { binary, count, real };

/// 2-mode matrix with ordered label vocabularies and sparse cells.
/// Structural zeros are never stored; binary matrices hold only ones.
struct SparseLabeledMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::map<std::pair<int, int>, double> cells;
  MatrixKind kind = MatrixKind::count;

  int rows() const { return static_cast<int>(row_labels.size()); }
  int cols() const { return static_cast<int>(col_labels.size()); }

  double at(int r, int c) const {
    auto it = cells.find({r, c});
    return it == cells.end() ? 0.0 : it->second;
  }

  void add(int r, int c, double v) {
    if (v != 0.0) cells[{r, c}] += v;
  }

  void set_one(int r, int c) { cells[{r, c}] = 1.0; }
};

namespace detail {

/// Vocabulary in first-appearance order with O(1) lookup.
class Vocab {
 public:
  int intern(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, static_cast<int>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::optional<int> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  bool empty() const { return labels_.empty(); }

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> labels_;
};

inline Vocab mesh_vocab(const Corpus& corpus) {
  Vocab v;
  for (const Document& d : corpus.documents)
    for (const std::string& term : document_mesh_terms(d, corpus.mesh_mode))
      v.intern(term);
  return v;
}

inline Vocab reference_vocab(const Corpus& corpus) {
  Vocab v;
  for (const Document& d : corpus.documents)
    for (const CitedReference& r : d.cited_refs) v.intern(normalize_reference(r.raw));
  return v;
}

inline Vocab journal_vocab(const Corpus& corpus) {
  Vocab v;
  for (const Document& d : corpus.documents)
    for (const CitedReference& r : d.cited_refs)
      if (auto j = referenced_journal(r)) v.intern(*j);
  return v;
}

inline std::vector<int> unique_indices(const std::vector<std::string>& labels,
                                       Vocab& vocab) {
  std::vector<int> out;
  std::set<int> seen;
  for (const std::string& l : labels) {
    int i = vocab.intern(l);
    if (seen.insert(i).second) out.push_back(i);
  }
  return out;
}

inline std::vector<std::string> doc_reference_labels(const Document& d) {
  std::vector<std::string> out;
  out.reserve(d.cited_refs.size());
  for (const CitedReference& r : d.cited_refs)
    out.push_back(normalize_reference(r.raw));
  return out;
}

inline std::vector<std::string> doc_journal_labels(const Document& d) {
  std::vector<std::string> out;
  for (const CitedReference& r : d.cited_refs)
    if (auto j = referenced_journal(r)) out.push_back(*j);
  return out;
}

inline bool corpus_has_mesh(const Corpus& corpus) {
  for (const Document& d : corpus.documents)
    if (!d.mesh.empty()) return true;
  return false;
}

inline bool corpus_has_refs(const Corpus& corpus) {
  for (const Document& d : corpus.documents)
    if (!d.cited_refs.empty()) return true;
  return false;
}

inline bool corpus_has_mesh_and_refs(const Corpus& corpus) {
  for (const Document& d : corpus.documents)
    if (!d.mesh.empty() && !d.cited_refs.empty()) return true;
  return false;
}

}  // namespace detail

/// Documents x MeSH terms, binary. Rows are all corpus documents in order
/// (labelled by PMID); columns are terms in first-appearance order.
inline SparseLabeledMatrix build_doc_mesh(const Corpus& corpus) {
  if (!detail::corpus_has_mesh(corpus))
    throw DataError("corpus carries no MeSH headings");
  SparseLabeledMatrix m;
  m.kind = MatrixKind::binary;
  detail::Vocab terms;
  for (const Document& d : corpus.documents) {
    m.row_labels.push_back(d.pmid);
    const int row = m.rows() - 1;
    for (int col : detail::unique_indices(
             document_mesh_terms(d, corpus.mesh_mode), terms))
      m.set_one(row, col);
  }
  m.col_labels = terms.labels();
  return m;
}

/// Documents x cited references, binary; a reference repeated inside one
/// document still contributes a single 1.
inline SparseLabeledMatrix build_doc_cr(const Corpus& corpus) {
  if (!detail::corpus_has_refs(corpus))
    throw DataError("corpus carries no cited references");
  SparseLabeledMatrix m;
  m.kind = MatrixKind::binary;
  detail::Vocab refs;
  for (const Document& d : corpus.documents) {
    m.row_labels.push_back(d.pmid);
    const int row = m.rows() - 1;
    for (int col : detail::unique_indices(detail::doc_reference_labels(d), refs))
      m.set_one(row, col);
  }
  m.col_labels = refs.labels();
  return m;
}

/// Cited references x MeSH terms; each cell counts the documents in which
/// the reference and the term co-occur.
inline SparseLabeledMatrix build_cr_mesh(const Corpus& corpus) {
  if (!detail::corpus_has_mesh_and_refs(corpus))
    throw DataError("no document carries both MeSH headings and references");
  SparseLabeledMatrix m;
  m.kind = MatrixKind::count;
  detail::Vocab refs;
  detail::Vocab terms;
  for (const Document& d : corpus.documents) {
    const auto ref_ids = detail::unique_indices(detail::doc_reference_labels(d), refs);
    const auto term_ids = detail::unique_indices(
        document_mesh_terms(d, corpus.mesh_mode), terms);
    for (int r : ref_ids)
      for (int t : term_ids) m.add(r, t, 1.0);
  }
  m.row_labels = refs.labels();
  m.col_labels = terms.labels();
  return m;
}

/// Referenced journals x MeSH terms; document-level co-occurrence, so a
/// journal cited twice by one document still counts that document once.
inline SparseLabeledMatrix build_jcr_mesh(const Corpus& corpus) {
  if (!detail::corpus_has_mesh_and_refs(corpus))
    throw DataError("no document carries both MeSH headings and references");
  SparseLabeledMatrix m;
  m.kind = MatrixKind::count;
  detail::Vocab journals;
  detail::Vocab terms;
  for (const Document& d : corpus.documents) {
    const auto journal_ids =
        detail::unique_indices(detail::doc_journal_labels(d), journals);
    const auto term_ids = detail::unique_indices(
        document_mesh_terms(d, corpus.mesh_mode), terms);
    for (int j : journal_ids)
      for (int t : term_ids) m.add(j, t, 1.0);
  }
  m.row_labels = journals.labels();
  m.col_labels = terms.labels();
  return m;
}

/// Documents x (referenced journals ++ MeSH terms), binary. Journal columns
/// are prefixed "J:" and term columns "M:" so the two vocabularies cannot
/// collide.
inline SparseLabeledMatrix build_doc_attributes(const Corpus& corpus) {
  if (!detail::corpus_has_mesh_and_refs(corpus))
    throw DataError("no document carries both MeSH headings and references");
  const detail::Vocab journals = detail::journal_vocab(corpus);
  const int n_journals = static_cast<int>(journals.labels().size());
  SparseLabeledMatrix m;
  m.kind = MatrixKind::binary;
  for (const std::string& j : journals.labels()) m.col_labels.push_back("J:" + j);
  detail::Vocab terms;
  for (const Document& d : corpus.documents) {
    m.row_labels.push_back(d.pmid);
    const int row = m.rows() - 1;
    std::set<int> journal_ids;
    for (const std::string& j : detail::doc_journal_labels(d))
      journal_ids.insert(*journals.find(j));
    for (int j : journal_ids) m.set_one(row, j);
    for (int t : detail::unique_indices(
             document_mesh_terms(d, corpus.mesh_mode), terms))
      m.set_one(row, n_journals + t);
  }
  for (const std::string& t : terms.labels()) m.col_labels.push_back("M:" + t);
  return m;
}

/// 2-mode -> 1-mode projection over the columns: cell (a,b) counts the rows
/// in which both columns are non-zero; the diagonal is each column's row
/// frequency.
inline SparseLabeledMatrix project_columns(const SparseLabeledMatrix& in) {
  if (in.cells.empty()) throw DataError("cannot project an empty matrix");
  SparseLabeledMatrix out;
  out.kind = MatrixKind::count;
  out.row_labels = in.col_labels;
  out.col_labels = in.col_labels;
  std::vector<std::vector<int>> row_support(in.rows());
  for (const auto& [rc, v] : in.cells)
    if (v > 0.0) row_support[rc.first].push_back(rc.second);
  for (const auto& support : row_support)
    for (int a : support)
      for (int b : support) out.add(a, b, 1.0);
  return out;
}

enum class SimilarityMeasure { cosine, jaccard };
enum class Axis { rows, columns };

/// Pairwise similarity between the vectors along one axis. Cosine uses the
/// raw values; Jaccard binarizes first. A zero vector gets an all-zero row
/// and column (diagonal included) plus a warning.
inline SparseLabeledMatrix similarity(const SparseLabeledMatrix& in,
                                      SimilarityMeasure measure, Axis axis,
                                      std::vector<std::string>* warnings = nullptr) {
  const auto& labels =
      axis == Axis::rows ? in.row_labels : in.col_labels;
  if (labels.size() < 2)
    throw DataError("similarity needs at least two vectors on the chosen axis");

  const int n = static_cast<int>(labels.size());
  std::vector<std::map<int, double>> vec(n);
  for (const auto& [rc, v] : in.cells) {
    if (v == 0.0) continue;
    if (axis == Axis::rows)
      vec[rc.first][rc.second] = v;
    else
      vec[rc.second][rc.first] = v;
  }

  SparseLabeledMatrix out;
  out.kind = MatrixKind::real;
  out.row_labels = labels;
  out.col_labels = labels;

  std::vector<double> norm(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& [_, v] : vec[i]) s += v * v;
    norm[i] = std::sqrt(s);
    if (vec[i].empty() && warnings)
      warnings->push_back("zero vector '" + labels[i] +
                          "'; its similarity row is all-zero");
  }

  auto dot = [](const std::map<int, double>& a, const std::map<int, double>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    double s = 0.0;
    for (const auto& [k, v] : small) {
      auto it = large.find(k);
      if (it != large.end()) s += v * it->second;
    }
    return s;
  };
  auto overlap = [](const std::map<int, double>& a, const std::map<int, double>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    int c = 0;
    for (const auto& [k, _] : small) c += large.count(k) ? 1 : 0;
    return c;
  };

  for (int i = 0; i < n; ++i) {
    if (vec[i].empty()) continue;
    out.cells[{i, i}] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      if (vec[j].empty()) continue;
      double s = 0.0;
      if (measure == SimilarityMeasure::cosine) {
        s = dot(vec[i], vec[j]) / (norm[i] * norm[j]);
      } else {
        const int inter = overlap(vec[i], vec[j]);
        const int uni = static_cast<int>(vec[i].size() + vec[j].size()) - inter;
        s = uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
      }
      if (s > 1.0) s = 1.0;  // guard fp drift on colinear vectors
      if (s != 0.0) {
        out.cells[{i, j}] = s;
        out.cells[{j, i}] = s;
      }
    }
  }
  return out;
}

}  // namespace citemesh
