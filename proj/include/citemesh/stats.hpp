#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "citemesh/common.hpp"
#include "citemesh/corpus.hpp"
#include "citemesh/matrix.hpp"

namespace citemesh {

struct CountsReport {
  int n_docs_medline = 0;
  int n_docs_wos = 0;
  long mesh_attributions = 0;
  long unique_mesh = 0;
  long cited_ref_instances = 0;
  long unique_cited_refs = 0;
  long unique_referenced_journals = 0;
};

/// Corpus-level tallies, computed over the same vocabularies the matrix
/// builders use.
inline CountsReport corpus_counts(const Corpus& corpus) {
  if (corpus.documents.empty()) throw DataError("empty corpus");
  CountsReport r;
  r.n_docs_medline = corpus.medline_n;
  r.n_docs_wos = corpus.wos_n;
  detail::Vocab mesh, refs, journals;
  for (const Document& d : corpus.documents) {
    const auto terms = document_mesh_terms(d, corpus.mesh_mode);
    r.mesh_attributions += static_cast<long>(terms.size());
    for (const std::string& t : terms) mesh.intern(t);
    r.cited_ref_instances += static_cast<long>(d.cited_refs.size());
    for (const CitedReference& ref : d.cited_refs) {
      refs.intern(normalize_reference(ref.raw));
      if (auto j = referenced_journal(ref)) journals.intern(*j);
    }
  }
  r.unique_mesh = static_cast<long>(mesh.labels().size());
  r.unique_cited_refs = static_cast<long>(refs.labels().size());
  r.unique_referenced_journals = static_cast<long>(journals.labels().size());
  return r;
}

enum class FrequencyDimension { referenced_journal, mesh };

/// Top-n labels by frequency. Journals count reference instances; MeSH terms
/// count carrying documents. Ties order alphabetically.
inline std::vector<std::pair<std::string, long>> top_frequencies(
    const Corpus& corpus, FrequencyDimension dimension, int n) {
  if (n < 1) throw DataError("top_frequencies needs n >= 1");
  std::map<std::string, long> tally;
  if (dimension == FrequencyDimension::referenced_journal) {
    for (const Document& d : corpus.documents)
      for (const CitedReference& ref : d.cited_refs)
        if (auto j = referenced_journal(ref)) ++tally[*j];
  } else {
    for (const Document& d : corpus.documents)
      for (const std::string& t : document_mesh_terms(d, corpus.mesh_mode))
        ++tally[t];
  }
  std::vector<std::pair<std::string, long>> out(tally.begin(), tally.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(out.size()) > n) out.resize(static_cast<std::size_t>(n));
  return out;
}

struct YearlyPoint {
  int year = 0;
  int n_papers = 0;
  double c_per_p = 0.0;  // mean times-cited of that year's papers
};

struct YearlySeries {
  std::vector<YearlyPoint> points;  // years strictly ascending
  int n_without_year = 0;
};

inline YearlySeries yearly_series(const Corpus& corpus) {
  YearlySeries out;
  std::map<int, std::pair<int, long>> by_year;  // year -> (papers, tc sum)
  for (const Document& d : corpus.documents) {
    if (!d.pub_year) {
      ++out.n_without_year;
      continue;
    }
    auto& [papers, tc] = by_year[*d.pub_year];
    ++papers;
    tc += d.times_cited;
  }
  if (by_year.empty()) throw DataError("no document carries a publication year");
  for (const auto& [year, agg] : by_year)
    out.points.push_back(
        {year, agg.first, static_cast<double>(agg.second) / agg.first});
  return out;
}

/// Population Gini coefficient G = sum_ij |x_i - x_j| / (2 n^2 mu), no
/// sample correction; computed via the sorted form.
inline double gini(const std::vector<double>& values) {
  if (values.empty()) throw DataError("gini of an empty list");
  double total = 0.0;
  for (double v : values) {
    if (v < 0.0) throw DataError("gini requires non-negative values");
    total += v;
  }
  if (total == 0.0) throw DataError("gini of an all-zero list");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    weighted += (2.0 * (static_cast<double>(i) + 1.0) - n - 1.0) * sorted[i];
  return weighted / (n * total);
}

/// Citation scores summed per MeSH term: a document carrying k terms adds
/// its full times-cited to each of the k.
inline std::map<std::string, long> citations_by_mesh(const Corpus& corpus) {
  std::map<std::string, long> out;
  for (const Document& d : corpus.documents)
    for (const std::string& t : document_mesh_terms(d, corpus.mesh_mode))
      out[t] += d.times_cited;
  return out;
}

}  // namespace citemesh
