#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "citemesh/common.hpp"
#include "citemesh/medline.hpp"
#include "citemesh/text.hpp"
#include "citemesh/wos.hpp"

namespace citemesh {

/// One publication after linking both sources. MeSH comes from MEDLINE,
/// cited references and citation counts from WoS; WoS wins bibliographic
/// conflicts so that citation keys mirror its reference formatting.
struct Document {
  std::string pmid;  // synthesized "WOS:<UT>" for WoS records without PM
  std::optional<std::string> wos_ut;
  std::string first_author;
  std::optional<int> pub_year;
  std::optional<std::string> journal_abbrev;
  std::optional<std::string> volume;
  std::optional<std::string> begin_page;
  std::vector<MeshHeading> mesh;
  std::vector<CitedReference> cited_refs;
  int times_cited = 0;
  bool linked = false;
};

struct Corpus {
  std::vector<Document> documents;
  int medline_n = 0;
  int wos_n = 0;
  int linked_n = 0;
  MeshMode mesh_mode = MeshMode::descriptor_only;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::optional<std::string> first_other_field(const MedlineRecord& rec,
                                                    const std::string& tag) {
  auto it = rec.other_fields.find(tag);
  if (it == rec.other_fields.end() || it->second.empty()) return std::nullopt;
  std::string v = trim(it->second.front());
  if (v.empty()) return std::nullopt;
  return v;
}

// MEDLINE PG values look like "1234-45" or "234-9; discussion 250".
inline std::optional<std::string> medline_begin_page(const MedlineRecord& rec) {
  auto pg = first_other_field(rec, "PG");
  if (!pg) return std::nullopt;
  std::string v = *pg;
  auto cut = v.find_first_of("-;,");
  if (cut != std::string::npos) v = trim(v.substr(0, cut));
  if (v.empty()) return std::nullopt;
  return v;
}

inline void apply_wos_fields(Document& doc, const WosRecord& w) {
  doc.wos_ut = w.ut.empty() ? std::nullopt : std::optional<std::string>{w.ut};
  if (!w.first_author.empty()) doc.first_author = w.first_author;
  if (w.pub_year) doc.pub_year = w.pub_year;
  if (!w.journal_abbrev_29.empty()) doc.journal_abbrev = w.journal_abbrev_29;
  if (w.volume) doc.volume = w.volume;
  if (w.begin_page) doc.begin_page = w.begin_page;
  doc.times_cited = w.times_cited;
  doc.cited_refs.clear();
  doc.cited_refs.reserve(w.cited_refs_raw.size());
  for (const std::string& raw : w.cited_refs_raw)
    doc.cited_refs.push_back(parse_cited_reference(raw));
}

inline std::string wos_document_key(const WosRecord& w, std::size_t index) {
  if (w.pmid && !w.pmid->empty()) return *w.pmid;
  if (!w.ut.empty()) return "WOS:" + w.ut;
  return "WOS#" + std::to_string(index);
}

}  // namespace detail

/// Links MEDLINE and WoS records on exact PMID equality. Matched documents
/// merge both sides; unmatched ones join as linked=false. Document order is
/// MEDLINE input order with WoS-only records appended in WoS input order.
inline Corpus link_by_pmid(const std::vector<MedlineRecord>& medline,
                           const std::vector<WosRecord>& wos,
                           MeshMode mode = MeshMode::descriptor_only) {
  Corpus corpus;
  corpus.mesh_mode = mode;
  corpus.medline_n = static_cast<int>(medline.size());

  std::map<std::string, std::size_t> wos_by_pmid;
  for (std::size_t i = 0; i < wos.size(); ++i) {
    if (!wos[i].pmid || wos[i].pmid->empty()) continue;
    if (!wos_by_pmid.emplace(*wos[i].pmid, i).second)
      corpus.warnings.push_back("duplicate PMID " + *wos[i].pmid +
                                " on the WoS side; first record used");
  }

  std::set<std::size_t> consumed;
  for (const MedlineRecord& m : medline) {
    Document doc;
    doc.pmid = m.pmid;
    doc.first_author = m.authors.empty() ? std::string{} : m.authors.front();
    doc.pub_year = m.pub_year;
    if (!m.journal_abbrev.empty()) doc.journal_abbrev = m.journal_abbrev;
    doc.volume = detail::first_other_field(m, "VI");
    doc.begin_page = detail::medline_begin_page(m);
    doc.mesh = extract_mesh(m, mode);
    auto it = wos_by_pmid.find(m.pmid);
    if (it != wos_by_pmid.end()) {
      detail::apply_wos_fields(doc, wos[it->second]);
      doc.linked = true;
      consumed.insert(it->second);
      ++corpus.linked_n;
    }
    corpus.documents.push_back(std::move(doc));
  }

  std::set<std::string> corpus_keys;
  for (const Document& d : corpus.documents) corpus_keys.insert(d.pmid);

  int wos_retained = corpus.linked_n;
  for (std::size_t i = 0; i < wos.size(); ++i) {
    if (consumed.count(i)) continue;
    if (wos[i].pmid && !wos[i].pmid->empty() &&
        wos_by_pmid.at(*wos[i].pmid) != i)
      continue;  // duplicate PMID, already warned
    std::string key = detail::wos_document_key(wos[i], i);
    if (!corpus_keys.insert(key).second) {
      corpus.warnings.push_back("duplicate WoS document key " + key +
                                "; record dropped");
      continue;
    }
    Document doc;
    doc.pmid = std::move(key);
    detail::apply_wos_fields(doc, wos[i]);
    doc.linked = false;
    corpus.documents.push_back(std::move(doc));
    ++wos_retained;
  }
  corpus.wos_n = wos_retained;
  return corpus;
}

/// Chunked advanced-search queries of the form "FIELD=(p1 OR p2 OR ...)";
/// the chunks partition the input PMID list exactly, in order.
inline std::vector<std::string> emit_wos_search_string(
    const std::vector<std::string>& pmids, int chunk = 500,
    const std::string& field = "PMID") {
  if (pmids.empty()) throw DataError("no PMIDs to build a search string from");
  if (chunk < 1) throw DataError("chunk size must be >= 1");
  std::vector<std::string> out;
  for (std::size_t begin = 0; begin < pmids.size();
       begin += static_cast<std::size_t>(chunk)) {
    const std::size_t end =
        std::min(pmids.size(), begin + static_cast<std::size_t>(chunk));
    std::string q = field + "=(";
    for (std::size_t i = begin; i < end; ++i) {
      if (i > begin) q += " OR ";
      q += pmids[i];
    }
    q += ")";
    out.push_back(std::move(q));
  }
  return out;
}

/// Single PubMed query "p1[PMID] OR p2[PMID] OR ..." over the PM tags
/// present in the given WoS records, in record order.
inline std::string emit_pubmed_search_string(const std::vector<WosRecord>& wos) {
  std::string out;
  bool any = false;
  for (const WosRecord& w : wos) {
    if (!w.pmid || w.pmid->empty()) continue;
    if (any) out += " OR ";
    out += *w.pmid + "[PMID]";
    any = true;
  }
  if (!any) throw DataError("no PM tags present in the WoS records");
  return out;
}

/// Copies the TC snapshot onto documents matching the given records by
/// document key. Documents without a WoS record keep their current value
/// (zero for MEDLINE-only ones); applying twice changes nothing.
inline void attach_times_cited(Corpus& corpus, const std::vector<WosRecord>& wos) {
  std::map<std::string, int> tc_by_key;
  for (std::size_t i = 0; i < wos.size(); ++i)
    tc_by_key.emplace(detail::wos_document_key(wos[i], i), wos[i].times_cited);
  for (Document& doc : corpus.documents) {
    auto it = tc_by_key.find(doc.pmid);
    if (it != tc_by_key.end()) doc.times_cited = it->second;
  }
}

/// Normalized label under which a raw cited-reference string is counted.
inline std::string normalize_reference(std::string_view raw) {
  return to_upper_ascii(trim(raw));
}

/// Per-document term labels, deduplicated, in heading order.
inline std::vector<std::string> document_mesh_terms(const Document& doc,
                                                    MeshMode mode) {
  return mesh_term_labels(doc.mesh, mode);
}

}  // namespace citemesh
