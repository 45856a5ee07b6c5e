#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "citemesh/common.hpp"
#include "citemesh/corpus.hpp"
#include "citemesh/text.hpp"

namespace citemesh {

enum class MatchMode { strict, relaxed };

/// Key a document is cited under, in the WoS reference convention:
/// "AUTHOR II, YYYY, JOURNAL, Vv, Pp" (relaxed keys stop after the journal).
struct CitationKey {
  std::string text;
  std::string author;
  int year = 0;
  std::string journal;
  std::optional<std::string> volume;
  std::optional<std::string> page;
  MatchMode strictness = MatchMode::strict;
};

/// Directed graph over corpus documents, citing -> cited. Vertices carry the
/// document keys; arcs are unique. Self-arcs may exist until acyclic prep.
struct CitationGraph {
  std::vector<std::string> keys;
  std::vector<std::pair<int, int>> arcs;  // sorted, unique
};

namespace detail {

/// "Zhang, C. L." -> "ZHANG CL"; "de Nooy, W." -> "DE NOOY W".
/// Periods and commas go, the initials collapse, diacritics fold to ASCII,
/// hyphens stay.
inline std::string format_key_author(std::string_view au) {
  std::string folded = ascii_fold(au);
  std::string formatted;
  auto comma = folded.find(',');
  if (comma == std::string::npos) {
    formatted = collapse_spaces(remove_chars(folded, ".,"));
  } else {
    std::string surname = collapse_spaces(remove_chars(folded.substr(0, comma), "."));
    std::string initials = remove_chars(folded.substr(comma + 1), ". \t");
    formatted = surname;
    if (!initials.empty()) formatted += " " + initials;
  }
  return to_upper_ascii(formatted);
}

inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!is_space(c)) out.push_back(c);
  return out;
}

}  // namespace detail

/// Builds the key a document would appear under in another record's
/// reference list. Throws DataError naming the document when a component
/// required by the mode is missing.
inline CitationKey citation_key(const Document& doc,
                                MatchMode mode = MatchMode::strict) {
  auto missing = [&](const char* what) {
    return DataError("document " + doc.pmid + ": missing " + what + " for " +
                     (mode == MatchMode::strict ? "strict" : "relaxed") +
                     " citation key");
  };
  CitationKey key;
  key.strictness = mode;
  key.author = detail::format_key_author(doc.first_author);
  if (key.author.empty()) throw missing("author");
  if (!doc.pub_year) throw missing("publication year");
  key.year = *doc.pub_year;
  if (!doc.journal_abbrev || doc.journal_abbrev->empty())
    throw missing("journal abbreviation");
  key.journal = to_upper_ascii(collapse_spaces(*doc.journal_abbrev));
  if (mode == MatchMode::strict) {
    if (!doc.volume || doc.volume->empty()) throw missing("volume");
    if (!doc.begin_page || doc.begin_page->empty()) throw missing("begin page");
    key.volume = to_upper_ascii(detail::strip_spaces(*doc.volume));
    key.page = to_upper_ascii(detail::strip_spaces(*doc.begin_page));
  }
  key.text = key.author + ", " + std::to_string(key.year) + ", " + key.journal;
  if (key.volume) key.text += ", V" + *key.volume;
  if (key.page) key.text += ", P" + *key.page;
  return key;
}

struct MatchReport {
  int keys_built = 0;
  int key_failures = 0;
  long refs_scanned = 0;
  int arcs_found = 0;
  /// (citing key, cited key, first matching raw reference) per arc.
  std::vector<std::tuple<std::string, std::string, std::string>> matches;
  std::vector<std::string> key_errors;
};

struct LocalGraphResult {
  CitationGraph graph;
  MatchReport report;
};

/// Bounded citation network: an arc a->b exists when some reference of a,
/// uppercased and trimmed, begins with b's citation key, so a trailing
/// ", DOI ..." on the reference does not break the match. Documents whose
/// key cannot be built stay as isolated vertices.
inline LocalGraphResult build_local_citation_graph(
    const Corpus& corpus, MatchMode mode = MatchMode::strict) {
  LocalGraphResult out;
  const auto& docs = corpus.documents;
  out.graph.keys.reserve(docs.size());
  for (const Document& d : docs) out.graph.keys.push_back(d.pmid);

  // Key lookup bucketed by the author component: a reference can only start
  // with a key whose author equals the reference's own first token.
  std::map<std::string, std::vector<std::pair<std::string, int>>> by_author;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    try {
      CitationKey key = citation_key(docs[i], mode);
      by_author[key.author].emplace_back(key.text, static_cast<int>(i));
      ++out.report.keys_built;
    } catch (const DataError& e) {
      ++out.report.key_failures;
      out.report.key_errors.push_back(e.what());
    }
  }

  std::set<std::pair<int, int>> arcs;
  for (std::size_t a = 0; a < docs.size(); ++a) {
    for (const CitedReference& ref : docs[a].cited_refs) {
      ++out.report.refs_scanned;
      const std::string norm = normalize_reference(ref.raw);
      const auto comma = norm.find(", ");
      const std::string author =
          comma == std::string::npos ? norm : norm.substr(0, comma);
      auto bucket = by_author.find(author);
      if (bucket == by_author.end()) continue;
      for (const auto& [key_text, b] : bucket->second) {
        if (norm.starts_with(key_text)) {
          if (arcs.emplace(static_cast<int>(a), b).second)
            out.report.matches.emplace_back(docs[a].pmid, docs[b].pmid, ref.raw);
        }
      }
    }
  }
  out.graph.arcs.assign(arcs.begin(), arcs.end());
  out.report.arcs_found = static_cast<int>(out.graph.arcs.size());
  return out;
}

/// In-degree of each document inside the bounded network: its local
/// citation score.
inline std::map<std::string, int> local_citation_scores(const CitationGraph& g) {
  std::map<std::string, int> scores;
  for (const std::string& k : g.keys) scores[k] = 0;
  for (const auto& [from, to] : g.arcs) {
    (void)from;
    ++scores[g.keys[to]];
  }
  return scores;
}

}  // namespace citemesh
