#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citemesh/common.hpp"
#include "citemesh/text.hpp"

namespace citemesh {

/// One record from a Web-of-Science "plain text" export (FN/VR ... ER/EF).
struct WosRecord {
  std::string ut;  // accession number, may be empty
  std::optional<std::string> pmid;
  std::string first_author;
  std::vector<std::string> all_authors;
  std::optional<int> pub_year;
  std::string journal_abbrev_29;  // J9
  std::optional<std::string> volume;
  std::optional<std::string> begin_page;
  int times_cited = 0;
  std::vector<std::string> cited_refs_raw;  // one per CR line, trimmed
  std::map<std::string, std::vector<std::string>> other_fields;
};

struct WosParseResult {
  std::vector<WosRecord> records;
  ParseReport report;
};

/// One cited-reference string, split by the WoS field convention
/// "Author II, Year, JOURNAL, Vvol, Ppage[, DOI ...]". Parsing is total:
/// a string that fits nothing still comes back with `raw` set.
struct CitedReference {
  std::string raw;
  std::optional<std::string> author;
  std::optional<int> year;
  std::optional<std::string> journal;  // uppercased
  std::optional<std::string> volume;   // digits after "V"
  std::optional<std::string> page;     // token after "P"
  std::optional<std::string> doi;
};

namespace detail {

inline bool is_volume_token(std::string_view t) {
  return t.size() >= 2 && t[0] == 'V' && all_digits(t.substr(1));
}

// Page tokens are "P" + alphanumerics containing at least one digit
// ("P1234", "PE504"); the digit requirement keeps single-token journal
// names such as PEDIATRICS out of the page slot.
inline bool is_page_token(std::string_view t) {
  if (t.size() < 2 || t[0] != 'P') return false;
  bool digit = false;
  for (char c : t.substr(1)) {
    if (std::isalnum(static_cast<unsigned char>(c)) == 0) return false;
    if (c >= '0' && c <= '9') digit = true;
  }
  return digit;
}

inline bool is_doi_token(std::string_view t) {
  return t.size() >= 4 && t.substr(0, 4) == "DOI ";
}

}  // namespace detail

inline CitedReference parse_cited_reference(std::string_view raw_in) {
  CitedReference ref;
  ref.raw = trim(raw_in);
  std::vector<std::string> tokens = split(ref.raw, ", ");
  for (std::string& t : tokens) t = trim(t);
  if (tokens.size() < 2) return ref;

  ref.author = tokens[0];

  std::size_t year_idx = 0;  // 0 = not found
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (tokens[i].size() == 4 && all_digits(tokens[i])) {
      int y = static_cast<int>(*parse_ll(tokens[i]));
      if (y >= 1500 && y <= 2100) {
        ref.year = y;
        year_idx = i;
        break;
      }
    }
  }

  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (i == year_idx) continue;
    const std::string& t = tokens[i];
    if (!ref.volume && detail::is_volume_token(t)) {
      ref.volume = t.substr(1);
    } else if (!ref.page && detail::is_page_token(t)) {
      ref.page = t.substr(1);
    } else if (!ref.doi && detail::is_doi_token(t)) {
      ref.doi = trim(std::string_view{t}.substr(4));
    }
  }

  auto journal_candidate = [&](const std::string& t) {
    return !t.empty() && !all_digits(t) && !detail::is_volume_token(t) &&
           !detail::is_page_token(t) && !detail::is_doi_token(t);
  };
  if (year_idx > 0) {
    for (std::size_t i = year_idx + 1; i < tokens.size(); ++i) {
      if (journal_candidate(tokens[i])) {
        ref.journal = to_upper_ascii(tokens[i]);
        break;
      }
    }
  } else if (journal_candidate(tokens[1])) {
    ref.journal = to_upper_ascii(tokens[1]);
  }
  return ref;
}

/// Abbreviated journal name of a reference, or nothing when none was found.
inline std::optional<std::string> referenced_journal(const CitedReference& ref) {
  return ref.journal;
}

/// Rebuilds "author, year, journal, Vvol, Ppage" from a fully parsed
/// reference; nothing when any of the five fields is missing.
inline std::optional<std::string> reconstruct_reference(const CitedReference& ref) {
  if (!ref.author || !ref.year || !ref.journal || !ref.volume || !ref.page)
    return std::nullopt;
  return *ref.author + ", " + std::to_string(*ref.year) + ", " + *ref.journal +
         ", V" + *ref.volume + ", P" + *ref.page;
}

/// Parses a WoS plain-text export. Records run from a PT line to an ER line;
/// tags are two characters wide and continuation lines are indented. Every
/// CR line (including continuations) is one cited reference.
inline WosParseResult parse_wos(std::string_view bytes) {
  WosParseResult out;
  DecodedText decoded = decode_text(bytes);
  out.report.encoding = decoded.encoding;
  out.report.encoding_note = decoded.note;
  if (!decoded.note.empty()) out.report.warnings.push_back(decoded.note);

  // Tags whose continuation lines wrap one long value; all other tags keep
  // each line as a separate value (CR references, AF author lists, ...).
  auto joins_continuations = [](std::string_view tag) {
    return tag == "TI" || tag == "SO" || tag == "AB" || tag == "DE" ||
           tag == "ID" || tag == "FU" || tag == "FX" || tag == "CT";
  };

  bool saw_fn = false;
  bool in_record = false;
  bool first_content_line = true;
  std::string cur_tag;
  WosRecord rec;

  auto add_value = [&](const std::string& tag, const std::string& value,
                       bool continuation) {
    if (tag == "UT") {
      if (rec.ut.empty()) rec.ut = trim(value);
    } else if (tag == "PM") {
      if (!rec.pmid) rec.pmid = trim(value);
    } else if (tag == "AU") {
      rec.all_authors.push_back(trim(value));
      if (rec.first_author.empty()) rec.first_author = rec.all_authors.front();
    } else if (tag == "PY") {
      if (auto y = parse_ll(trim(value))) rec.pub_year = static_cast<int>(*y);
    } else if (tag == "J9") {
      if (rec.journal_abbrev_29.empty()) rec.journal_abbrev_29 = trim(value);
    } else if (tag == "VL") {
      if (!rec.volume) rec.volume = trim(value);
    } else if (tag == "BP") {
      if (!rec.begin_page) rec.begin_page = trim(value);
    } else if (tag == "TC") {
      if (auto tc = parse_ll(trim(value)))
        rec.times_cited = *tc < 0 ? 0 : static_cast<int>(*tc);
      else
        out.report.warnings.push_back("unparsable TC value '" + value + "'");
    } else if (tag == "CR") {
      std::string r = trim(value);
      if (!r.empty()) rec.cited_refs_raw.push_back(std::move(r));
    } else {
      auto& values = rec.other_fields[tag];
      if (continuation && joins_continuations(tag) && !values.empty()) {
        values.back() += ' ';
        values.back() += trim(value);
      } else {
        values.push_back(trim(value));
      }
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  const std::string& text = decoded.text;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line;
    if (eol == std::string::npos) {
      if (pos >= text.size()) break;
      line = std::string_view{text}.substr(pos);
      pos = text.size() + 1;
    } else {
      line = std::string_view{text}.substr(pos, eol - pos);
      pos = eol + 1;
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    const bool continuation = line.front() == ' ';
    std::string tag, value;
    if (continuation) {
      tag = cur_tag;
      value = std::string{line};
    } else if (line.size() >= 2 &&
               std::isupper(static_cast<unsigned char>(line[0])) != 0 &&
               std::isalnum(static_cast<unsigned char>(line[1])) != 0 &&
               (line.size() == 2 || line[2] == ' ')) {
      tag = std::string{line.substr(0, 2)};
      value = line.size() > 3 ? std::string{line.substr(3)} : std::string{};
    } else {
      out.report.warnings.push_back("line " + std::to_string(line_no) +
                                    ": unrecognized line; ignored");
      continue;
    }

    if (first_content_line) {
      first_content_line = false;
      if (tag != "FN")
        out.report.warnings.push_back("missing FN header line");
      else
        saw_fn = true;
    }

    if (tag == "FN" || tag == "VR") {
      saw_fn = saw_fn || tag == "FN";
      continue;
    }
    if (tag == "EF") continue;
    if (tag == "PT" && !continuation) {
      if (in_record) {
        out.report.warnings.push_back("record before line " +
                                      std::to_string(line_no) +
                                      " not terminated by ER");
        out.records.push_back(std::move(rec));
      }
      rec = WosRecord{};
      in_record = true;
      rec.other_fields["PT"].push_back(trim(value));
      cur_tag = "PT";
      continue;
    }
    if (tag == "ER") {
      if (in_record) {
        out.records.push_back(std::move(rec));
        rec = WosRecord{};
        in_record = false;
      }
      cur_tag.clear();
      continue;
    }
    if (!in_record) continue;  // stray content between records
    if (!continuation) cur_tag = tag;
    if (!tag.empty()) add_value(tag, value, continuation);
  }
  if (in_record) {
    out.report.warnings.push_back("last record not terminated by ER");
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace citemesh
