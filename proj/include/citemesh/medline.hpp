#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "citemesh/common.hpp"
#include "citemesh/text.hpp"

namespace citemesh {

/// One record from a MEDLINE-format (tagged) export.
struct MedlineRecord {
  std::string pmid;
  std::string title;
  std::string journal_title;   // JT
  std::string journal_abbrev;  // TA
  std::optional<int> pub_year;
  std::vector<std::string> authors;   // AU values, as exported
  std::vector<std::string> mesh_raw;  // MH values, verbatim (asterisks kept)
  std::map<std::string, std::vector<std::string>> other_fields;
};

struct MedlineParseResult {
  std::vector<MedlineRecord> records;
  ParseReport report;
};

namespace detail {

/// Splits "TAG - value" lines. MEDLINE pads tags to four columns
/// ("PMID- x", "MH  - x"); trimmed variants ("MH - x") are accepted too.
inline bool split_tag_line(std::string_view line, std::string& tag,
                           std::string& value) {
  std::size_t i = 0;
  while (i < line.size() && i < 4 &&
         (std::isalnum(static_cast<unsigned char>(line[i])) != 0))
    ++i;
  if (i == 0) return false;
  tag.assign(line.substr(0, i));
  while (i < line.size() && line[i] == ' ') ++i;
  if (i >= line.size() || line[i] != '-') return false;
  ++i;
  if (i < line.size() && line[i] == ' ') ++i;
  value.assign(line.substr(i));
  return true;
}

inline std::optional<int> year_from_date(std::string_view dp) {
  for (std::size_t i = 0; i + 4 <= dp.size(); ++i) {
    if (all_digits(dp.substr(i, 4)) &&
        (i + 4 == dp.size() || !std::isdigit(static_cast<unsigned char>(dp[i + 4])))) {
      int y = static_cast<int>(*parse_ll(dp.substr(i, 4)));
      if (y >= 1200 && y <= 2999) return y;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Parses a MEDLINE tagged export. Blocks are separated by blank lines;
/// continuation lines (leading whitespace) are joined to the open field with
/// a single space. Blocks without a PMID are skipped and reported; records
/// keep input order, and a duplicated PMID keeps its first occurrence.
inline MedlineParseResult parse_medline(std::string_view bytes) {
  MedlineParseResult out;
  DecodedText decoded = decode_text(bytes);
  out.report.encoding = decoded.encoding;
  out.report.encoding_note = decoded.note;
  if (!decoded.note.empty()) out.report.warnings.push_back(decoded.note);

  struct Field {
    std::string tag;
    std::string value;
  };
  std::vector<Field> fields;
  std::set<std::string> seen_pmids;
  std::size_t block_first_line = 0;

  auto flush_block = [&]() {
    if (fields.empty()) return;
    MedlineRecord rec;
    for (const Field& f : fields) {
      if (f.tag == "PMID") {
        if (rec.pmid.empty()) rec.pmid = trim(f.value);
      } else if (f.tag == "TI") {
        if (rec.title.empty()) rec.title = f.value;
      } else if (f.tag == "JT") {
        if (rec.journal_title.empty()) rec.journal_title = f.value;
      } else if (f.tag == "TA") {
        if (rec.journal_abbrev.empty()) rec.journal_abbrev = f.value;
      } else if (f.tag == "DP") {
        if (!rec.pub_year) rec.pub_year = detail::year_from_date(f.value);
      } else if (f.tag == "AU") {
        rec.authors.push_back(f.value);
      } else if (f.tag == "MH") {
        rec.mesh_raw.push_back(f.value);
      } else {
        rec.other_fields[f.tag].push_back(f.value);
      }
    }
    fields.clear();
    if (rec.pmid.empty()) {
      out.report.errors.push_back("block starting near line " +
                                  std::to_string(block_first_line) +
                                  " has no PMID; skipped");
      return;
    }
    if (!seen_pmids.insert(rec.pmid).second) {
      out.report.warnings.push_back("duplicate PMID " + rec.pmid +
                                    "; kept first occurrence");
      return;
    }
    out.records.push_back(std::move(rec));
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

    if (trim(line).empty()) {
      flush_block();
      continue;
    }
    if (is_space(line.front())) {
      // continuation of the previous field
      if (!fields.empty()) {
        if (!fields.back().value.empty()) fields.back().value += ' ';
        fields.back().value += trim(line);
      } else {
        out.report.warnings.push_back("line " + std::to_string(line_no) +
                                      ": continuation with no open field; ignored");
      }
      continue;
    }
    std::string tag, value;
    if (!detail::split_tag_line(line, tag, value)) {
      out.report.warnings.push_back("line " + std::to_string(line_no) +
                                    ": unrecognized line; ignored");
      continue;
    }
    if (fields.empty()) block_first_line = line_no;
    fields.push_back({std::move(tag), std::move(value)});
  }
  flush_block();
  return out;
}

// ---------------------------------------------------------------------------
// MeSH heading extraction
// ---------------------------------------------------------------------------

/// Controls what counts as one term downstream: the bare descriptor (default)
/// or each descriptor/qualifier pair as a distinct term.
enum class MeshMode { descriptor_only, descriptor_qualifier };

struct MeshHeading {
  std::string descriptor;               // no '*', no '/'
  std::vector<std::string> qualifiers;  // no '*'
  bool is_major = false;                // any '*' appeared in the MH value
};

/// Splits each MH value on '/' into descriptor + qualifiers and discards all
/// asterisks, remembering whether any was present. Duplicates that collapse
/// together after stripping are removed, keeping the first occurrence.
inline std::vector<MeshHeading> extract_mesh(
    const MedlineRecord& record, MeshMode mode = MeshMode::descriptor_only) {
  std::vector<MeshHeading> out;
  std::set<std::string> seen;
  for (const std::string& raw : record.mesh_raw) {
    const bool major = raw.find('*') != std::string::npos;
    const std::string clean = remove_chars(raw, "*");
    std::vector<std::string> parts = split(clean, "/");
    MeshHeading h;
    h.descriptor = trim(parts.front());
    h.is_major = major;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      std::string q = trim(parts[i]);
      if (!q.empty()) h.qualifiers.push_back(std::move(q));
    }
    if (h.descriptor.empty()) continue;
    std::string key = h.descriptor;
    if (mode == MeshMode::descriptor_qualifier)
      for (const std::string& q : h.qualifiers) key += "/" + q;
    if (!seen.insert(key).second) continue;
    out.push_back(std::move(h));
  }
  return out;
}

/// Term labels a document contributes to vocabularies. In descriptor-only
/// mode each heading yields its descriptor; otherwise each qualifier expands
/// to "descriptor/qualifier" (bare descriptor when there are none).
inline std::vector<std::string> mesh_term_labels(
    const std::vector<MeshHeading>& headings, MeshMode mode) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const MeshHeading& h : headings) {
    if (mode == MeshMode::descriptor_only || h.qualifiers.empty()) {
      if (seen.insert(h.descriptor).second) out.push_back(h.descriptor);
    } else {
      for (const std::string& q : h.qualifiers) {
        std::string label = h.descriptor + "/" + q;
        if (seen.insert(label).second) out.push_back(std::move(label));
      }
    }
  }
  return out;
}

}  // namespace citemesh
