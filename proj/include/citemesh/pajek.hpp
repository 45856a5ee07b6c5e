#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citemesh/bigint.hpp"
#include "citemesh/citegraph.hpp"
#include "citemesh/common.hpp"
#include "citemesh/matrix.hpp"
#include "citemesh/text.hpp"

namespace citemesh {

/// In-memory form of a Pajek .net file. Indices are 1-based; a 2-mode file
/// carries the row-vertex count in the header and places all rows first.
struct PajekNetwork {
  int n_vertices = 0;
  std::optional<int> n_row_vertices;  // present for 2-mode files
  std::vector<std::string> vertex_labels;
  struct Link {
    int from = 0;
    int to = 0;
    double weight = 1.0;
  };
  std::vector<Link> arcs;   // directed
  std::vector<Link> edges;  // undirected
};

namespace detail {

/// Integral weights print without a decimal point; anything else uses 15
/// significant digits, which round-trips byte-stably through a double.
inline std::string format_weight(double w) {
  if (std::abs(w) < 1e15 && w == static_cast<double>(static_cast<long long>(w)))
    return std::to_string(static_cast<long long>(w));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", w);
  return buf;
}

inline std::string quote_label(const std::string& label) {
  std::string out = "\"";
  for (char c : label) {
    out.push_back(c);
    if (c == '"') out.push_back('"');  // doubled quote escape
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

inline PajekNetwork to_pajek(const SparseLabeledMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw DataError("cannot export an empty matrix");
  PajekNetwork net;
  if (m.row_labels == m.col_labels) {
    // square matrix over one vocabulary (projection, similarity): 1-mode
    net.n_vertices = m.rows();
    net.vertex_labels = m.row_labels;
    for (const auto& [rc, v] : m.cells)
      net.arcs.push_back({rc.first + 1, rc.second + 1, v});
    return net;
  }
  net.n_row_vertices = m.rows();
  net.n_vertices = m.rows() + m.cols();
  net.vertex_labels.reserve(net.n_vertices);
  for (const std::string& l : m.row_labels) net.vertex_labels.push_back(l);
  for (const std::string& l : m.col_labels) net.vertex_labels.push_back(l);
  for (const auto& [rc, v] : m.cells)
    net.arcs.push_back({rc.first + 1, m.rows() + rc.second + 1, v});
  return net;
}

inline PajekNetwork to_pajek(const CitationGraph& g) {
  if (g.keys.empty()) throw DataError("cannot export an empty graph");
  PajekNetwork net;
  net.n_vertices = static_cast<int>(g.keys.size());
  net.vertex_labels = g.keys;
  for (const auto& [from, to] : g.arcs) net.arcs.push_back({from + 1, to + 1, 1.0});
  return net;
}

inline void render_pajek(const PajekNetwork& net, std::ostream& os,
                         bool crlf = false) {
  const char* eol = crlf ? "\r\n" : "\n";
  os << "*Vertices " << net.n_vertices;
  if (net.n_row_vertices) os << ' ' << *net.n_row_vertices;
  os << eol;
  for (int i = 0; i < net.n_vertices; ++i) {
    const std::string label = i < static_cast<int>(net.vertex_labels.size())
                                  ? net.vertex_labels[i]
                                  : std::to_string(i + 1);
    os << (i + 1) << ' ' << detail::quote_label(label) << eol;
  }
  os << "*Arcs" << eol;
  for (const auto& link : net.arcs)
    os << link.from << ' ' << link.to << ' ' << detail::format_weight(link.weight)
       << eol;
  if (!net.edges.empty()) {
    os << "*Edges" << eol;
    for (const auto& link : net.edges)
      os << link.from << ' ' << link.to << ' '
         << detail::format_weight(link.weight) << eol;
  }
}

inline std::string render_pajek(const PajekNetwork& net, bool crlf = false) {
  std::ostringstream os;
  render_pajek(net, os, crlf);
  return os.str();
}

inline void write_pajek(const PajekNetwork& net, const std::string& path,
                        bool crlf = false) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write " + path);
  render_pajek(net, os, crlf);
}

/// SPC-weighted variant: arc weights come as exact decimal strings so large
/// path counts are not squeezed through a double.
inline void write_pajek_weighted(const CitationGraph& g,
                                 const std::vector<BigUint>& arc_weights,
                                 const std::string& path, bool crlf = false) {
  if (g.keys.empty()) throw DataError("cannot export an empty graph");
  if (arc_weights.size() != g.arcs.size())
    throw DataError("arc weight count does not match arc count");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write " + path);
  const char* eol = crlf ? "\r\n" : "\n";
  os << "*Vertices " << g.keys.size() << eol;
  for (std::size_t i = 0; i < g.keys.size(); ++i)
    os << (i + 1) << ' ' << detail::quote_label(g.keys[i]) << eol;
  os << "*Arcs" << eol;
  for (std::size_t a = 0; a < g.arcs.size(); ++a)
    os << (g.arcs[a].first + 1) << ' ' << (g.arcs[a].second + 1) << ' '
       << arc_weights[a].to_string() << eol;
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

namespace detail {

struct PajekLine {
  std::size_t number = 0;
  std::string text;
};

inline std::vector<PajekLine> pajek_lines(std::string_view content) {
  std::vector<PajekLine> out;
  std::size_t pos = 0, line_no = 0;
  while (pos <= content.size()) {
    auto eol = content.find('\n', pos);
    std::string_view line;
    if (eol == std::string_view::npos) {
      if (pos >= content.size()) break;
      line = content.substr(pos);
      pos = content.size() + 1;
    } else {
      line = content.substr(pos, eol - pos);
      pos = eol + 1;
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({line_no, std::string{line}});
  }
  return out;
}

[[noreturn]] inline void pajek_fail(const std::string& name, std::size_t line,
                                    const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace detail

/// Tolerant Pajek reader: *Arcs and/or *Edges in any order, optional vertex
/// lines, default weight 1, '%' comments. Malformed indices and unquoted
/// labels containing spaces are errors that name the line.
inline PajekNetwork parse_pajek(std::string_view content,
                                const std::string& name = "<pajek>") {
  PajekNetwork net;
  enum class Section { none, vertices, arcs, edges, skip };
  Section section = Section::none;
  bool saw_vertices = false;

  for (const auto& [line_no, raw] : detail::pajek_lines(content)) {
    std::string line = trim(raw);
    if (line.empty() || line.front() == '%') continue;
    if (line.front() == '*') {
      std::string head = to_upper_ascii(line);
      if (head.starts_with("*VERTICES")) {
        saw_vertices = true;
        section = Section::vertices;
        std::vector<std::string> parts = split(collapse_spaces(head), " ");
        if (parts.size() < 2) detail::pajek_fail(name, line_no, "missing vertex count");
        auto n = parse_ll(parts[1]);
        if (!n || *n < 0) detail::pajek_fail(name, line_no, "bad vertex count");
        net.n_vertices = static_cast<int>(*n);
        if (parts.size() >= 3) {
          auto nr = parse_ll(parts[2]);
          if (!nr || *nr < 0 || *nr > *n)
            detail::pajek_fail(name, line_no, "bad 2-mode row count");
          net.n_row_vertices = static_cast<int>(*nr);
        }
        net.vertex_labels.assign(net.n_vertices, "");
        for (int i = 0; i < net.n_vertices; ++i)
          net.vertex_labels[i] = std::to_string(i + 1);
      } else if (head.starts_with("*ARCS")) {
        section = Section::arcs;
      } else if (head.starts_with("*EDGES")) {
        section = Section::edges;
      } else {
        section = Section::skip;  // *Partition, *Matrix, ... not ours
      }
      continue;
    }
    if (!saw_vertices)
      detail::pajek_fail(name, line_no, "content before *Vertices");

    if (section == Section::vertices) {
      std::size_t i = 0;
      while (i < line.size() && !is_space(line[i])) ++i;
      auto idx = parse_ll(line.substr(0, i));
      if (!idx || *idx < 1 || *idx > net.n_vertices)
        detail::pajek_fail(name, line_no, "malformed vertex index");
      while (i < line.size() && is_space(line[i])) ++i;
      if (i >= line.size()) continue;  // bare index line
      std::string label;
      if (line[i] == '"') {
        ++i;
        bool closed = false;
        while (i < line.size()) {
          if (line[i] == '"') {
            if (i + 1 < line.size() && line[i + 1] == '"') {
              label.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          label.push_back(line[i++]);
        }
        if (!closed) detail::pajek_fail(name, line_no, "unterminated label quote");
      } else {
        while (i < line.size() && !is_space(line[i])) label.push_back(line[i++]);
        // anything after a bare label must be numeric (coordinates)
        std::vector<std::string> rest = split(collapse_spaces(line.substr(i)), " ");
        for (const std::string& t : rest) {
          if (t.empty()) continue;
          char* end = nullptr;
          std::strtod(t.c_str(), &end);
          if (end != t.c_str() + t.size())
            detail::pajek_fail(name, line_no, "unquoted label with spaces");
        }
      }
      net.vertex_labels[static_cast<std::size_t>(*idx - 1)] = label;
      continue;
    }
    if (section == Section::arcs || section == Section::edges) {
      std::vector<std::string> parts = split(collapse_spaces(line), " ");
      if (parts.size() < 2) detail::pajek_fail(name, line_no, "malformed link line");
      auto from = parse_ll(parts[0]);
      auto to = parse_ll(parts[1]);
      if (!from || !to || *from < 1 || *from > net.n_vertices || *to < 1 ||
          *to > net.n_vertices)
        detail::pajek_fail(name, line_no, "malformed link index");
      double weight = 1.0;
      if (parts.size() >= 3) {
        char* end = nullptr;
        weight = std::strtod(parts[2].c_str(), &end);
        if (end != parts[2].c_str() + parts[2].size())
          detail::pajek_fail(name, line_no, "malformed link weight");
      }
      PajekNetwork::Link link{static_cast<int>(*from), static_cast<int>(*to), weight};
      (section == Section::arcs ? net.arcs : net.edges).push_back(link);
      continue;
    }
    if (section == Section::skip) continue;
    detail::pajek_fail(name, line_no, "content outside any section");
  }
  if (!saw_vertices) throw ParseError(name + ": no *Vertices section");
  return net;
}

inline PajekNetwork read_pajek(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_pajek(buf.str(), path);
}

/// 1-mode network -> citation graph (vertex labels become document keys).
inline CitationGraph pajek_to_graph(const PajekNetwork& net) {
  if (net.n_row_vertices)
    throw DataError("expected a 1-mode network, found a 2-mode header");
  if (net.arcs.empty() && !net.edges.empty())
    throw DataError("expected a directed network (*Arcs), found only *Edges");
  CitationGraph g;
  g.keys = net.vertex_labels;
  g.keys.resize(static_cast<std::size_t>(net.n_vertices));
  std::set<std::pair<int, int>> arcs;
  for (const auto& link : net.arcs) arcs.emplace(link.from - 1, link.to - 1);
  g.arcs.assign(arcs.begin(), arcs.end());
  return g;
}

// ---------------------------------------------------------------------------
// Partition (.clu) files
// ---------------------------------------------------------------------------

inline void write_partition(const std::vector<int>& assignment,
                            const std::string& path, bool crlf = false) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write " + path);
  const char* eol = crlf ? "\r\n" : "\n";
  os << "*Vertices " << assignment.size() << eol;
  for (int value : assignment) os << value << eol;
}

inline std::vector<int> read_partition(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  std::vector<int> out;
  bool saw_header = false;
  for (const auto& [line_no, raw] : detail::pajek_lines(buf.str())) {
    std::string line = trim(raw);
    if (line.empty() || line.front() == '%') continue;
    if (line.front() == '*') {
      saw_header = true;
      continue;
    }
    auto v = parse_ll(line);
    if (!v) detail::pajek_fail(path, line_no, "malformed partition value");
    out.push_back(static_cast<int>(*v));
  }
  if (!saw_header) throw ParseError(path + ": no *Vertices header");
  return out;
}

}  // namespace citemesh
