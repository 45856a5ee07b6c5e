#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "citemesh/citegraph.hpp"
#include "citemesh/common.hpp"
#include "citemesh/corpus.hpp"
#include "citemesh/csv.hpp"
#include "citemesh/mainpath.hpp"
#include "citemesh/matrix.hpp"
#include "citemesh/medline.hpp"
#include "citemesh/pajek.hpp"
#include "citemesh/spss.hpp"
#include "citemesh/stats.hpp"
#include "citemesh/wos.hpp"

namespace citemesh {

struct RunConfig {
  std::string medline_path;  // empty = absent
  std::string wos_path;      // empty = absent
  std::string out_dir;
  MeshMode mesh_mode = MeshMode::descriptor_only;
  MatchMode match_mode = MatchMode::strict;
  int key_route_k = 1;
  std::string wos_field = "PMID";
  int chunk = 500;
  int dense_cap = 20000;
  bool crlf = false;
  int top_n = 10;
  bool emit_search_strings = true;
};

/// Holds an exclusive lock on an output directory for the lifetime of the
/// object so concurrent runs cannot clobber each other's fixed-name files.
class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir) : path_(dir / ".citemesh.lock") {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0)
      throw DataError("output directory is locked by another run (" +
                      path_.string() + " exists); remove the lock file if stale");
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::close(fd_);
      std::error_code ec;
      std::filesystem::remove(path_, ec);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

struct PipelineOutcome {
  Corpus corpus;
  std::vector<std::string> files_written;
  std::vector<std::string> notices;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write " + path.string());
  os << text;
}

inline void warn_overwrite(const std::filesystem::path& path) {
  if (std::filesystem::exists(path))
    std::cerr << "warning: overwriting " << path.string() << "\n";
}

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace detail

/// Full batch workflow: parse -> link -> matrices -> bounded citation
/// network -> statistics, writing the fixed-name file set into out_dir.
/// Output bytes are a pure function of inputs and config.
inline PipelineOutcome run_pipeline(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.medline_path.empty() && cfg.wos_path.empty())
    throw DataError("at least one input (MEDLINE or WoS) is required");
  if (cfg.out_dir.empty()) throw DataError("output directory is required");
  fs::create_directories(cfg.out_dir);
  const fs::path out{cfg.out_dir};
  DirLock lock(out);

  PipelineOutcome outcome;
  nlohmann::json report;
  report["tool"] = "citemesh";
  auto notice = [&](const std::string& msg) {
    outcome.notices.push_back(msg);
    std::cerr << "notice: " << msg << "\n";
  };
  auto emit = [&](const fs::path& p) {
    outcome.files_written.push_back(p.filename().string());
  };

  MedlineParseResult medline;
  WosParseResult wos;
  if (!cfg.medline_path.empty()) {
    medline = parse_medline(detail::read_file(cfg.medline_path));
    report["medline"] = {{"path", cfg.medline_path},
                         {"records", medline.records.size()},
                         {"encoding", medline.report.encoding},
                         {"errors", medline.report.errors},
                         {"warnings", medline.report.warnings}};
    for (const std::string& e : medline.report.errors)
      std::cerr << "medline: " << e << "\n";
  }
  if (!cfg.wos_path.empty()) {
    wos = parse_wos(detail::read_file(cfg.wos_path));
    report["wos"] = {{"path", cfg.wos_path},
                     {"records", wos.records.size()},
                     {"encoding", wos.report.encoding},
                     {"errors", wos.report.errors},
                     {"warnings", wos.report.warnings}};
    for (const std::string& e : wos.report.errors)
      std::cerr << "wos: " << e << "\n";
  }

  Corpus corpus = link_by_pmid(medline.records, wos.records, cfg.mesh_mode);
  attach_times_cited(corpus, wos.records);
  report["link"] = {{"documents", corpus.documents.size()},
                    {"medline_n", corpus.medline_n},
                    {"wos_n", corpus.wos_n},
                    {"linked_n", corpus.linked_n},
                    {"warnings", corpus.warnings}};

  // search strings
  if (cfg.emit_search_strings) {
    if (!medline.records.empty()) {
      std::vector<std::string> pmids;
      for (const MedlineRecord& r : medline.records) pmids.push_back(r.pmid);
      const auto queries = emit_wos_search_string(pmids, cfg.chunk, cfg.wos_field);
      std::string text;
      for (const std::string& q : queries) text += q + "\n";
      const fs::path p = out / "string.wos";
      detail::warn_overwrite(p);
      detail::write_text(p, text);
      emit(p);
    }
    bool any_pm = false;
    for (const WosRecord& r : wos.records)
      if (r.pmid && !r.pmid->empty()) any_pm = true;
    if (any_pm) {
      const fs::path p = out / "string.pubmed";
      detail::warn_overwrite(p);
      detail::write_text(p, emit_pubmed_search_string(wos.records) + "\n");
      emit(p);
    } else if (!wos.records.empty()) {
      notice("no PM tags in the WoS input; string.pubmed skipped");
    }
  }

  // corpus summary
  {
    std::vector<std::vector<std::string>> rows;
    for (const Document& d : corpus.documents)
      rows.push_back({d.pmid, d.linked ? "1" : "0", std::to_string(d.times_cited),
                      std::to_string(document_mesh_terms(d, corpus.mesh_mode).size()),
                      std::to_string(d.cited_refs.size())});
    const fs::path p = out / "corpus_summary.csv";
    detail::warn_overwrite(p);
    write_csv(p.string(), {"pmid", "linked", "times_cited", "n_mesh", "n_refs"}, rows);
    emit(p);
  }

  const bool has_mesh = detail::corpus_has_mesh(corpus);
  const bool has_refs = detail::corpus_has_refs(corpus);

  // reference matrix: documents x MeSH when MEDLINE data is present,
  // documents x cited references otherwise
  if (has_mesh || has_refs) {
    SparseLabeledMatrix mtrx = has_mesh ? build_doc_mesh(corpus) : build_doc_cr(corpus);
    const fs::path p = out / "mtrx.net";
    detail::warn_overwrite(p);
    write_pajek(to_pajek(mtrx), p.string(), cfg.crlf);
    emit(p);
    if (mtrx.cols() <= cfg.dense_cap) {
      detail::warn_overwrite(out / "mtrx.txt");
      detail::warn_overwrite(out / "mtrx.sps");
      write_spss_matrix(mtrx, (out / "mtrx").string(), cfg.dense_cap);
      emit(out / "mtrx.txt");
      emit(out / "mtrx.sps");
    } else {
      notice("mtrx has " + std::to_string(mtrx.cols()) +
             " columns, over the dense cap; mtrx.txt/mtrx.sps skipped");
    }
  }

  if (has_mesh && has_refs) {
    {
      const fs::path p = out / "cr_mh.net";
      detail::warn_overwrite(p);
      write_pajek(to_pajek(build_cr_mesh(corpus)), p.string(), cfg.crlf);
      emit(p);
    }
    {
      SparseLabeledMatrix jcr = build_jcr_mesh(corpus);
      if (jcr.rows() > 0) {
        const fs::path p = out / "jcr_mh.net";
        detail::warn_overwrite(p);
        write_pajek(to_pajek(jcr), p.string(), cfg.crlf);
        emit(p);
      } else {
        notice("no referenced journals found; jcr_mh.net skipped");
      }
    }
    {
      const fs::path p = out / "jcr_mh_a.net";
      detail::warn_overwrite(p);
      write_pajek(to_pajek(build_doc_attributes(corpus)), p.string(), cfg.crlf);
      emit(p);
    }
  } else if (has_mesh) {
    notice("no cited references in the input; cr_mh/jcr_mh/jcr_mh_a skipped");
  } else if (has_refs) {
    notice("no MeSH headings in the input; cr_mh/jcr_mh/jcr_mh_a skipped");
  }

  // bounded citation network
  if (has_refs) {
    LocalGraphResult lcs = build_local_citation_graph(corpus, cfg.match_mode);
    const fs::path p = out / "lcs.net";
    detail::warn_overwrite(p);
    write_pajek(to_pajek(lcs.graph), p.string(), cfg.crlf);
    emit(p);
    {
      std::vector<std::vector<std::string>> rows;
      for (const auto& [citing, cited, raw] : lcs.report.matches)
        rows.push_back({citing, cited, raw});
      const fs::path mp = out / "lcs_matches.csv";
      detail::warn_overwrite(mp);
      write_csv(mp.string(), {"citing", "cited", "cited_reference"}, rows);
      emit(mp);
    }
    report["lcs"] = {{"keys_built", lcs.report.keys_built},
                     {"key_failures", lcs.report.key_failures},
                     {"refs_scanned", lcs.report.refs_scanned},
                     {"arcs_found", lcs.report.arcs_found},
                     {"key_errors", lcs.report.key_errors}};
  } else {
    notice("no citation data in the input; lcs.net skipped");
    report["lcs"] = {{"skipped", "no citation data"}};
  }

  // statistics
  {
    const CountsReport counts = corpus_counts(corpus);
    write_csv((out / "counts.csv").string(), {"metric", "value"},
              {{"n_docs_medline", std::to_string(counts.n_docs_medline)},
               {"n_docs_wos", std::to_string(counts.n_docs_wos)},
               {"mesh_attributions", std::to_string(counts.mesh_attributions)},
               {"unique_mesh", std::to_string(counts.unique_mesh)},
               {"cited_ref_instances", std::to_string(counts.cited_ref_instances)},
               {"unique_cited_refs", std::to_string(counts.unique_cited_refs)},
               {"unique_referenced_journals",
                std::to_string(counts.unique_referenced_journals)}});
    emit(out / "counts.csv");

    if (has_refs) {
      std::vector<std::vector<std::string>> rows;
      int rank = 0;
      for (const auto& [label, count] :
           top_frequencies(corpus, FrequencyDimension::referenced_journal, cfg.top_n))
        rows.push_back({std::to_string(++rank), label, std::to_string(count)});
      write_csv((out / "top_journals.csv").string(), {"rank", "journal", "references"},
                rows);
      emit(out / "top_journals.csv");
    }
    if (has_mesh) {
      std::vector<std::vector<std::string>> rows;
      int rank = 0;
      for (const auto& [label, count] :
           top_frequencies(corpus, FrequencyDimension::mesh, cfg.top_n))
        rows.push_back({std::to_string(++rank), label, std::to_string(count)});
      write_csv((out / "top_mesh.csv").string(), {"rank", "mesh", "documents"}, rows);
      emit(out / "top_mesh.csv");
    }
    {
      bool any_year = false;
      for (const Document& d : corpus.documents) any_year |= d.pub_year.has_value();
      if (any_year) {
        const YearlySeries series = yearly_series(corpus);
        std::vector<std::vector<std::string>> rows;
        for (const YearlyPoint& pt : series.points)
          rows.push_back({std::to_string(pt.year), std::to_string(pt.n_papers),
                          detail::fmt_double(pt.c_per_p)});
        write_csv((out / "yearly.csv").string(),
                  {"year", "papers", "citations_per_paper"}, rows);
        emit(out / "yearly.csv");
        report["yearly"] = {{"years", series.points.size()},
                            {"documents_without_year", series.n_without_year}};
      }
    }
    {
      std::vector<std::vector<std::string>> rows;
      if (has_refs) {
        std::vector<double> journal_counts;
        for (const auto& [label, count] : top_frequencies(
                 corpus, FrequencyDimension::referenced_journal, 1 << 30)) {
          (void)label;
          journal_counts.push_back(static_cast<double>(count));
        }
        if (!journal_counts.empty())
          rows.push_back({"journal_references", detail::fmt_double(gini(journal_counts))});
      }
      if (has_mesh) {
        std::vector<double> mesh_counts;
        for (const auto& [label, count] :
             top_frequencies(corpus, FrequencyDimension::mesh, 1 << 30)) {
          (void)label;
          mesh_counts.push_back(static_cast<double>(count));
        }
        if (!mesh_counts.empty())
          rows.push_back({"mesh_documents", detail::fmt_double(gini(mesh_counts))});
      }
      if (!rows.empty()) {
        write_csv((out / "gini.csv").string(), {"distribution", "gini"}, rows);
        emit(out / "gini.csv");
      }
    }
    if (has_mesh) {
      std::vector<std::pair<std::string, long>> sums;
      for (const auto& [term, sum] : citations_by_mesh(corpus)) sums.emplace_back(term, sum);
      std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
      });
      std::vector<std::vector<std::string>> rows;
      for (const auto& [term, sum] : sums)
        rows.push_back({term, std::to_string(sum)});
      write_csv((out / "mesh_citations.csv").string(), {"mesh", "times_cited_sum"},
                rows);
      emit(out / "mesh_citations.csv");
    }
  }

  report["notices"] = outcome.notices;
  report["files"] = outcome.files_written;
  detail::write_text(out / "run_report.json", report.dump(2) + "\n");
  outcome.files_written.push_back("run_report.json");
  outcome.corpus = std::move(corpus);
  return outcome;
}

// ---------------------------------------------------------------------------
// Main-path command
// ---------------------------------------------------------------------------

struct MainPathRunConfig {
  std::string net_path;
  std::string out_dir;
  MainPathVariant variant = MainPathVariant::global_standard;
  int k = 1;
  bool crlf = false;
};

struct MainPathOutcome {
  PreparedGraph prepared;
  SpcWeights weights;
  MainPathResult result;
  std::vector<std::string> files_written;
};

/// Acyclic prep + SPC weighting + main-path extraction over a 1-mode Pajek
/// network, writing the prep report, the weighted network, the path arc
/// list, and an on-path membership partition.
inline MainPathOutcome run_mainpath(const MainPathRunConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.out_dir.empty()) throw DataError("output directory is required");
  fs::create_directories(cfg.out_dir);
  const fs::path out{cfg.out_dir};
  DirLock lock(out);

  MainPathOutcome outcome;
  const CitationGraph input = pajek_to_graph(read_pajek(cfg.net_path));
  outcome.prepared = prepare_acyclic(input);
  outcome.weights = spc(outcome.prepared.graph);
  outcome.result = main_path(outcome.prepared.graph, outcome.weights, cfg.variant, cfg.k);

  auto emit = [&](const fs::path& p) {
    outcome.files_written.push_back(p.filename().string());
  };

  {
    const fs::path p = out / "spc.net";
    detail::warn_overwrite(p);
    write_pajek_weighted(outcome.prepared.graph, outcome.weights.arc_weights,
                         p.string(), cfg.crlf);
    emit(p);
  }
  {
    std::vector<std::vector<std::string>> rows;
    const auto& g = outcome.prepared.graph;
    std::map<std::pair<int, int>, std::size_t> arc_index;
    for (std::size_t a = 0; a < g.arcs.size(); ++a) arc_index[g.arcs[a]] = a;
    for (const auto& arc : outcome.result.arcs)
      rows.push_back({g.keys[arc.first], g.keys[arc.second],
                      outcome.weights.arc_weights[arc_index.at(arc)].to_string()});
    const fs::path p = out / "main_path.csv";
    detail::warn_overwrite(p);
    write_csv(p.string(), {"citing", "cited", "spc_weight"}, rows);
    emit(p);
  }
  {
    std::vector<int> membership(outcome.prepared.graph.keys.size(), 0);
    for (int v : outcome.result.vertices) membership[static_cast<std::size_t>(v)] = 1;
    const fs::path p = out / "main_path.clu";
    detail::warn_overwrite(p);
    write_partition(membership, p.string(), cfg.crlf);
    emit(p);
  }
  {
    nlohmann::json report;
    report["input"] = cfg.net_path;
    report["variant"] = cfg.variant == MainPathVariant::local ? "local"
                        : cfg.variant == MainPathVariant::global_standard
                            ? "global_standard"
                            : "key_route";
    report["k"] = cfg.k;
    report["prep"] = {
        {"n_weak_components", outcome.prepared.report.n_weak_components},
        {"largest_component_size", outcome.prepared.report.largest_component_size},
        {"n_strong_components_shrunk",
         outcome.prepared.report.n_strong_components_shrunk},
        {"n_loops_removed", outcome.prepared.report.n_loops_removed}};
    report["path"] = {{"vertices", outcome.result.vertices.size()},
                      {"arcs", outcome.result.arcs.size()}};
    if (cfg.variant == MainPathVariant::global_standard)
      report["path"]["total_weight"] = outcome.result.total_weight.to_string();
    const fs::path p = out / "mainpath_report.json";
    detail::write_text(p, report.dump(2) + "\n");
    emit(p);
  }
  return outcome;
}

}  // namespace citemesh
