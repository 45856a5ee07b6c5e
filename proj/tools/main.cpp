// citemesh command-line tool: batch conversion of MEDLINE and Web-of-Science
// exports into linked corpora, co-occurrence matrices, bounded citation
// networks, and SPC main paths.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citemesh/citemesh.hpp"

namespace {

using namespace citemesh;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitData = 3;

std::string read_file_or_die(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

void print_parse_report(const ParseReport& report, const char* source) {
  std::cerr << source << ": encoding " << report.encoding << "\n";
  for (const std::string& e : report.errors) std::cerr << source << ": error: " << e << "\n";
  for (const std::string& w : report.warnings)
    std::cerr << source << ": warning: " << w << "\n";
}

MeshMode mesh_mode_of(bool keep_qualifiers) {
  return keep_qualifiers ? MeshMode::descriptor_qualifier : MeshMode::descriptor_only;
}

Corpus load_corpus(const std::string& medline_path, const std::string& wos_path,
                   MeshMode mode) {
  MedlineParseResult medline;
  WosParseResult wos;
  if (!medline_path.empty()) {
    medline = parse_medline(read_file_or_die(medline_path));
    print_parse_report(medline.report, "medline");
  }
  if (!wos_path.empty()) {
    wos = parse_wos(read_file_or_die(wos_path));
    print_parse_report(wos.report, "wos");
  }
  Corpus corpus = link_by_pmid(medline.records, wos.records, mode);
  attach_times_cited(corpus, wos.records);
  for (const std::string& w : corpus.warnings) std::cerr << "link: warning: " << w << "\n";
  return corpus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bibliographic corpus, matrix, and main-path toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file");

  std::string medline_path, wos_path, input_path, net_path, out_dir = ".";
  bool keep_qualifiers = false;
  bool relaxed = false;
  bool crlf = false;
  int chunk = 500, dense_cap = 20000, top_n = 10, key_k = 1;
  std::string wos_field = "PMID";
  std::string variant_name = "global";
  std::string which = "all";

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  };
  auto add_inputs = [&](CLI::App* cmd, bool medline_required, bool wos_required) {
    auto* m = cmd->add_option("--medline", medline_path, "MEDLINE tagged export");
    auto* w = cmd->add_option("--wos", wos_path, "WoS plain-text export");
    if (medline_required) m->required();
    if (wos_required) w->required();
  };
  auto add_mesh_flag = [&](CLI::App* cmd) {
    cmd->add_flag("--mesh-qualifiers", keep_qualifiers,
                  "Keep descriptor/qualifier pairs as distinct MeSH terms");
  };
  auto add_match_flag = [&](CLI::App* cmd) {
    cmd->add_flag("--relaxed", relaxed,
                  "Match citation keys on author+year+journal only "
                  "(prone to false positives for prolific authors)");
  };

  auto* cmd_parse_medline = app.add_subcommand("parse-medline", "Parse a MEDLINE export");
  cmd_parse_medline->add_option("input", input_path, "Export file")->required();

  auto* cmd_parse_wos = app.add_subcommand("parse-wos", "Parse a WoS export");
  cmd_parse_wos->add_option("input", input_path, "Export file")->required();

  auto* cmd_link = app.add_subcommand(
      "link", "Link both exports by PMID; write the corpus summary and search strings");
  add_inputs(cmd_link, false, false);
  add_out(cmd_link);
  add_mesh_flag(cmd_link);
  cmd_link->add_option("--chunk", chunk, "PMIDs per WoS query chunk")
      ->capture_default_str();
  cmd_link->add_option("--wos-field", wos_field, "Field tag for the WoS search string")
      ->capture_default_str();

  auto* cmd_matrices =
      app.add_subcommand("matrices", "Build 2-mode matrices and write Pajek files");
  add_inputs(cmd_matrices, false, false);
  add_out(cmd_matrices);
  add_mesh_flag(cmd_matrices);
  cmd_matrices
      ->add_option("--which", which,
                   "all|doc-mesh|doc-cr|cr-mesh|jcr-mesh|jcr-mesh-a")
      ->capture_default_str();
  cmd_matrices->add_option("--dense-cap", dense_cap, "Max columns for dense export")
      ->capture_default_str();
  cmd_matrices->add_flag("--crlf", crlf, "CRLF line endings");
  bool project = false;
  std::string sim_measure, sim_axis = "columns";
  cmd_matrices->add_flag("--project", project,
                         "Also write the 2-mode to 1-mode column projection "
                         "(single --which only)");
  cmd_matrices->add_option("--similarity", sim_measure,
                           "cosine|jaccard: also write a similarity matrix "
                           "(single --which only)");
  cmd_matrices->add_option("--axis", sim_axis, "rows|columns for --similarity")
      ->capture_default_str();

  auto* cmd_lcs =
      app.add_subcommand("lcs", "Build the bounded citation network (lcs.net)");
  add_inputs(cmd_lcs, false, true);
  add_out(cmd_lcs);
  add_match_flag(cmd_lcs);
  cmd_lcs->add_flag("--crlf", crlf, "CRLF line endings");

  auto* cmd_mainpath = app.add_subcommand(
      "mainpath", "Acyclic prep + SPC weighting + main path over a Pajek network");
  cmd_mainpath->add_option("net", net_path, "1-mode Pajek .net file")->required();
  add_out(cmd_mainpath);
  cmd_mainpath
      ->add_option("--variant", variant_name, "local|global|key-route")
      ->capture_default_str();
  cmd_mainpath->add_option("-k,--key-route-k", key_k, "Arc count for key-route")
      ->capture_default_str();
  cmd_mainpath->add_flag("--crlf", crlf, "CRLF line endings");

  auto* cmd_stats = app.add_subcommand("stats", "Descriptive statistics CSVs");
  add_inputs(cmd_stats, false, false);
  add_out(cmd_stats);
  add_mesh_flag(cmd_stats);
  cmd_stats->add_option("--top-n", top_n, "Rows in the top-frequency tables")
      ->capture_default_str();

  auto* cmd_pipeline = app.add_subcommand(
      "pipeline", "Full workflow: parse, link, matrices, citation network, stats");
  add_inputs(cmd_pipeline, false, false);
  add_out(cmd_pipeline);
  add_mesh_flag(cmd_pipeline);
  add_match_flag(cmd_pipeline);
  cmd_pipeline->add_option("--chunk", chunk, "PMIDs per WoS query chunk")
      ->capture_default_str();
  cmd_pipeline->add_option("--wos-field", wos_field, "Field tag for the WoS search string")
      ->capture_default_str();
  cmd_pipeline->add_option("--dense-cap", dense_cap, "Max columns for dense export")
      ->capture_default_str();
  cmd_pipeline->add_option("--top-n", top_n, "Rows in the top-frequency tables")
      ->capture_default_str();
  cmd_pipeline->add_flag("--crlf", crlf, "CRLF line endings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const MeshMode mesh_mode = mesh_mode_of(keep_qualifiers);
    const MatchMode match_mode = relaxed ? MatchMode::relaxed : MatchMode::strict;

    if (cmd_parse_medline->parsed()) {
      MedlineParseResult result = parse_medline(read_file_or_die(input_path));
      print_parse_report(result.report, "medline");
      std::cout << result.records.size() << " records\n";
      return kExitOk;
    }
    if (cmd_parse_wos->parsed()) {
      WosParseResult result = parse_wos(read_file_or_die(input_path));
      print_parse_report(result.report, "wos");
      long refs = 0;
      for (const WosRecord& r : result.records) refs += static_cast<long>(r.cited_refs_raw.size());
      std::cout << result.records.size() << " records, " << refs << " cited references\n";
      return kExitOk;
    }
    if (cmd_link->parsed() || cmd_stats->parsed() || cmd_matrices->parsed() ||
        cmd_lcs->parsed() || cmd_pipeline->parsed()) {
      if (medline_path.empty() && wos_path.empty()) {
        std::cerr << "error: at least one of --medline/--wos is required\n";
        return kExitUsage;
      }
    }
    if (cmd_pipeline->parsed()) {
      RunConfig cfg;
      cfg.medline_path = medline_path;
      cfg.wos_path = wos_path;
      cfg.out_dir = out_dir;
      cfg.mesh_mode = mesh_mode;
      cfg.match_mode = match_mode;
      cfg.key_route_k = key_k;
      cfg.wos_field = wos_field;
      cfg.chunk = chunk;
      cfg.dense_cap = dense_cap;
      cfg.crlf = crlf;
      cfg.top_n = top_n;
      PipelineOutcome outcome = run_pipeline(cfg);
      for (const std::string& f : outcome.files_written) std::cout << f << "\n";
      return kExitOk;
    }
    if (cmd_mainpath->parsed()) {
      MainPathRunConfig cfg;
      cfg.net_path = net_path;
      cfg.out_dir = out_dir;
      cfg.k = key_k;
      cfg.crlf = crlf;
      if (variant_name == "local")
        cfg.variant = MainPathVariant::local;
      else if (variant_name == "global" || variant_name == "global-standard")
        cfg.variant = MainPathVariant::global_standard;
      else if (variant_name == "key-route")
        cfg.variant = MainPathVariant::key_route;
      else
        throw DataError("unknown variant '" + variant_name + "'");
      MainPathOutcome outcome = run_mainpath(cfg);
      for (const std::string& f : outcome.files_written) std::cout << f << "\n";
      return kExitOk;
    }

    // remaining commands share the linked corpus
    namespace fs = std::filesystem;
    Corpus corpus = load_corpus(medline_path, wos_path, mesh_mode);
    fs::create_directories(out_dir);
    const fs::path out{out_dir};

    if (cmd_link->parsed()) {
      std::vector<std::vector<std::string>> rows;
      for (const Document& d : corpus.documents)
        rows.push_back({d.pmid, d.linked ? "1" : "0", std::to_string(d.times_cited),
                        std::to_string(document_mesh_terms(d, corpus.mesh_mode).size()),
                        std::to_string(d.cited_refs.size())});
      write_csv((out / "corpus_summary.csv").string(),
                {"pmid", "linked", "times_cited", "n_mesh", "n_refs"}, rows);
      if (!medline_path.empty()) {
        MedlineParseResult medline = parse_medline(read_file_or_die(medline_path));
        std::vector<std::string> pmids;
        for (const MedlineRecord& r : medline.records) pmids.push_back(r.pmid);
        std::string text;
        for (const std::string& q : emit_wos_search_string(pmids, chunk, wos_field))
          text += q + "\n";
        std::ofstream(out / "string.wos", std::ios::binary) << text;
      }
      if (!wos_path.empty()) {
        WosParseResult wos = parse_wos(read_file_or_die(wos_path));
        bool any_pm = false;
        for (const WosRecord& r : wos.records) any_pm |= r.pmid.has_value();
        if (any_pm)
          std::ofstream(out / "string.pubmed", std::ios::binary)
              << emit_pubmed_search_string(wos.records) + "\n";
      }
      std::cout << corpus.documents.size() << " documents, " << corpus.linked_n
                << " linked\n";
      return kExitOk;
    }
    if (cmd_matrices->parsed()) {
      auto write_one = [&](const std::string& name, const SparseLabeledMatrix& m) {
        write_pajek(to_pajek(m), (out / (name + ".net")).string(), crlf);
        std::cout << name << ".net\n";
      };
      const bool all = which == "all";
      if (all && (project || !sim_measure.empty())) {
        std::cerr << "error: --project/--similarity need a single --which\n";
        return kExitUsage;
      }
      SparseLabeledMatrix last;
      std::string last_name;
      auto build = [&](const std::string& name, SparseLabeledMatrix m) {
        write_one(name, m);
        last_name = name;
        last = std::move(m);
      };
      if (all || which == "doc-mesh") {
        build("mtrx", build_doc_mesh(corpus));
        if (last.cols() <= dense_cap) {
          write_spss_matrix(last, (out / "mtrx").string(), dense_cap);
          std::cout << "mtrx.txt\nmtrx.sps\n";
        }
      }
      if (all || which == "doc-cr") build("doc_cr", build_doc_cr(corpus));
      if (all || which == "cr-mesh") build("cr_mh", build_cr_mesh(corpus));
      if (all || which == "jcr-mesh") build("jcr_mh", build_jcr_mesh(corpus));
      if (all || which == "jcr-mesh-a") build("jcr_mh_a", build_doc_attributes(corpus));
      if (last_name.empty()) {
        std::cerr << "error: unknown --which '" << which << "'\n";
        return kExitUsage;
      }
      if (project) write_one(last_name + "_proj", project_columns(last));
      if (!sim_measure.empty()) {
        const SimilarityMeasure measure = sim_measure == "cosine"
                                              ? SimilarityMeasure::cosine
                                              : SimilarityMeasure::jaccard;
        if (sim_measure != "cosine" && sim_measure != "jaccard") {
          std::cerr << "error: unknown --similarity '" << sim_measure << "'\n";
          return kExitUsage;
        }
        const Axis axis = sim_axis == "rows" ? Axis::rows : Axis::columns;
        std::vector<std::string> warnings;
        SparseLabeledMatrix sim = similarity(last, measure, axis, &warnings);
        for (const auto& w : warnings) std::cerr << "similarity: warning: " << w << "\n";
        write_one(last_name + "_sim", sim);
      }
      return kExitOk;
    }
    if (cmd_lcs->parsed()) {
      LocalGraphResult lcs = build_local_citation_graph(corpus, match_mode);
      write_pajek(to_pajek(lcs.graph), (out / "lcs.net").string(), crlf);
      std::vector<std::vector<std::string>> rows;
      for (const auto& [citing, cited, raw] : lcs.report.matches)
        rows.push_back({citing, cited, raw});
      write_csv((out / "lcs_matches.csv").string(), {"citing", "cited", "cited_reference"},
                rows);
      std::cerr << "lcs: " << lcs.report.keys_built << " keys built, "
                << lcs.report.key_failures << " failures, " << lcs.report.refs_scanned
                << " refs scanned, " << lcs.report.arcs_found << " arcs\n";
      std::cout << "lcs.net\nlcs_matches.csv\n";
      return kExitOk;
    }
    if (cmd_stats->parsed()) {
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
      std::cout << "counts.csv\n";
      return kExitOk;
    }
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
