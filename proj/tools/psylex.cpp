// psylex command-line tool. Each command is a thin layer over the library;
// `psylex <command> --help` lists its flags, docs/formats.md the config keys.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "psylex/corpus/load.hpp"
#include "psylex/corpus/matrix_io.hpp"
#include "psylex/error.hpp"
#include "psylex/lexicon/formats.hpp"
#include "psylex/report.hpp"
#include "psylex/service/config.hpp"
#include "psylex/service/http_api.hpp"
#include "psylex/service/session_store.hpp"
#include "psylex/stats/agreement.hpp"
#include "psylex/stats/correlation.hpp"
#include "psylex/stats/reliability.hpp"
#include "psylex/text/matcher.hpp"
#include "psylex/text/scoring.hpp"
#include "psylex/translate/annotation.hpp"
#include "psylex/translate/http_provider.hpp"
#include "psylex/translate/merge.hpp"
#include "psylex/translate/provider.hpp"
#include "psylex/translate/records.hpp"
#include "psylex/translate/sampling.hpp"

namespace fs = std::filesystem;
using namespace psylex;
using service::Config;

namespace {

enum Exit { ok = 0, failure = 1, config_error = 2, input_error = 3, partial = 4 };

std::string language_name(const std::string& tag) {
  static const std::map<std::string, std::string> names{
      {"en", "English"}, {"nl", "Dutch"}, {"de", "German"}, {"it", "Italian"}};
  const auto it = names.find(tag);
  return it == names.end() ? tag : it->second;
}

// Collects missing-input problems so a command reports all of them at once.
struct Requirements {
  std::vector<std::string> problems;

  void need(bool present, std::string what) {
    if (!present) problems.push_back(std::move(what));
  }
  void check() const {
    if (!problems.empty()) throw ConfigError(problems);
  }
};

Dictionary load_dictionary(const service::DictionarySpec& s) {
  DictionaryOptions o;
  o.language = s.language;
  o.stemmed = s.stemmed;
  Dictionary d = parse_dictionary(read_file(s.path), s.format, o);
  if (d.duplicates_collapsed())
    std::cerr << "warning: " << s.path.string() << ": " << d.duplicates_collapsed()
              << " duplicate entries collapsed\n";
  if (s.stem && !d.stemmed()) d = stem_dictionary(d, s.language);
  return d;
}

std::vector<Corpus> load_corpora(const Config& c) {
  std::vector<Corpus> out;
  for (const auto& s : c.corpora) {
    CorpusOptions o;
    o.text_field = s.text_field;
    o.id_field = s.id_field;
    o.id = s.id;
    o.language = c.language;
    o.provenance = s.path.string();
    out.push_back(load_corpus(s.path, s.format, o));
    if (out.back().dropped)
      std::cerr << "note: corpus '" << s.id << "': " << out.back().dropped << " document(s) without tokens skipped\n";
  }
  return out;
}

TranslationSet load_translations(const fs::path& path, const Config& c) {
  return parse_translations(read_file(path), c.source_language, c.language);
}

// A batch file is either an annotation sheet or a translations CSV.
AnnotationSheet load_batch(const fs::path& path, std::string batch_id) {
  const auto text = read_file(path);
  AnnotationSheet sheet;
  const auto first_line = text.substr(0, text.find('\n'));
  if (first_line.rfind("id,category,source,candidate,provider", 0) == 0)
    sheet = sheet_from_translations(parse_translations(text));
  else
    sheet = import_annotation_sheet(text, "").sheet;
  sheet.batch_id = batch_id.empty() ? path.stem().string() : std::move(batch_id);
  return sheet;
}

TranslationSet as_translation_set(const AnnotationSheet& sheet) {
  TranslationSet ts;
  for (const auto& r : sheet.rows) {
    TranslationRecord rec;
    rec.id = r.id;
    rec.category = r.category;
    rec.source = r.source;
    rec.candidate = r.candidate;
    ts.records.push_back(std::move(rec));
  }
  return ts;
}

void write_output(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file(path, content);
  std::cerr << "wrote " << path.string() << "\n";
}

std::string lang_suffix(const Config& c) { return c.language.empty() ? "" : "_" + c.language; }

// ---------------------------------------------------------------------------
// translate

struct TranslateArgs {
  fs::path out;
  std::string target;
  std::size_t parallelism = 0;
  bool no_cache = false;
};

int cmd_translate(Config c, const TranslateArgs& a) {
  if (!a.target.empty()) c.language = a.target;
  Requirements req;
  req.need(c.source_dictionary.has_value(), "source_dictionary: required for translate");
  req.need(!c.language.empty(), "language: target language required (config key or --target)");
  req.check();

  std::unique_ptr<TranslationProvider> provider;
  if (c.provider.kind == "http") {
    HttpProviderConfig hc;
    if (!c.provider.endpoint.empty()) hc.endpoint = c.provider.endpoint;
    hc.api_key_env = c.provider.api_key_env;
    if (!c.provider.id.empty()) hc.provider_id = c.provider.id;
    hc.timeout_seconds = c.provider.timeout_seconds;
    provider = std::make_unique<HttpProvider>(hc);
  } else {
    provider = std::make_unique<OfflineProvider>(read_file(c.provider.fixture),
                                                 c.provider.id.empty() ? "offline" : c.provider.id);
  }

  const Dictionary source = load_dictionary(*c.source_dictionary);
  std::optional<TranslationCache> cache;
  if (!a.no_cache && !c.provider.cache.empty()) cache.emplace(c.provider.cache);

  TranslateOptions o;
  o.source_language = c.source_language;
  o.target_language = c.language;
  o.batch_size = c.provider.batch_size;
  o.max_attempts = c.provider.max_attempts;
  o.initial_backoff = std::chrono::milliseconds(c.provider.initial_backoff_ms);
  o.parallelism = a.parallelism ? a.parallelism : c.provider.parallelism;
  o.category_hints = c.provider.category_hints;
  o.cache = cache ? &*cache : nullptr;

  const fs::path out = !a.out.empty()           ? a.out
                       : !c.translations.empty() ? c.translations
                                                 : c.output_dir / ("translations" + lang_suffix(c) + ".csv");
  try {
    const auto ts = translate_terms(source, *provider, o);
    write_output(out, serialize_translations(ts));
    std::cout << "translated " << ts.size() << " terms into " << c.language << "\n";
  } catch (const PartialTranslationError& e) {
    write_output(out, serialize_translations(e.partial()));
    throw;
  }
  return ok;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  fs::path translations;
  fs::path out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> per_category;
  std::string batch_id;
};

int cmd_sample(const Config& c, const SampleArgs& a) {
  const fs::path in = a.translations.empty() ? c.translations : a.translations;
  Requirements req;
  req.need(!in.empty(), "translations: required (config key or --translations)");
  req.check();
  const auto ts = load_translations(in, c);
  const auto batch_id = a.batch_id.empty() ? "sample" + lang_suffix(c) : a.batch_id;
  const auto sheet = sample_annotation_batch(ts, a.per_category.value_or(c.per_category), a.seed.value_or(c.seed),
                                             batch_id);
  const fs::path out = a.out.empty() ? c.output_dir / (batch_id + ".csv") : a.out;
  write_output(out, export_annotation_sheet(sheet));
  std::set<std::string> strata;
  for (const auto& r : sheet.rows) strata.insert(category_key(r.category));
  std::cout << "sampled " << sheet.size() << " records from " << strata.size() << " categories\n";
  return ok;
}

// ---------------------------------------------------------------------------
// annotation service and file round-trip

struct AnnotateArgs {
  std::vector<fs::path> batches;
  std::string batch_id;
  fs::path log;
  std::string annotator;
  fs::path sheet;
  fs::path out;
  service::ServeOptions serve;
};

fs::path log_path(const Config& c, const AnnotateArgs& a) {
  return a.log.empty() ? c.output_dir / "decisions.jsonl" : a.log;
}

httplib::Server* g_server = nullptr;

int cmd_annotate_serve(const Config& c, const AnnotateArgs& a) {
  Requirements req;
  req.need(!a.batches.empty(), "--batch: at least one batch file is required");
  req.need(a.batch_id.empty() || a.batches.size() == 1, "--batch-id: only valid with a single --batch");
  req.check();
  service::check_bind(a.serve);

  const auto log = log_path(c, a);
  if (log.has_parent_path()) fs::create_directories(log.parent_path());
  SessionStore store(log);
  if (store.skipped_lines()) std::cerr << "note: ignored a torn final line in " << log.string() << "\n";
  for (const auto& b : a.batches) store.add_batch(load_batch(b, a.batch_id));

  httplib::Server server;
  service::configure_server(server, store, a.serve);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  int port = a.serve.port;
  if (port == 0) {
    port = server.bind_to_any_port(a.serve.host);
  } else if (!server.bind_to_port(a.serve.host, port)) {
    throw Error("cannot listen on " + a.serve.host + ":" + std::to_string(port));
  }
  if (port < 0) throw Error("cannot listen on " + a.serve.host);
  std::cout << "serving " << a.batches.size() << " batch(es) on http://" << a.serve.host << ":" << port
            << " (decision log " << log.string() << ")" << std::endl;
  server.listen_after_bind();
  g_server = nullptr;
  return ok;
}

int cmd_annotate_export(const Config& c, const AnnotateArgs& a) {
  Requirements req;
  req.need(a.batches.size() == 1, "--batch: exactly one batch file is required");
  req.need(!a.annotator.empty(), "--annotator: required");
  req.check();
  SessionStore store(log_path(c, a));
  const auto sheet = load_batch(a.batches.front(), a.batch_id);
  store.add_batch(sheet);
  const auto csv = store.export_sheet(sheet.batch_id, a.annotator);
  if (a.out.empty())
    std::cout << csv;
  else
    write_output(a.out, csv);
  return ok;
}

// Validates the whole sheet before appending anything to the log.
int cmd_annotate_import(const Config& c, const AnnotateArgs& a) {
  Requirements req;
  req.need(a.batches.size() == 1, "--batch: exactly one batch file is required");
  req.need(!a.annotator.empty(), "--annotator: required");
  req.need(!a.sheet.empty(), "--sheet: the filled-in sheet is required");
  req.check();
  const auto batch = load_batch(a.batches.front(), a.batch_id);
  const auto known = as_translation_set(batch);
  const auto imported = import_annotation_sheet(read_file(a.sheet), a.annotator, &known);

  const auto log = log_path(c, a);
  if (log.has_parent_path()) fs::create_directories(log.parent_path());
  SessionStore store(log);
  store.add_batch(batch);
  for (const auto& d : imported.decisions) store.record({batch.batch_id, d});
  const auto p = store.progress(batch.batch_id, a.annotator);
  std::cout << "imported " << imported.decisions.size() << " decision(s) for " << a.annotator << "; "
            << p.decided << "/" << p.total << " decided\n";
  return ok;
}

// ---------------------------------------------------------------------------
// merge

struct MergeArgs {
  fs::path translations;
  fs::path sheet;
  std::string annotator;
  bool strict = false;
};

struct Merged {
  MergeResult result;
  Dictionary stemmed;
};

Merged merge_from(const Config& c, const fs::path& translations, const fs::path& sheet, const std::string& annotator,
                  bool strict) {
  const auto ts = load_translations(translations, c);
  const auto decisions = import_annotations(read_file(sheet), annotator, &ts);
  Merged m{merge_decisions(ts, decisions, {strict}), {}};
  m.stemmed = stem_dictionary(m.result.dictionary, c.language);
  m.result.stats.stemmed_size = m.stemmed.size();
  return m;
}

std::string provenance_csv(const std::vector<TermProvenance>& rows) {
  std::string out;
  csv::append_record(out, {"word", "category", "origin", "record_id", "annotator"});
  for (const auto& p : rows)
    csv::append_record(out, {p.surface, p.category, std::string(to_string(p.origin)), p.record_id, p.annotator});
  return out;
}

int cmd_merge(const Config& c, const MergeArgs& a) {
  const fs::path translations = a.translations.empty() ? c.translations : a.translations;
  const fs::path sheet = a.sheet.empty() ? c.annotations.first : a.sheet;
  Requirements req;
  req.need(!translations.empty(), "translations: required (config key or --translations)");
  req.need(!sheet.empty(), "annotations.first: the first annotator's sheet is required (or --sheet)");
  req.need(is_supported_language(c.language), "language: a supported target language is required");
  req.check();
  const auto m = merge_from(c, translations, sheet, a.annotator.empty() ? c.annotations.first_annotator : a.annotator,
                            a.strict);
  const auto sfx = lang_suffix(c);
  write_output(c.output_dir / ("dictionary" + sfx + "_unstemmed.csv"), serialize_grievance_csv(m.result.dictionary));
  write_output(c.output_dir / ("dictionary" + sfx + "_stemmed.csv"), serialize_grievance_csv(m.stemmed));
  write_output(c.output_dir / ("provenance" + sfx + ".csv"), provenance_csv(m.result.provenance));
  write_output(c.output_dir / ("translations" + sfx + "_final.csv"), serialize_translations(m.result.translations));
  std::cout << report::corrections_markdown({{language_name(c.language), m.result.stats}});
  return ok;
}

// ---------------------------------------------------------------------------
// agreement

struct AgreementArgs {
  fs::path first;
  fs::path second;
  fs::path sample;
  fs::path translations;
};

std::vector<AnnotationDecision> restrict_to(std::vector<AnnotationDecision> ds,
                                            const std::unordered_set<std::string>& ids) {
  std::erase_if(ds, [&](const AnnotationDecision& d) { return !ids.contains(d.record_id); });
  return ds;
}

report::AgreementColumn agreement_column(const Config& c, const AgreementArgs& a) {
  const fs::path first = a.first.empty() ? c.annotations.first : a.first;
  const fs::path second = a.second.empty() ? c.annotations.second : a.second;
  const fs::path sample = a.sample.empty() ? c.annotations.sample : a.sample;
  const fs::path translations = a.translations.empty() ? c.translations : a.translations;
  Requirements req;
  req.need(!first.empty(), "annotations.first: required (or --first)");
  req.need(!second.empty(), "annotations.second: required (or --second)");
  req.check();

  std::optional<TranslationSet> ts;
  if (!translations.empty()) ts = load_translations(translations, c);
  const TranslationSet* known = ts ? &*ts : nullptr;
  auto da = import_annotations(read_file(first), c.annotations.first_annotator, known);
  auto db = import_annotations(read_file(second), c.annotations.second_annotator, known);
  if (!sample.empty()) {
    std::unordered_set<std::string> ids;
    for (const auto& r : import_annotation_sheet(read_file(sample), "").sheet.rows) ids.insert(r.id);
    da = restrict_to(std::move(da), ids);
    db = restrict_to(std::move(db), ids);
    if (da.size() != ids.size() || db.size() != ids.size())
      throw Error("sample has " + std::to_string(ids.size()) + " records but the annotators decided " +
                  std::to_string(da.size()) + " and " + std::to_string(db.size()) + " of them");
  }

  report::AgreementColumn col;
  col.label = c.language.empty() ? "" : language_name(c.language);
  col.results = agreement_report(agreement_table(da, db));
  if (ts) {
    // Term counts are those of the final (stemmed) dictionary.
    const auto merged = merge_decisions(*ts, import_annotations(read_file(first), c.annotations.first_annotator, known));
    const Dictionary final_dict = is_supported_language(c.language)
                                      ? stem_dictionary(merged.dictionary, c.language)
                                      : merged.dictionary;
    std::map<std::string, std::size_t> counts;
    for (const auto& cat : final_dict.categories()) counts[category_key(cat)] = final_dict.entries_in(cat).size();
    col.term_counts = std::move(counts);
  }
  return col;
}

int cmd_agreement(const Config& c, const AgreementArgs& a) {
  const auto col = agreement_column(c, a);
  const auto sfx = lang_suffix(c);
  const auto md = report::agreement_markdown({col});
  write_output(c.output_dir / ("agreement" + sfx + ".md"), md);
  write_output(c.output_dir / ("agreement" + sfx + ".csv"), report::agreement_csv({col}));
  std::cout << md;
  return ok;
}

// ---------------------------------------------------------------------------
// score / reliability / correlate

struct ScoreArgs {
  bool companion = false;
  std::string format = "csv";
};

Matcher primary_matcher(const Config& c, Requirements& req) {
  req.need(c.dictionary.has_value(), "dictionary: required");
  req.need(!c.corpora.empty(), "corpora: at least one corpus is required");
  req.check();
  return Matcher(load_dictionary(*c.dictionary));
}

int cmd_score(const Config& c, const ScoreArgs& a) {
  Requirements req;
  const auto& spec = a.companion ? c.companion_dictionary : c.dictionary;
  req.need(spec.has_value(), a.companion ? "companion_dictionary: required" : "dictionary: required");
  req.need(!c.corpora.empty(), "corpora: at least one corpus is required");
  req.need(a.format == "csv" || a.format == "bin", "--format: expected csv or bin");
  req.check();
  const Matcher m(load_dictionary(*spec));
  for (const auto& corpus : load_corpora(c)) {
    const auto s = score_corpus(m, corpus, {spec->id, c.threads});
    const auto path = c.output_dir / "scores" / (spec->id + "__" + corpus.id + "." + a.format);
    fs::create_directories(path.parent_path());
    save_matrix(s, path);
    std::cerr << "wrote " << path.string() << "\n";
    std::cout << corpus.id << ": " << s.rows() << " documents x " << s.cols() << " categories\n";
  }
  return ok;
}

report::ReliabilityColumn reliability_column(const Config& c, bool drop_constant) {
  Requirements req;
  const Matcher m = primary_matcher(c, req);
  std::vector<std::vector<ItemMatrix>> per_corpus;
  report::ReliabilityColumn col;
  col.label = c.language.empty() ? "Mean alpha" : language_name(c.language);
  for (const auto& corpus : load_corpora(c)) {
    per_corpus.push_back(item_matrices(m, corpus, c.threads));
    col.corpus_ids.push_back(corpus.id);
  }
  col.results = reliability_table(per_corpus, {drop_constant});
  return col;
}

int cmd_reliability(const Config& c, bool drop_constant) {
  const auto col = reliability_column(c, drop_constant);
  const auto sfx = lang_suffix(c);
  const auto md = report::reliability_markdown({col});
  write_output(c.output_dir / ("reliability" + sfx + ".md"), md);
  write_output(c.output_dir / ("reliability" + sfx + ".csv"), report::reliability_csv({col}));
  std::cout << md;
  return ok;
}

struct CorrelateArgs {
  std::optional<double> alpha;
  std::optional<std::size_t> top;
  std::size_t m = 0;
};

struct CorrelationRun {
  std::vector<CorrelationResult> results;
  std::vector<std::string> corpus_ids;
  double alpha;
  std::size_t m;
  std::size_t top;
};

CorrelationRun run_correlations(const Config& c, const CorrelateArgs& a) {
  Requirements req;
  req.need(c.dictionary.has_value(), "dictionary: required");
  req.need(c.companion_dictionary.has_value(), "companion_dictionary: required");
  req.need(!c.corpora.empty(), "corpora: at least one corpus is required");
  req.check();
  const Matcher first(load_dictionary(*c.dictionary));
  const Matcher second(load_dictionary(*c.companion_dictionary));
  std::vector<ScoreMatrix> sa, sb;
  CorrelationRun run;
  for (const auto& corpus : load_corpora(c)) {
    sa.push_back(score_corpus(first, corpus, {c.dictionary->id, c.threads}));
    sb.push_back(score_corpus(second, corpus, {c.companion_dictionary->id, c.threads}));
    // Documents that tokenize to nothing are skipped by both, so rows align.
    run.corpus_ids.push_back(corpus.id);
  }
  run.alpha = a.alpha.value_or(c.alpha);
  run.m = a.m ? a.m : first.category_count();
  run.top = a.top.value_or(c.top);
  run.results = correlate_dictionaries(sa, sb, {run.alpha, run.m});
  return run;
}

int cmd_correlate(const Config& c, const CorrelateArgs& a) {
  const auto run = run_correlations(c, a);
  const auto sfx = lang_suffix(c);
  const auto md = report::correlations_markdown(run.results, run.top, run.alpha, run.m);
  write_output(c.output_dir / ("correlations" + sfx + ".md"), md);
  write_output(c.output_dir / ("correlations" + sfx + ".csv"), report::correlations_csv(run.results, run.corpus_ids));
  std::cout << md;
  return ok;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const Config& c, bool drop_constant) {
  const auto sfx = lang_suffix(c);
  const std::string lang = c.language.empty() ? "" : " (" + language_name(c.language) + ")";
  std::string md = "# Dictionary evaluation" + lang + "\n";
  std::vector<std::string> skipped;

  auto section = [&](const std::string& title, const std::string& csv_name, auto&& build) {
    md += "\n## " + title + "\n\n";
    try {
      auto [table, csv] = build();
      md += table;
      write_output(c.output_dir / (csv_name + sfx + ".csv"), csv);
    } catch (const ConfigError& e) {
      md += "_Not available: ";
      for (std::size_t i = 0; i < e.problems().size(); ++i) md += (i ? "; " : "") + e.problems()[i];
      md += "._\n";
      skipped.push_back(title);
    }
  };

  section("Agreement between annotators", "agreement", [&] {
    const auto col = agreement_column(c, {});
    return std::pair{report::agreement_markdown({col}), report::agreement_csv({col})};
  });
  section("Dictionary corrections", "corrections", [&] {
    Requirements req;
    req.need(!c.translations.empty(), "translations: required");
    req.need(!c.annotations.first.empty(), "annotations.first: required");
    req.need(is_supported_language(c.language), "language: required");
    req.check();
    const auto m = merge_from(c, c.translations, c.annotations.first, c.annotations.first_annotator, false);
    const std::vector<report::CorrectionRow> rows{{language_name(c.language), m.result.stats}};
    return std::pair{report::corrections_markdown(rows), report::corrections_csv(rows)};
  });
  section("Internal reliability", "reliability", [&] {
    const auto col = reliability_column(c, drop_constant);
    return std::pair{report::reliability_markdown({col}), report::reliability_csv({col})};
  });
  section("Strongest correlating categories", "correlations", [&] {
    const auto run = run_correlations(c, {});
    return std::pair{report::correlations_markdown(run.results, run.top, run.alpha, run.m),
                     report::correlations_csv(run.results, run.corpus_ids)};
  });

  write_output(c.output_dir / ("report" + sfx + ".md"), md);
  std::cout << md;
  for (const auto& s : skipped) std::cerr << "warning: section '" << s << "' skipped (inputs not configured)\n";
  return ok;
}

// ---------------------------------------------------------------------------

int report_error(const std::exception& e, const char* kind, int code, const std::vector<std::string>& problems = {}) {
  constexpr std::size_t kMaxListed = 100;
  nlohmann::json j{{"error", kind}, {"message", e.what()}};
  if (!problems.empty()) {
    j["problems"] = nlohmann::json::array();
    for (std::size_t i = 0; i < problems.size() && i < kMaxListed; ++i) j["problems"].push_back(problems[i]);
    if (problems.size() > kMaxListed) j["problems_omitted"] = problems.size() - kMaxListed;
  }
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"psylex: translate psycholinguistic dictionaries and evaluate them psychometrically"};
  app.require_subcommand(1);
  fs::path config_path;
  std::string language_override;
  fs::path output_override;
  std::optional<std::size_t> threads_override;
  app.add_option("-c,--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--language", language_override, "Override the config's target language");
  app.add_option("-o,--output-dir", output_override, "Override the config's output_dir");
  app.add_option("--threads", threads_override, "Worker threads for scoring (0 = all cores)");

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "Machine-translate the source dictionary");
  translate->add_option("--out", ta.out, "Translations CSV to write");
  translate->add_option("--target", ta.target, "Target language");
  translate->add_option("--parallelism", ta.parallelism, "Concurrent provider requests");
  translate->add_flag("--no-cache", ta.no_cache, "Ignore the response cache");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw the stratified second-annotation sample");
  sample->add_option("--translations", sa.translations, "Translations CSV")->check(CLI::ExistingFile);
  sample->add_option("--out", sa.out, "Sheet CSV to write");
  sample->add_option("--seed", sa.seed, "Random seed");
  sample->add_option("--per-category", sa.per_category, "Records per category");
  sample->add_option("--batch-id", sa.batch_id, "Batch id (default sample_<language>)");

  AnnotateArgs aa;
  auto* serve = app.add_subcommand("annotate-serve", "Serve batches to annotators over HTTP");
  serve->add_option("--batch", aa.batches, "Sheet or translations CSV (repeatable)")->check(CLI::ExistingFile);
  serve->add_option("--batch-id", aa.batch_id, "Batch id (default: file name)");
  serve->add_option("--log", aa.log, "Decision log (default <output_dir>/decisions.jsonl)");
  serve->add_option("--host", aa.serve.host, "Address to bind")->capture_default_str();
  serve->add_option("--port", aa.serve.port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_flag("--bind-external", aa.serve.bind_external, "Allow binding a non-loopback address");
  serve->add_option("--static-dir", aa.serve.static_dir, "Built annotation UI to serve at /");

  auto* aexport = app.add_subcommand("annotate-export", "Write one annotator's filled sheet from the decision log");
  aexport->add_option("--batch", aa.batches, "Sheet or translations CSV")->check(CLI::ExistingFile);
  aexport->add_option("--batch-id", aa.batch_id, "Batch id (default: file name)");
  aexport->add_option("--log", aa.log, "Decision log");
  aexport->add_option("--annotator", aa.annotator, "Annotator id");
  aexport->add_option("--out", aa.out, "Output CSV (default stdout)");

  auto* aimport = app.add_subcommand("annotate-import", "Append a filled-in sheet to the decision log");
  aimport->add_option("--batch", aa.batches, "Sheet or translations CSV")->check(CLI::ExistingFile);
  aimport->add_option("--batch-id", aa.batch_id, "Batch id (default: file name)");
  aimport->add_option("--log", aa.log, "Decision log");
  aimport->add_option("--annotator", aa.annotator, "Annotator id");
  aimport->add_option("--sheet", aa.sheet, "Filled-in sheet CSV")->check(CLI::ExistingFile);

  MergeArgs ma;
  auto* merge = app.add_subcommand("merge", "Apply annotations and write the corrected dictionaries");
  merge->add_option("--translations", ma.translations, "Translations CSV")->check(CLI::ExistingFile);
  merge->add_option("--sheet", ma.sheet, "Filled-in sheet CSV")->check(CLI::ExistingFile);
  merge->add_option("--annotator", ma.annotator, "Annotator id recorded in provenance");
  merge->add_flag("--strict", ma.strict, "Reject records without a decision");

  AgreementArgs ga;
  auto* agreement = app.add_subcommand("agreement", "Gwet's AC1 between two annotators, per category");
  agreement->add_option("--first", ga.first, "First annotator's sheet")->check(CLI::ExistingFile);
  agreement->add_option("--second", ga.second, "Second annotator's sheet")->check(CLI::ExistingFile);
  agreement->add_option("--sample", ga.sample, "Restrict both to the records of this sheet")->check(CLI::ExistingFile);
  agreement->add_option("--translations", ga.translations, "Translations CSV (for term counts)")
      ->check(CLI::ExistingFile);

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Score every corpus with the dictionary");
  score->add_flag("--companion", sc.companion, "Score with the companion dictionary instead");
  score->add_option("--format", sc.format, "csv or bin")->capture_default_str();

  bool drop_constant = false;
  auto* reliability = app.add_subcommand("reliability", "Cronbach's alpha per category, averaged over corpora");
  reliability->add_flag("--drop-constant-items", drop_constant, "Ignore words that never vary within a corpus");

  CorrelateArgs ca;
  auto* correlate = app.add_subcommand("correlate", "Correlate the dictionary with the companion dictionary");
  correlate->add_option("--alpha", ca.alpha, "Family-wise significance level");
  correlate->add_option("--top", ca.top, "Correlations listed per category");
  correlate->add_option("--tests", ca.m, "Bonferroni divisor (default: number of categories)");

  auto* report = app.add_subcommand("report", "Render all tables as Markdown with CSV twins");
  report->add_flag("--drop-constant-items", drop_constant, "Ignore words that never vary within a corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Config c = config_path.empty() ? Config{} : service::load_config(config_path);
    if (config_path.empty()) c.output_dir = "out";
    if (!language_override.empty()) {
      if (!is_supported_language(language_override))
        throw ConfigError("--language: unsupported language '" + language_override + "'");
      c.language = language_override;
    }
    if (!output_override.empty()) c.output_dir = output_override;
    if (threads_override) c.threads = *threads_override;

    if (*translate) return cmd_translate(c, ta);
    if (*sample) return cmd_sample(c, sa);
    if (*serve) return cmd_annotate_serve(c, aa);
    if (*aexport) return cmd_annotate_export(c, aa);
    if (*aimport) return cmd_annotate_import(c, aa);
    if (*merge) return cmd_merge(c, ma);
    if (*agreement) return cmd_agreement(c, ga);
    if (*score) return cmd_score(c, sc);
    if (*reliability) return cmd_reliability(c, drop_constant);
    if (*correlate) return cmd_correlate(c, ca);
    if (*report) return cmd_report(c, drop_constant);
  } catch (const ConfigError& e) {
    return report_error(e, "config", config_error, e.problems());
  } catch (const AnnotationImportError& e) {
    return report_error(e, "annotation_sheet", input_error, e.problems());
  } catch (const PayloadError& e) {
    return report_error(e, "decision", input_error, e.problems());
  } catch (const PartialTranslationError& e) {
    return report_error(e, "partial_translation", partial, e.untranslated());
  } catch (const ParseError& e) {
    return report_error(e, "parse", input_error);
  } catch (const EncodingError& e) {
    return report_error(e, "encoding", input_error);
  } catch (const Error& e) {
    return report_error(e, "error", failure);
  } catch (const std::exception& e) {
    return report_error(e, "internal", failure);
  }
  return failure;
}
