// gradeband: readability grading, corpus preparation and evaluation.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gradeband/corpus.hpp"
#include "gradeband/error.hpp"
#include "gradeband/eval.hpp"
#include "gradeband/http_provider.hpp"
#include "gradeband/integration.hpp"
#include "gradeband/metrics.hpp"
#include "gradeband/survey.hpp"
#include "gradeband/text_measures.hpp"

namespace fs = std::filesystem;
using namespace gradeband;
using ordered_json = nlohmann::ordered_json;

namespace {

struct GlobalOptions {
  std::string config;
  std::string word_lists;
  std::string band_config;
  unsigned jobs = 0;
  bool lenient = false;
};

struct ProviderOptions {
  std::string kind = "mock";
  std::uint64_t seed = 0;
  int retries = 3;
  int backoff_ms = 500;
  double rate = 0.0;
};

// Settings after merging the config file, flags and defaults.
struct Resolved {
  WordLists lists;
  BandMappingConfig bands;
  unsigned jobs = 1;
  bool lenient = false;
  HttpProviderSettings http;
};

std::string dump(const ordered_json& j) { return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace); }

Resolved resolve(const GlobalOptions& g) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw Error(ErrorKind::IoError, "cannot open config " + g.config);
    try {
      cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ConfigError, g.config + ": " + e.what());
    }
    if (!cfg.is_object()) throw Error(ErrorKind::ConfigError, g.config + ": config must be a JSON object");
  }
  auto from_cfg = [&](const char* key) -> std::string {
    if (!cfg.contains(key)) return {};
    if (!cfg[key].is_string()) throw Error(ErrorKind::ConfigError, std::string("\"") + key + "\" must be a string");
    fs::path p = cfg[key].get<std::string>();
    if (p.is_relative()) p = fs::path(g.config).parent_path() / p;
    return p.string();
  };

  Resolved r;
  std::string lists_dir = !g.word_lists.empty() ? g.word_lists : from_cfg("word_lists");
  if (lists_dir.empty()) {
    const char* env = std::getenv("GRADEBAND_DATA");
    lists_dir = env ? env : GRADEBAND_DATA_DIR;
  }
  if (!fs::is_directory(lists_dir)) throw Error(ErrorKind::IoError, "word-list directory not found: " + lists_dir);
  r.lists = WordLists::load_directory(lists_dir);

  const std::string band_path = !g.band_config.empty() ? g.band_config : from_cfg("band_mapping");
  r.bands = band_path.empty() ? BandMappingConfig::defaults() : BandMappingConfig::load(band_path);

  r.jobs = g.jobs;
  if (r.jobs == 0 && cfg.contains("jobs")) {
    if (!cfg["jobs"].is_number_unsigned() || cfg["jobs"].get<unsigned>() == 0) {
      throw Error(ErrorKind::ConfigError, "\"jobs\" must be a positive integer");
    }
    r.jobs = cfg["jobs"].get<unsigned>();
  }
  if (r.jobs == 0) r.jobs = 1;
  r.lenient = g.lenient || cfg.value("lenient", false);
  if (cfg.contains("provider")) r.http.apply_json(cfg["provider"]);
  r.http.apply_environment();
  return r;
}

std::unique_ptr<TextProvider> make_provider(const ProviderOptions& p, const Resolved& r) {
  if (p.kind == "mock") return std::make_unique<MockProvider>(p.seed);
  if (p.kind == "http") return std::make_unique<HttpChatProvider>(r.http);
  throw Error(ErrorKind::ConfigError, "unknown provider \"" + p.kind + "\" (mock, http)");
}

RetryPolicy retry_policy(const ProviderOptions& p) {
  RetryPolicy policy;
  policy.max_attempts = p.retries;
  policy.initial_backoff = std::chrono::milliseconds{p.backoff_ms};
  return policy;
}

void add_provider_options(CLI::App* cmd, ProviderOptions& p) {
  cmd->add_option("--provider", p.kind, "Text provider: mock (offline, deterministic) or http")
      ->check(CLI::IsMember({"mock", "http"}))
      ->capture_default_str();
  cmd->add_option("--seed", p.seed, "Seed for the mock provider")->capture_default_str();
  cmd->add_option("--retries", p.retries, "Attempts per request")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--backoff-ms", p.backoff_ms, "Initial retry backoff in milliseconds")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--rate", p.rate, "Maximum requests per second (0 = unlimited)")->capture_default_str();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw Error(ErrorKind::IoError, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw Error(ErrorKind::IoError, "write failed for " + (path.empty() ? "stdout" : path));
  }

 private:
  std::ofstream file_;
};

void report_issues(const std::vector<RecordIssue>& issues) {
  for (const auto& i : issues) {
    std::cerr << "warning: ";
    if (!i.id.empty()) std::cerr << "record \"" << i.id << "\": ";
    std::cerr << i.message << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Texts from a JSON Lines file (one string field per line) or, for .txt
// files, one text per nonblank line.
std::vector<std::string> read_texts(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  const bool plain = fs::path(path).extension() == ".txt";
  std::vector<std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (plain) {
      out.push_back(line);
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, path + ": " + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains(field) || !j[field].is_string()) {
      throw Error(ErrorKind::MissingField, path + ": missing string field \"" + field + "\"", line_no);
    }
    out.push_back(j[field].get<std::string>());
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

ordered_json report_json(const MetricReport& report, const IntegrationResult& result) {
  const auto& s = report.stats;
  ordered_json stats{{"sentences", s.sentences},
                     {"words", s.words},
                     {"syllables", s.syllables},
                     {"characters", s.characters},
                     {"letters", s.letters},
                     {"complex_words", s.complex_words},
                     {"dale_chall_difficult_pct", s.dc_difficult_pct},
                     {"spache_unfamiliar_pct", s.spache_unfamiliar_pct}};
  ordered_json scores = ordered_json::object();
  for (auto id : kAllMetrics) {
    scores[std::string(name(id))] = {{"raw", report[id].raw}, {"band", report[id].band.index()},
                                     {"held_out", is_held_out(id)}};
  }
  ordered_json votes = ordered_json::object();
  for (std::size_t g = 0; g < kGroups.size(); ++g) {
    votes[std::string(name(kGroups[g]))] = result.group_votes[g].index();
  }
  return {{"stats", stats},
          {"scores", scores},
          {"group_votes", votes},
          {"band", result.final_band.index()},
          {"band_label", result.final_band.label()},
          {"decided_by", name(result.decided_by)}};
}

void print_report(std::ostream& out, const MetricReport& report, const IntegrationResult& result) {
  const auto& s = report.stats;
  out << "sentences " << s.sentences << ", words " << s.words << ", syllables " << s.syllables << ", letters "
      << s.letters << "\n\n";
  out << std::left << std::setw(8) << "metric" << std::setw(12) << "score" << "band\n";
  for (auto id : kAllMetrics) {
    const auto& sc = report[id];
    out << std::setw(8) << name(id) << std::setw(12) << format_number(sc.raw) << sc.band.index() << " ("
        << sc.band.short_label() << ")" << (is_held_out(id) ? "  held out" : "") << '\n';
  }
  out << "\ngroup votes:";
  for (std::size_t g = 0; g < kGroups.size(); ++g) {
    out << ' ' << name(kGroups[g]) << '=' << result.group_votes[g].index();
  }
  const auto b = result.final_band;
  out << "\nband " << b.index() << ": " << b.label() << " (grades " << b.first_grade();
  if (const auto last = b.last_grade()) {
    out << '-' << *last;
  } else {
    out << '+';
  }
  out << "), decided by " << name(result.decided_by) << '\n' << std::right;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Readability grading into six school-grade bands, corpus preparation and evaluation."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "gradeband 0.1.0");

  GlobalOptions g;
  app.add_option("--config", g.config, "JSON config: word_lists, band_mapping, jobs, lenient, provider")
      ->check(CLI::ExistingFile);
  app.add_option("--word-lists", g.word_lists, "Directory holding the familiar-word and abbreviation lists");
  app.add_option("--band-config", g.band_config, "JSON band-mapping table overriding the defaults");
  app.add_option("--jobs,-j", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--lenient", g.lenient, "Skip malformed input lines with a warning instead of failing");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Score one text with every metric and the integrated band");
  std::string analyze_text, analyze_file;
  bool analyze_json = false;
  analyze->add_option("text", analyze_text, "Text to analyze");
  analyze->add_option("--file,-f", analyze_file, "Read the text from a file ('-' for stdin)");
  analyze->add_flag("--json", analyze_json, "Emit a JSON report");

  // classify
  auto* classify = app.add_subcommand("classify", "Classify every answer of a JSON Lines corpus");
  std::string classify_in, classify_out;
  classify->add_option("input", classify_in, "Corpus JSON Lines")->required();
  classify->add_option("--output,-o", classify_out, "Classified JSON Lines (default stdout)");

  // partition
  auto* partition = app.add_subcommand("partition", "Classify a corpus and split it into band_<k>.jsonl files");
  std::string partition_in, partition_dir;
  partition->add_option("input", partition_in, "Corpus JSON Lines")->required();
  partition->add_option("--out-dir,-o", partition_dir, "Output directory")->required();

  // emit-finetune
  auto* emit = app.add_subcommand("emit-finetune", "Write fine-tuning files from a partition directory");
  std::string emit_in, emit_out, emit_format = "chat";
  emit->add_option("--partition-dir", emit_in, "Directory with band_<k>.jsonl")->required();
  emit->add_option("--out-dir,-o", emit_out, "Output directory")->required();
  emit->add_option("--format", emit_format, "Fine-tuning format")->capture_default_str();

  // gen-prompts
  auto* gen_prompts = app.add_subcommand("gen-prompts", "Expand a question into the 54 answer prompts");
  std::string gp_question;
  gen_prompts->add_option("--question,-q", gp_question, "Question text")->required();

  // gen-questions
  auto* gen_questions = app.add_subcommand("gen-questions", "Generate questions for every subject of a taxonomy");
  std::string gq_taxonomy = std::string(GRADEBAND_DATA_DIR) + "/subjects.json", gq_out;
  int gq_per_prompt = 10;
  bool gq_dry_run = false;
  ProviderOptions gq_provider;
  gen_questions->add_option("--taxonomy", gq_taxonomy, "Subject taxonomy JSON")->capture_default_str();
  gen_questions->add_option("--per-subject", gq_per_prompt, "Questions requested per subject")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_questions->add_option("--output,-o", gq_out, "Questions JSON Lines (default stdout)");
  gen_questions->add_flag("--dry-run", gq_dry_run, "Print the prompts instead of sending them");
  add_provider_options(gen_questions, gq_provider);

  // generate
  auto* generate = app.add_subcommand("generate", "Generate 54 graded answers per question through a provider");
  std::string gen_questions_file, gen_question, gen_id = "q1", gen_out, gen_errors;
  ProviderOptions gen_provider;
  auto* gen_qf = generate->add_option("--questions", gen_questions_file,
                                      "JSON Lines with id, question and optional field/subject");
  auto* gen_q = generate->add_option("--question,-q", gen_question, "A single question");
  gen_qf->excludes(gen_q);
  generate->add_option("--id", gen_id, "Id for --question")->capture_default_str();
  generate->add_option("--output,-o", gen_out, "Generated records JSON Lines (default stdout)");
  generate->add_option("--errors", gen_errors, "Write failed items as JSON Lines here");
  add_provider_options(generate, gen_provider);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Target %, confusion matrix, ARI level and metric means");
  std::string ev_classified, ev_targets, ev_report, ev_confusion, ev_confusion_pct;
  evaluate_cmd->add_option("--classified", ev_classified, "Classified JSON Lines")->required();
  evaluate_cmd->add_option("--targets", ev_targets, "JSON Lines of {id, target_band}");
  evaluate_cmd->add_option("--report", ev_report, "Report JSON (default stdout)");
  evaluate_cmd->add_option("--confusion", ev_confusion, "Confusion matrix CSV (counts)");
  evaluate_cmd->add_option("--confusion-pct", ev_confusion_pct, "Row-normalized confusion matrix CSV");

  // survey
  auto* survey = app.add_subcommand("survey", "Kendall tau, L1 rank distance and Likert summaries");
  std::string sv_rankings, sv_likert, sv_box;
  survey->add_option("--rankings", sv_rankings, "CSV rater_id,[item_id,]position,assigned_rank");
  survey->add_option("--likert", sv_likert, "CSV rater_id,band,q1,q2,q3");
  survey->add_option("--box-csv", sv_box, "Write Likert box-plot statistics here");

  // diversity
  auto* diversity = app.add_subcommand("diversity", "Diversity gain of new texts over base texts");
  std::string dv_base, dv_new, dv_field = "answer", dv_embedder = "hashed";
  std::size_t dv_dim = 256;
  diversity->add_option("--base", dv_base, "Base texts (JSON Lines, or .txt with one text per line)")->required();
  diversity->add_option("--new", dv_new, "New texts")->required();
  diversity->add_option("--field", dv_field, "JSON field holding the text")->capture_default_str();
  diversity->add_option("--embedder", dv_embedder, "hashed (offline) or http")
      ->check(CLI::IsMember({"hashed", "http"}))
      ->capture_default_str();
  diversity->add_option("--dim", dv_dim, "Dimension of the hashed embedder")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // perplexity
  auto* perplexity_cmd = app.add_subcommand("perplexity", "Perplexity from precomputed token log-probabilities");
  std::string px_logprobs;
  perplexity_cmd->add_option("--logprobs", px_logprobs, "JSON Lines of {text, logprobs}")->required();

  // lengths
  auto* lengths = app.add_subcommand("lengths", "Sentence-length histogram");
  std::string ln_input, ln_field = "answer", ln_csv;
  lengths->add_option("input", ln_input, "Texts (JSON Lines, or .txt)")->required();
  lengths->add_option("--field", ln_field, "JSON field holding the text")->capture_default_str();
  lengths->add_option("--csv", ln_csv, "Write the histogram CSV here");

  // zipf
  auto* zipf = app.add_subcommand("zipf", "Word frequency table");
  std::string zf_input, zf_field = "answer";
  std::size_t zf_min = 30;
  zipf->add_option("input", zf_input, "Texts (JSON Lines, or .txt)")->required();
  zipf->add_option("--field", zf_field, "JSON field holding the text")->capture_default_str();
  zipf->add_option("--min-count", zf_min, "Drop words seen fewer times")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto r = resolve(g);

    if (analyze->parsed()) {
      std::string text;
      if (!analyze_file.empty()) {
        if (analyze_file == "-") {
          std::ostringstream ss;
          ss << std::cin.rdbuf();
          text = ss.str();
        } else {
          text = read_file(analyze_file);
        }
      } else {
        text = analyze_text;
      }
      const auto report = score_all(text, r.lists, r.bands);
      const auto result = integrate(report);
      if (analyze_json) {
        std::cout << report_json(report, result).dump(2, ' ', false, nlohmann::json::error_handler_t::replace)
                  << '\n';
      } else {
        print_report(std::cout, report, result);
      }
      return 0;
    }

    if (classify->parsed() || partition->parsed()) {
      const auto& input = classify->parsed() ? classify_in : partition_in;
      const auto loaded = load_records(input, r.lenient);
      report_issues(loaded.skipped);
      for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
      const auto run = classify_all(loaded.records, r.lists, r.bands, r.jobs);
      if (!run.failures.empty() && !r.lenient) {
        const auto& f = run.failures.front();
        throw Error(f.kind, "record \"" + f.id + "\": " + f.message);
      }
      report_issues(run.failures);
      DistributionSummary summary;
      if (classify->parsed()) {
        Output out(classify_out);
        for (const auto& c : run.classified) {
          out.stream() << dump(to_json(c)) << '\n';
          summary.add(c.integration.final_band);
        }
        out.finish(classify_out);
      } else {
        summary = partition_corpus(run.classified, partition_dir);
      }
      std::cerr << dump(to_json(summary)) << '\n';
      return 0;
    }

    if (emit->parsed()) {
      const auto written = emit_finetune_files(emit_in, emit_out, emit_format);
      ordered_json j = ordered_json::object();
      for (auto band : GradeBand::all()) {
        j[std::to_string(band.index())] = written[static_cast<std::size_t>(band.index() - 1)];
      }
      std::cerr << dump(ordered_json{{"written", j}}) << '\n';
      return 0;
    }

    if (gen_prompts->parsed()) {
      for (const auto& p : expand_prompts(gp_question)) {
        std::cout << dump(ordered_json{{"band", p.band.index()},
                                       {"grade_label", p.grade_label},
                                       {"max_words_per_sentence", p.max_words_per_sentence},
                                       {"difficulty", p.difficulty_phrase},
                                       {"prompt", p.rendered_text},
                                       {"message", p.message()}})
                  << '\n';
      }
      return 0;
    }

    if (gen_questions->parsed()) {
      const auto taxonomy = load_taxonomy(gq_taxonomy);
      const auto prompts = question_generation_prompts(taxonomy, gq_per_prompt);
      Output out(gq_out);
      if (gq_dry_run) {
        for (const auto& p : prompts) {
          out.stream() << dump(ordered_json{{"field", p.field}, {"subject", p.subject}, {"prompt", p.text}}) << '\n';
        }
        out.finish(gq_out);
        return 0;
      }
      auto provider = make_provider(gq_provider, r);
      TokenBucket limiter(gq_provider.rate, 1.0);
      const auto policy = retry_policy(gq_provider);
      std::size_t n = 0, failed = 0;
      for (const auto& p : prompts) {
        try {
          const auto reply = with_retry(policy, [&] {
            limiter.acquire();
            return provider->complete(p.text);
          });
          for (const auto& q : parse_question_list(reply)) {
            out.stream() << dump(ordered_json{{"id", "q" + std::to_string(++n)},
                                              {"question", q},
                                              {"field", p.field},
                                              {"subject", p.subject}})
                         << '\n';
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::ProviderError) throw;
          ++failed;
          std::cerr << "warning: " << p.subject << ": " << e.what() << '\n';
        }
      }
      out.finish(gq_out);
      return failed == prompts.size() && !prompts.empty() ? 1 : 0;
    }

    if (generate->parsed()) {
      struct Question {
        std::string id, text;
        std::optional<std::string> field, subject;
      };
      std::vector<Question> questions;
      if (!gen_questions_file.empty()) {
        std::ifstream in(gen_questions_file, std::ios::binary);
        if (!in) throw Error(ErrorKind::IoError, "cannot open " + gen_questions_file);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
          ++line_no;
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          nlohmann::json j;
          try {
            j = nlohmann::json::parse(line);
          } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorKind::ParseError, e.what(), line_no);
          }
          for (const char* key : {"id", "question"}) {
            if (!j.contains(key) || !j[key].is_string()) {
              throw Error(ErrorKind::MissingField, std::string("missing field \"") + key + "\"", line_no);
            }
          }
          Question q{j["id"], j["question"], {}, {}};
          if (j.contains("field") && j["field"].is_string()) q.field = j["field"].get<std::string>();
          if (j.contains("subject") && j["subject"].is_string()) q.subject = j["subject"].get<std::string>();
          questions.push_back(std::move(q));
        }
      } else if (!gen_question.empty()) {
        questions.push_back({gen_id, gen_question, {}, {}});
      } else {
        throw Error(ErrorKind::EmptyQuestion, "give --question or --questions");
      }

      auto provider = make_provider(gen_provider, r);
      TokenBucket limiter(gen_provider.rate, 1.0);
      const auto policy = retry_policy(gen_provider);
      Output out(gen_out);
      std::optional<Output> errors;
      if (!gen_errors.empty()) errors.emplace(gen_errors);
      std::size_t records = 0, failures = 0;
      for (const auto& q : questions) {
        const auto prompts = expand_prompts(q.text);
        const auto outcome = generate_answers(q.id, prompts, *provider, policy, &limiter, q.field, q.subject);
        for (const auto& rec : outcome.records) out.stream() << dump(to_json(rec)) << '\n';
        for (const auto& f : outcome.failures) {
          const auto j = ordered_json{{"id", f.id}, {"item", f.item}, {"error", f.message}};
          if (errors) {
            errors->stream() << dump(j) << '\n';
          } else {
            std::cerr << "error: " << dump(j) << '\n';
          }
        }
        records += outcome.records.size();
        failures += outcome.failures.size();
      }
      out.finish(gen_out);
      if (errors) errors->finish(gen_errors);
      std::cerr << dump(ordered_json{{"records", records}, {"failures", failures}}) << '\n';
      return records == 0 && failures > 0 ? 1 : 0;
    }

    if (evaluate_cmd->parsed()) {
      const auto targets = ev_targets.empty() ? std::map<std::string, GradeBand>{} : load_targets(ev_targets);
      const auto input = load_eval_items(ev_classified, targets, r.lenient);
      report_issues(input.skipped);
      if (input.items.empty()) throw Error(ErrorKind::NoData, "no classified items with a target band");
      const auto report = evaluate(input.items, r.bands);
      Output out(ev_report);
      out.stream() << to_json(report).dump(2) << '\n';
      out.finish(ev_report);
      if (!ev_confusion.empty()) {
        Output csv(ev_confusion);
        write_confusion_csv(csv.stream(), report.confusion);
        csv.finish(ev_confusion);
      }
      if (!ev_confusion_pct.empty()) {
        Output csv(ev_confusion_pct);
        write_confusion_csv(csv.stream(), row_normalized(report.confusion));
        csv.finish(ev_confusion_pct);
      }
      return 0;
    }

    if (survey->parsed()) {
      if (sv_rankings.empty() && sv_likert.empty()) {
        throw Error(ErrorKind::NoData, "give --rankings and/or --likert");
      }
      ordered_json j = ordered_json::object();
      if (!sv_rankings.empty()) {
        std::ifstream in(sv_rankings);
        if (!in) throw Error(ErrorKind::IoError, "cannot open " + sv_rankings);
        const auto obs = read_ranking_csv(in);
        j["ranking"] = to_json(summarize_rankings(obs));
      }
      if (!sv_likert.empty()) {
        std::ifstream in(sv_likert);
        if (!in) throw Error(ErrorKind::IoError, "cannot open " + sv_likert);
        const auto stats = summarize_likert(read_likert_csv(in));
        ordered_json rows = ordered_json::array();
        for (const auto& [key, b] : stats) {
          rows.push_back({{"band", key.first},
                          {"question", "q" + std::to_string(key.second + 1)},
                          {"count", b.count},
                          {"mean", b.mean},
                          {"min", b.min},
                          {"q1", b.q1},
                          {"median", b.median},
                          {"q3", b.q3},
                          {"max", b.max}});
        }
        j["likert"] = std::move(rows);
        if (!sv_box.empty()) {
          Output csv(sv_box);
          write_box_csv(csv.stream(), stats);
          csv.finish(sv_box);
        }
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (diversity->parsed()) {
      const auto base = read_texts(dv_base, dv_field);
      const auto added = read_texts(dv_new, dv_field);
      std::unique_ptr<Embedder> embedder;
      if (dv_embedder == "http") {
        embedder = std::make_unique<HttpEmbedder>(r.http);
      } else {
        embedder = std::make_unique<HashedBowEmbedder>(dv_dim);
      }
      const double value = diversity_gain(base, added, *embedder);
      std::cout << dump(ordered_json{
                       {"diversity_gain", value}, {"base", base.size()}, {"new", added.size()}, {"embedder", dv_embedder}})
                << '\n';
      return 0;
    }

    if (perplexity_cmd->parsed()) {
      std::ifstream in(px_logprobs, std::ios::binary);
      if (!in) throw Error(ErrorKind::IoError, "cannot open " + px_logprobs);
      std::vector<std::vector<double>> all;
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          all.push_back(nlohmann::json::parse(line).at("logprobs").get<std::vector<double>>());
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::ParseError, e.what(), line_no);
        }
      }
      std::size_t tokens = 0;
      for (const auto& v : all) tokens += v.size();
      std::cout << dump(ordered_json{{"perplexity", perplexity_from_logprobs(all)}, {"texts", all.size()},
                                     {"tokens", tokens}})
                << '\n';
      return 0;
    }

    if (lengths->parsed()) {
      const auto d = sentence_length_distribution(read_texts(ln_input, ln_field), r.lists.abbreviations);
      ordered_json hist = ordered_json::object();
      for (const auto& [len, count] : d.histogram) hist[std::to_string(len)] = count;
      std::cout << dump(ordered_json{{"sentences", d.sentences}, {"mean", d.mean}, {"median", d.median},
                                     {"histogram", hist}})
                << '\n';
      if (!ln_csv.empty()) {
        Output csv(ln_csv);
        write_histogram_csv(csv.stream(), d);
        csv.finish(ln_csv);
      }
      return 0;
    }

    if (zipf->parsed()) {
      const auto table = zipf_frequency_table(read_texts(zf_input, zf_field), zf_min);
      write_zipf_csv(std::cout, table);
      std::cerr << "total tokens: " << table.total_tokens << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
