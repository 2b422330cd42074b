#include "gradeband/corpus.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "gradeband/parallel.hpp"

namespace gradeband {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr auto kReplace = nlohmann::json::error_handler_t::replace;

std::string dump_line(const ordered_json& j) { return j.dump(-1, ' ', false, kReplace); }

std::string_view trim_ws(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string required_string(const nlohmann::json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    throw Error(ErrorKind::MissingField, std::string("missing field \"") + key + "\"", line_no);
  }
  if (!it->is_string()) throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be a string", line_no);
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const nlohmann::json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be a string", line_no);
  return it->get<std::string>();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::IoError, "cannot create directory " + dir.string());
  }
}

constexpr std::array<std::string_view, GradeBand::kCount> kGradePhrases{
    "elementary school 1st grade", "elementary school 3rd grade", "elementary school 5th grade",
    "middle school 7th grade",     "high school 10th grade",      "college"};

}  // namespace

CorpusRecord parse_record(std::string_view line, std::size_t line_no) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what(), line_no);
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "record must be a JSON object", line_no);

  CorpusRecord rec;
  rec.id = required_string(j, "id", line_no);
  if (rec.id.empty()) throw Error(ErrorKind::ParseError, "\"id\" must be nonempty", line_no);
  rec.question = required_string(j, "question", line_no);
  rec.answer = required_string(j, "answer", line_no);
  rec.field = optional_string(j, "field", line_no);
  rec.subject = optional_string(j, "subject", line_no);
  if (const auto it = j.find("target_band"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > GradeBand::kCount) {
      throw Error(ErrorKind::ParseError, "\"target_band\" must be an integer in 1..6", line_no);
    }
    rec.target_band = GradeBand(it->get<int>());
  }
  return rec;
}

ordered_json to_json(const CorpusRecord& rec) {
  ordered_json j;
  j["id"] = rec.id;
  j["question"] = rec.question;
  j["answer"] = rec.answer;
  if (rec.field) j["field"] = *rec.field;
  if (rec.subject) j["subject"] = *rec.subject;
  if (rec.target_band) j["target_band"] = rec.target_band->index();
  return j;
}

RecordReader::RecordReader(std::istream& in, bool lenient) : in_(in), lenient_(lenient) {}

std::optional<CorpusRecord> RecordReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    std::string_view view(line);
    if (line_no_ == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim_ws(view).empty()) continue;
    try {
      auto rec = parse_record(view, line_no_);
      if (!seen_ids_.insert(rec.id).second) {
        throw Error(ErrorKind::ParseError, "duplicate id \"" + rec.id + "\"", line_no_);
      }
      return rec;
    } catch (const Error& e) {
      if (!lenient_) throw;
      issues_.push_back({line_no_, {}, e.kind(), e.what()});
    }
  }
  return std::nullopt;
}

LoadResult read_records(std::istream& in, bool lenient) {
  LoadResult result;
  RecordReader reader(in, lenient);
  while (auto rec = reader.next()) result.records.push_back(std::move(*rec));
  result.skipped = reader.issues();
  if (result.records.empty() && result.skipped.empty()) result.warnings.emplace_back("input holds no records");
  return result;
}

LoadResult load_records(const std::filesystem::path& path, bool lenient) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  auto result = read_records(in, lenient);
  for (auto& w : result.warnings) w = path.string() + ": " + w;
  return result;
}

ClassifiedRecord classify_record(const CorpusRecord& rec, const WordLists& lists, const BandMappingConfig& cfg) {
  ClassifiedRecord out;
  out.record = rec;
  out.report = score_all(rec.answer, lists, cfg);
  out.integration = integrate(out.report);
  out.ari_band = out.report[MetricId::ARI].band;
  return out;
}

ordered_json to_json(const ClassifiedRecord& rec) {
  ordered_json j = to_json(rec.record);
  j["band"] = rec.integration.final_band.index();
  j["decided_by"] = name(rec.integration.decided_by);
  ordered_json scores = ordered_json::object();
  ordered_json bands = ordered_json::object();
  for (auto id : kIntegratedMetrics) {
    scores[std::string(name(id))] = rec.report[id].raw;
    bands[std::string(name(id))] = rec.report[id].band.index();
  }
  j["scores"] = std::move(scores);
  j["metric_bands"] = std::move(bands);
  j["group_votes"] = ordered_json::array();
  for (auto v : rec.integration.group_votes) j["group_votes"].push_back(v.index());
  j["ari"] = rec.report[MetricId::ARI].raw;
  j["ari_band"] = rec.ari_band.index();
  return j;
}

ClassificationRun classify_all(std::span<const CorpusRecord> records, const WordLists& lists,
                               const BandMappingConfig& cfg, unsigned jobs) {
  std::vector<std::optional<ClassifiedRecord>> results(records.size());
  std::vector<std::optional<RecordIssue>> issues(records.size());
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    try {
      results[i] = classify_record(records[i], lists, cfg);
    } catch (const Error& e) {
      issues[i] = RecordIssue{0, records[i].id, e.kind(), e.what()};
    }
  });
  ClassificationRun run;
  run.classified.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (results[i]) {
      run.classified.push_back(std::move(*results[i]));
    } else {
      run.failures.push_back(std::move(*issues[i]));
    }
  }
  return run;
}

ordered_json to_json(const DistributionSummary& summary) {
  ordered_json counts = ordered_json::object();
  for (auto band : GradeBand::all()) {
    counts[std::to_string(band.index())] = summary.counts[static_cast<std::size_t>(band.index() - 1)];
  }
  return {{"counts", counts}, {"total", summary.total}};
}

std::filesystem::path band_file(const std::filesystem::path& dir, GradeBand band) {
  return dir / ("band_" + std::to_string(band.index()) + ".jsonl");
}

DistributionSummary partition_corpus(std::span<const ClassifiedRecord> records, const std::filesystem::path& out_dir) {
  ensure_directory(out_dir);
  std::array<std::ofstream, GradeBand::kCount> files;
  for (auto band : GradeBand::all()) {
    files[static_cast<std::size_t>(band.index() - 1)] = open_output(band_file(out_dir, band));
  }
  DistributionSummary summary;
  for (const auto& rec : records) {
    const auto band = rec.integration.final_band;
    auto& out = files[static_cast<std::size_t>(band.index() - 1)];
    out << dump_line(to_json(rec)) << '\n';
    summary.add(band);
  }
  for (auto band : GradeBand::all()) {
    auto& out = files[static_cast<std::size_t>(band.index() - 1)];
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + band_file(out_dir, band).string());
  }
  return summary;
}

FinetuneFormat parse_finetune_format(std::string_view id) {
  if (id == "chat") return FinetuneFormat::Chat;
  throw Error(ErrorKind::UnknownFormat, "unknown fine-tune format \"" + std::string(id) + "\" (known: chat)");
}

std::string finetune_line(std::string_view question, std::string_view answer, FinetuneFormat format) {
  switch (format) {
    case FinetuneFormat::Chat: {
      ordered_json messages = ordered_json::array();
      messages.push_back({{"role", "user"}, {"content", question}});
      messages.push_back({{"role", "assistant"}, {"content", answer}});
      return dump_line(ordered_json{{"messages", std::move(messages)}});
    }
  }
  throw Error(ErrorKind::UnknownFormat, "unknown fine-tune format");
}

std::array<std::size_t, GradeBand::kCount> emit_finetune_files(const std::filesystem::path& partition_dir,
                                                               const std::filesystem::path& out_dir,
                                                               std::string_view format_id) {
  const auto format = parse_finetune_format(format_id);
  ensure_directory(out_dir);
  std::array<std::size_t, GradeBand::kCount> written{};
  for (auto band : GradeBand::all()) {
    const auto source = band_file(partition_dir, band);
    std::ifstream in(source, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "missing partition file " + source.string());
    const auto target = out_dir / ("finetune_band_" + std::to_string(band.index()) + ".jsonl");
    auto out = open_output(target);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim_ws(line).empty()) continue;
      const auto rec = parse_record(line, line_no);
      out << finetune_line(rec.question, rec.answer, format) << '\n';
      ++written[static_cast<std::size_t>(band.index() - 1)];
    }
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + target.string());
  }
  return written;
}

std::string_view grade_phrase(GradeBand band) { return kGradePhrases[static_cast<std::size_t>(band.index() - 1)]; }

std::string_view difficulty_phrase(GradeBand band) {
  if (band.index() <= 2) return "very easy";
  if (band.index() <= 4) return "fairly easy";
  return "fairly difficult";
}

std::string render_answer_instruction(std::string_view difficulty, std::string_view grade, int max_words) {
  std::string out = "Please provide the explanation in plain text with no bullet points using ";
  out += difficulty;
  out += " words that ";
  out += grade;
  out += " students will know. Answer in detail with at a maximum of ";
  out += std::to_string(max_words);
  out += " words per sentence.";
  return out;
}

std::string GenerationPrompt::message() const { return question + "\n\n" + rendered_text; }

std::vector<GenerationPrompt> expand_prompts(std::string_view question) {
  const auto q = trim_ws(question);
  if (q.empty()) throw Error(ErrorKind::EmptyQuestion, "question is empty");
  std::vector<GenerationPrompt> prompts;
  prompts.reserve(GradeBand::kCount * kSentenceLengthCaps.size());
  for (auto band : GradeBand::all()) {
    for (int cap : kSentenceLengthCaps) {
      GenerationPrompt p;
      p.band = band;
      p.grade_label = grade_phrase(band);
      p.max_words_per_sentence = cap;
      p.difficulty_phrase = difficulty_phrase(band);
      p.rendered_text = render_answer_instruction(p.difficulty_phrase, p.grade_label, cap);
      p.question = std::string(q);
      prompts.push_back(std::move(p));
    }
  }
  return prompts;
}

GenerationOutcome generate_answers(std::string_view question_id, std::span<const GenerationPrompt> prompts,
                                   TextProvider& provider, const RetryPolicy& retry, TokenBucket* limiter,
                                   const std::optional<std::string>& field,
                                   const std::optional<std::string>& subject) {
  GenerationOutcome outcome;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    const auto& p = prompts[i];
    const std::string id = std::string(question_id) + "-b" + std::to_string(p.band.index()) + "-w" +
                           std::to_string(p.max_words_per_sentence);
    try {
      auto text = with_retry(retry, [&] {
        if (limiter) limiter->acquire();
        auto reply = provider.complete(p.message());
        if (trim_ws(reply).empty()) throw Error(ErrorKind::ProviderError, "empty response");
        return reply;
      });
      outcome.records.push_back({id, p.question, std::move(text), field, subject, p.band});
    } catch (const std::exception& e) {
      outcome.failures.push_back({i, id, e.what()});
    }
  }
  return outcome;
}

std::vector<SubjectArea> parse_taxonomy(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("fields") || !j.at("fields").is_array()) {
    throw Error(ErrorKind::ConfigError, "taxonomy must be {\"fields\": [...]}");
  }
  std::vector<SubjectArea> out;
  for (const auto& f : j.at("fields")) {
    if (!f.is_object() || !f.contains("name") || !f.at("name").is_string() || !f.contains("subjects") ||
        !f.at("subjects").is_array()) {
      throw Error(ErrorKind::ConfigError, "each field needs \"name\" and \"subjects\"");
    }
    SubjectArea area{f.at("name").get<std::string>(), {}};
    for (const auto& s : f.at("subjects")) {
      if (!s.is_string()) throw Error(ErrorKind::ConfigError, "subjects must be strings");
      area.subjects.push_back(s.get<std::string>());
    }
    out.push_back(std::move(area));
  }
  return out;
}

std::vector<SubjectArea> load_taxonomy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open taxonomy " + path.string());
  try {
    return parse_taxonomy(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, path.string() + ": " + e.what());
  }
}

std::vector<QuestionPrompt> question_generation_prompts(std::span<const SubjectArea> taxonomy,
                                                        int questions_per_prompt) {
  std::vector<QuestionPrompt> out;
  for (const auto& area : taxonomy) {
    for (const auto& subject : area.subjects) {
      std::ostringstream text;
      text << "Write " << questions_per_prompt << " different questions about " << subject << " (field: "
           << area.field
           << ") that can be answered at every grade level, from elementary school 1st grade students to "
              "college students. Each question should ask for an explanation. Write one question per line "
              "with no numbering.";
      out.push_back({area.field, subject, text.str()});
    }
  }
  return out;
}

std::vector<std::string> parse_question_list(std::string_view reply) {
  static const std::regex marker(R"(^\s*(?:\d+[.)]|[-*]|\xE2\x80\xA2)\s*)");
  std::vector<std::string> out;
  std::istringstream in{std::string(reply)};
  std::string line;
  while (std::getline(in, line)) {
    line = std::regex_replace(line, marker, "", std::regex_constants::format_first_only);
    const auto q = trim_ws(line);
    if (!q.empty()) out.emplace_back(q);
  }
  return out;
}

}  // namespace gradeband
