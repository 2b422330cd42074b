#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradeband/error.hpp"
#include "gradeband/grade_band.hpp"
#include "gradeband/integration.hpp"
#include "gradeband/metrics.hpp"
#include "gradeband/provider.hpp"
#include "gradeband/text_stats.hpp"

namespace gradeband {

struct CorpusRecord {
  std::string id;
  std::string question;
  std::string answer;
  std::optional<std::string> field;
  std::optional<std::string> subject;
  std::optional<GradeBand> target_band;

  bool operator==(const CorpusRecord&) const = default;
};

/// A record or line that could not be processed.
struct RecordIssue {
  std::size_t line = 0;  // 1-based input line, 0 when not tied to a line
  std::string id;
  ErrorKind kind = ErrorKind::ParseError;
  std::string message;
};

/// Parses one JSON Lines record {"id","question","answer","field"?,
/// "subject"?,"target_band"?}. Throws ParseError or MissingField.
CorpusRecord parse_record(std::string_view line, std::size_t line_no);
nlohmann::ordered_json to_json(const CorpusRecord& rec);

/// Streams records from JSON Lines. Blank lines are skipped. Malformed
/// lines and duplicate ids throw unless `lenient`, in which case they are
/// collected in issues().
class RecordReader {
 public:
  RecordReader(std::istream& in, bool lenient);

  std::optional<CorpusRecord> next();

  const std::vector<RecordIssue>& issues() const noexcept { return issues_; }
  std::size_t lines_read() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  bool lenient_;
  std::size_t line_no_ = 0;
  std::vector<RecordIssue> issues_;
  std::unordered_set<std::string> seen_ids_;
};

struct LoadResult {
  std::vector<CorpusRecord> records;
  std::vector<RecordIssue> skipped;
  std::vector<std::string> warnings;
};

LoadResult read_records(std::istream& in, bool lenient);
/// Throws IoError if the file cannot be opened.
LoadResult load_records(const std::filesystem::path& path, bool lenient);

struct ClassifiedRecord {
  CorpusRecord record;
  MetricReport report;
  IntegrationResult integration;
  GradeBand ari_band;

  bool operator==(const ClassifiedRecord&) const = default;
};

ClassifiedRecord classify_record(const CorpusRecord& rec, const WordLists& lists, const BandMappingConfig& cfg);

/// Record fields plus "band", "decided_by", "scores" (seven raw scores),
/// "metric_bands", "group_votes", "ari", "ari_band".
nlohmann::ordered_json to_json(const ClassifiedRecord& rec);

struct ClassificationRun {
  std::vector<ClassifiedRecord> classified;  // input order
  std::vector<RecordIssue> failures;         // e.g. answers without words
};

/// Classifies records on `jobs` threads; output order equals input order.
ClassificationRun classify_all(std::span<const CorpusRecord> records, const WordLists& lists,
                               const BandMappingConfig& cfg, unsigned jobs);

struct DistributionSummary {
  std::array<std::size_t, GradeBand::kCount> counts{};
  std::size_t total = 0;

  void add(GradeBand band) {
    ++counts[static_cast<std::size_t>(band.index() - 1)];
    ++total;
  }
  bool operator==(const DistributionSummary&) const = default;
};

nlohmann::ordered_json to_json(const DistributionSummary& summary);

std::filesystem::path band_file(const std::filesystem::path& dir, GradeBand band);

/// Writes each classified record (as a classified JSON line) to
/// band_<k>.jsonl in `out_dir`. All six files are created, possibly empty.
DistributionSummary partition_corpus(std::span<const ClassifiedRecord> records,
                                     const std::filesystem::path& out_dir);

/// Fine-tuning formats. "chat": {"messages":[{"role":"user",...},
/// {"role":"assistant",...}]}.
enum class FinetuneFormat { Chat };

/// Throws UnknownFormat.
FinetuneFormat parse_finetune_format(std::string_view id);
std::string finetune_line(std::string_view question, std::string_view answer, FinetuneFormat format);

/// Reads band_<k>.jsonl from `partition_dir` and writes
/// finetune_band_<k>.jsonl to `out_dir`. Returns lines written per band.
std::array<std::size_t, GradeBand::kCount> emit_finetune_files(const std::filesystem::path& partition_dir,
                                                               const std::filesystem::path& out_dir,
                                                               std::string_view format_id);

// --- answer-generation prompts -------------------------------------------

inline constexpr std::array<int, 9> kSentenceLengthCaps{4, 5, 6, 7, 8, 10, 12, 15, 20};

/// "elementary school 1st grade", ..., "college".
std::string_view grade_phrase(GradeBand band);
/// "very easy" (bands 1-2), "fairly easy" (3-4), "fairly difficult" (5-6).
std::string_view difficulty_phrase(GradeBand band);

std::string render_answer_instruction(std::string_view difficulty, std::string_view grade, int max_words);

struct GenerationPrompt {
  GradeBand band;
  std::string grade_label;
  int max_words_per_sentence = 0;
  std::string difficulty_phrase;
  std::string rendered_text;  // the instruction alone
  std::string question;

  /// What is sent to a provider: the question, a blank line, the instruction.
  std::string message() const;
};

/// 6 grade labels x 9 sentence-length caps. Throws EmptyQuestion.
std::vector<GenerationPrompt> expand_prompts(std::string_view question);

struct GenerationFailure {
  std::size_t item = 0;  // index into the prompt list
  std::string id;
  std::string message;
};

struct GenerationOutcome {
  std::vector<CorpusRecord> records;
  std::vector<GenerationFailure> failures;
};

/// One provider call per prompt with retry; failures are recorded per item.
/// Record ids are "<question_id>-b<band>-w<cap>" and target_band is the
/// prompt's band.
GenerationOutcome generate_answers(std::string_view question_id, std::span<const GenerationPrompt> prompts,
                                   TextProvider& provider, const RetryPolicy& retry,
                                   TokenBucket* limiter = nullptr,
                                   const std::optional<std::string>& field = std::nullopt,
                                   const std::optional<std::string>& subject = std::nullopt);

// --- question generation ----------------------------------------------------

struct SubjectArea {
  std::string field;
  std::vector<std::string> subjects;
};

/// {"fields": [{"name": "science", "subjects": ["biology", ...]}, ...]}
std::vector<SubjectArea> load_taxonomy(const std::filesystem::path& path);
std::vector<SubjectArea> parse_taxonomy(const nlohmann::json& j);

struct QuestionPrompt {
  std::string field;
  std::string subject;
  std::string text;
};

std::vector<QuestionPrompt> question_generation_prompts(std::span<const SubjectArea> taxonomy,
                                                        int questions_per_prompt);

/// Splits a provider reply into questions: one per nonempty line, list
/// markers ("1.", "-", "*") stripped.
std::vector<std::string> parse_question_list(std::string_view reply);

}  // namespace gradeband
