#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace gradeband {

using WordSet = std::unordered_set<std::string>;

/// Familiar-word lists and the abbreviation list used for segmentation.
/// Entries are lowercase, nonempty and free of whitespace.
struct WordLists {
  WordSet dale_chall;
  WordSet spache;
  WordSet abbreviations;

  static WordLists load(const std::filesystem::path& dale_chall,
                        const std::filesystem::path& spache,
                        const std::filesystem::path& abbreviations);

  /// Lists shipped in the data directory (dale_chall_familiar.txt,
  /// spache_familiar.txt, abbreviations.txt).
  static WordLists load_directory(const std::filesystem::path& dir);
};

/// One word per line, '#' starts a comment line, blank lines ignored.
/// Throws BadConfig for entries that are not lowercase or contain whitespace.
WordSet parse_word_list(std::istream& in, std::string_view source_name);
WordSet read_word_list(const std::filesystem::path& path);

/// Token-level counts feeding every readability formula.
struct TextStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t syllables = 0;
  std::size_t characters = 0;  // letters and digits
  std::size_t letters = 0;
  std::size_t complex_words = 0;  // three or more syllables
  std::size_t easy_words = 0;     // at most two syllables
  std::size_t hard_words = 0;     // three or more syllables
  std::size_t dc_difficult = 0;
  double dc_difficult_pct = 0.0;
  std::size_t unique_words = 0;
  std::size_t spache_unfamiliar_unique = 0;
  double spache_unfamiliar_pct = 0.0;
  std::vector<std::size_t> words_per_sentence;

  bool operator==(const TextStats&) const = default;
};

/// Splits on '.', '!' and '?' (plus runs of closing quotes/brackets) when
/// followed by whitespace or end of text, and on blank lines. A period does
/// not split after a listed abbreviation or between two digits.
/// Fragments without a word token are dropped. Throws EmptyText when the
/// text holds no word at all.
std::vector<std::string> segment_sentences(std::string_view text,
                                           const WordSet& abbreviations);

/// Maximal runs of letters and digits, joined by internal apostrophes,
/// internal hyphens, and '.'/',' between digits. Typographic apostrophes and
/// hyphens are normalized to ASCII. Case is preserved.
std::vector<std::string> tokenize_words(std::string_view sentence);

/// Vowel groups over a,e,i,o,u,y minus a silent final "e" (but not "le"),
/// floored at 1. Hyphenated compounds are the sum of their parts.
/// Throws NotAWord if the word has no letter.
int count_syllables(std::string_view word);

/// True if `word` has no letters (a number such as "42" or "3.14").
bool is_numeric_token(std::string_view word);

std::string to_lower(std::string_view s);

/// Lookup of a lowercase token: whole token, then with a possessive "'s"
/// stripped, then each hyphen-separated part (one hit is enough).
bool is_familiar(std::string_view lower_token, const WordSet& list);

TextStats compute_text_stats(std::string_view text, const WordLists& lists);

}  // namespace gradeband
