#include "gradeband/text_stats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "gradeband/error.hpp"

namespace gradeband {

namespace {

enum class CharKind { Letter, Digit, Apostrophe, Hyphen, Other };

struct CodePoint {
  char32_t value;
  std::size_t size;  // bytes in the source
  CharKind kind;
};

CharKind classify(char32_t cp) {
  if (cp < 0x80) {
    const auto c = static_cast<unsigned char>(cp);
    if (std::isalpha(c)) return CharKind::Letter;
    if (std::isdigit(c)) return CharKind::Digit;
    if (c == '\'') return CharKind::Apostrophe;
    if (c == '-') return CharKind::Hyphen;
    return CharKind::Other;
  }
  if (cp == 0x2019 || cp == 0x02BC) return CharKind::Apostrophe;
  if (cp == 0x2010 || cp == 0x2011) return CharKind::Hyphen;
  if ((cp >= 0x80 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7) return CharKind::Other;
  if (cp >= 0x2000 && cp <= 0x2BFF) return CharKind::Other;  // punctuation, symbols, arrows
  if (cp >= 0x2E00 && cp <= 0x2E7F) return CharKind::Other;
  if (cp >= 0x3000 && cp <= 0x303F) return CharKind::Other;
  if (cp == 0xFEFF || cp == 0xFFFD) return CharKind::Other;
  return CharKind::Letter;
}

// Decodes one UTF-8 sequence at `pos`. Malformed bytes decode as U+FFFD of
// length 1.
CodePoint decode_at(std::string_view s, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  std::size_t len = 1;
  char32_t cp = lead;
  if (lead >= 0xC0 && lead < 0xE0) {
    len = 2;
    cp = lead & 0x1F;
  } else if (lead >= 0xE0 && lead < 0xF0) {
    len = 3;
    cp = lead & 0x0F;
  } else if (lead >= 0xF0 && lead < 0xF8) {
    len = 4;
    cp = lead & 0x07;
  } else if (lead >= 0x80) {
    return {0xFFFD, 1, CharKind::Other};
  }
  if (pos + len > s.size()) return {0xFFFD, 1, CharKind::Other};
  for (std::size_t k = 1; k < len; ++k) {
    const auto cont = static_cast<unsigned char>(s[pos + k]);
    if ((cont & 0xC0) != 0x80) return {0xFFFD, 1, CharKind::Other};
    cp = (cp << 6) | (cont & 0x3F);
  }
  return {cp, len, classify(cp)};
}

std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    out.push_back(decode_at(s, pos));
    pos += out.back().size;
  }
  return out;
}

bool is_word_char(CharKind k) { return k == CharKind::Letter || k == CharKind::Digit; }

bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      return false;
  }
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

int part_syllables(std::string_view part) {
  std::string letters;
  bool has_digit = false;
  for (char c : part) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u)) {
      letters.push_back(static_cast<char>(std::tolower(u)));
    } else if (std::isdigit(u)) {
      has_digit = true;
    } else if (u >= 0x80) {
      letters.push_back('#');  // non-ASCII letter byte, never a vowel
    }
  }
  if (letters.empty()) return has_digit ? 1 : 0;

  int groups = 0;
  bool prev_vowel = false;
  for (char c : letters) {
    const bool v = is_vowel(c);
    if (v && !prev_vowel) ++groups;
    prev_vowel = v;
  }
  const std::size_t n = letters.size();
  if (n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) && letters[n - 2] != 'l') {
    --groups;
  }
  return std::max(groups, 1);
}

// Closing punctuation that may trail a sentence terminator.
std::size_t closing_run(std::string_view text, std::size_t pos) {
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '.' || c == '!' || c == '?' || c == '"' || c == '\'' || c == ')' ||
        c == ']' || c == '}') {
      ++pos;
      continue;
    }
    if (text.substr(pos, 3) == "’" || text.substr(pos, 3) == "”" ||
        text.substr(pos, 3) == "…") {
      pos += 3;
      continue;
    }
    if (text.substr(pos, 2) == "»") {
      pos += 2;
      continue;
    }
    break;
  }
  return pos;
}

bool is_ascii_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ascii_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool ends_with_abbreviation(std::string_view text, std::size_t period, const WordSet& abbreviations) {
  std::size_t k = period;
  while (k > 0 && (is_ascii_letter(text[k - 1]) || text[k - 1] == '.')) --k;
  while (k < period && text[k] == '.') ++k;
  if (k == period) return false;
  return abbreviations.contains(to_lower(text.substr(k, period - k)));
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

WordSet parse_word_list(std::istream& in, std::string_view source_name) {
  WordSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    const bool bad = std::any_of(entry.begin(), entry.end(), [](char c) {
      return is_space(c) || std::isupper(static_cast<unsigned char>(c));
    });
    if (bad) {
      throw Error(ErrorKind::BadConfig,
                  std::string(source_name) + ": entry '" + std::string(entry) +
                      "' must be lowercase without whitespace",
                  line_no);
    }
    out.emplace(entry);
  }
  return out;
}

WordSet read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open word list " + path.string());
  return parse_word_list(in, path.string());
}

WordLists WordLists::load(const std::filesystem::path& dale_chall,
                          const std::filesystem::path& spache,
                          const std::filesystem::path& abbreviations) {
  return {read_word_list(dale_chall), read_word_list(spache), read_word_list(abbreviations)};
}

WordLists WordLists::load_directory(const std::filesystem::path& dir) {
  return load(dir / "dale_chall_familiar.txt", dir / "spache_familiar.txt",
              dir / "abbreviations.txt");
}

std::vector<std::string> tokenize_words(std::string_view sentence) {
  const auto cps = decode(sentence);
  std::vector<std::string> tokens;
  std::size_t pos = 0;  // byte offset of cps[i]
  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    if (!is_word_char(cps[i].kind)) {
      pos += cps[i].size;
      ++i;
      continue;
    }
    std::string token;
    while (i < n) {
      const auto& cp = cps[i];
      if (is_word_char(cp.kind)) {
        token.append(sentence.substr(pos, cp.size));
      } else if (i + 1 < n && is_word_char(cps[i + 1].kind) &&
                 (cp.kind == CharKind::Apostrophe || cp.kind == CharKind::Hyphen)) {
        token.push_back(cp.kind == CharKind::Apostrophe ? '\'' : '-');
      } else if (i + 1 < n && (cp.value == '.' || cp.value == ',') && i > 0 &&
                 cps[i - 1].kind == CharKind::Digit && cps[i + 1].kind == CharKind::Digit) {
        token.push_back(static_cast<char>(cp.value));
      } else {
        break;
      }
      pos += cp.size;
      ++i;
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

bool is_numeric_token(std::string_view word) {
  return std::none_of(word.begin(), word.end(), [](char c) {
    return is_ascii_letter(c) || static_cast<unsigned char>(c) >= 0x80;
  });
}

int count_syllables(std::string_view word) {
  if (is_numeric_token(word)) {
    throw Error(ErrorKind::NotAWord, "'" + std::string(word) + "' has no letters");
  }
  int total = 0;
  std::size_t start = 0;
  while (start <= word.size()) {
    const auto dash = word.find('-', start);
    const auto end = dash == std::string_view::npos ? word.size() : dash;
    total += part_syllables(word.substr(start, end - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return std::max(total, 1);
}

bool is_familiar(std::string_view lower_token, const WordSet& list) {
  if (is_numeric_token(lower_token)) return true;
  const std::string whole(lower_token);
  if (list.contains(whole)) return true;
  if (whole.size() > 2 && whole.ends_with("'s") && list.contains(whole.substr(0, whole.size() - 2))) {
    return true;
  }
  if (whole.find('-') == std::string::npos) return false;
  std::size_t start = 0;
  while (true) {
    const auto dash = whole.find('-', start);
    const auto part = whole.substr(start, dash == std::string::npos ? std::string::npos : dash - start);
    if (!part.empty() && is_familiar(part, list)) return true;
    if (dash == std::string::npos) return false;
    start = dash + 1;
  }
}

std::vector<std::string> segment_sentences(std::string_view text, const WordSet& abbreviations) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    const auto piece = trim(text.substr(start, end - start));
    if (!piece.empty() && !tokenize_words(piece).empty()) out.emplace_back(piece);
    start = end;
  };

  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      if (c == '.') {
        const bool decimal = i > 0 && i + 1 < n && is_ascii_digit(text[i - 1]) && is_ascii_digit(text[i + 1]);
        if (decimal || ends_with_abbreviation(text, i, abbreviations)) {
          ++i;
          continue;
        }
      }
      const std::size_t end = closing_run(text, i + 1);
      if (end == n || is_space(text[end])) {
        emit(end);
      }
      i = end;
      continue;
    }
    if (c == '\n') {
      std::size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < n && text[j] == '\n') {
        emit(i);
        i = j + 1;
        continue;
      }
    }
    ++i;
  }
  emit(n);
  if (out.empty()) throw Error(ErrorKind::EmptyText, "text contains no words");
  return out;
}

TextStats compute_text_stats(std::string_view text, const WordLists& lists) {
  TextStats stats;
  WordSet unique;
  for (const auto& sentence : segment_sentences(text, lists.abbreviations)) {
    const auto tokens = tokenize_words(sentence);
    stats.words_per_sentence.push_back(tokens.size());
    for (const auto& token : tokens) {
      for (std::size_t pos = 0; pos < token.size();) {
        const auto cp = decode_at(token, pos);
        if (cp.kind == CharKind::Letter) {
          ++stats.letters;
          ++stats.characters;
        } else if (cp.kind == CharKind::Digit) {
          ++stats.characters;
        }
        pos += cp.size;
      }
      const bool numeric = is_numeric_token(token);
      const int syllables = numeric ? 1 : count_syllables(token);
      stats.syllables += static_cast<std::size_t>(syllables);
      if (syllables >= 3) {
        ++stats.hard_words;
      } else {
        ++stats.easy_words;
      }
      auto lower = to_lower(token);
      if (!is_familiar(lower, lists.dale_chall)) ++stats.dc_difficult;
      unique.insert(std::move(lower));
    }
    stats.words += tokens.size();
  }
  stats.sentences = stats.words_per_sentence.size();
  stats.complex_words = stats.hard_words;
  stats.dc_difficult_pct = 100.0 * static_cast<double>(stats.dc_difficult) / static_cast<double>(stats.words);
  stats.unique_words = unique.size();
  for (const auto& word : unique) {
    if (!is_familiar(word, lists.spache)) ++stats.spache_unfamiliar_unique;
  }
  stats.spache_unfamiliar_pct =
      100.0 * static_cast<double>(stats.spache_unfamiliar_unique) / static_cast<double>(stats.unique_words);
  return stats;
}

}  // namespace gradeband
