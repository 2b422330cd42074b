#pragma once

// Synthetic prose whose difficulty is set by sentence length and by the mix
// of familiar short words and unfamiliar long ones.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace gradeband::testing {

// Familiar one-syllable words (on both familiar-word lists).
inline const std::vector<std::string_view> kFamiliarShort{
    "the",  "a",    "cat",  "dog",  "sun",  "run",  "big",  "red",  "is",   "and",  "we",   "see",  "go",
    "up",   "can",  "it",   "in",   "to",   "he",   "she",  "you",  "day",  "hot",  "fun",  "look", "play",
    "ball", "tree", "bird", "fish", "car",  "box",  "hat",  "cow",  "pig",  "bed",  "cup",  "top",  "sit",
    "hop",  "jump", "fast", "good", "new",  "old",  "my",   "not",  "was",  "has",  "had",  "get",  "let",
    "put",  "but",  "at",   "on",   "all",  "one",  "two",  "ten",  "sky",  "rain", "milk", "cake", "home",
    "boy",  "girl", "man",  "eat",  "help", "make", "like", "come", "said", "went", "what", "this", "that"};

// Familiar two-syllable words.
inline const std::vector<std::string_view> kFamiliarTwo{
    "water", "little", "yellow", "happy",  "mother", "father", "garden", "apple",  "better", "candy",
    "funny", "over",   "under",  "after",  "paper",  "sister", "window", "money",  "pretty", "rabbit",
    "morning", "people", "number", "river", "summer", "winter", "table",  "open",   "about",  "again",
    "along", "before", "behind", "into",   "other",  "very",   "only",   "never",  "until",  "upon"};

// Unfamiliar two-syllable words.
inline const std::vector<std::string_view> kUnfamiliarTwo{
    "vector", "cortex",  "enzyme",  "quantum", "plasma",  "fiscal",  "syntax", "tensor",  "neutron", "proton",
    "tariff", "nitrate", "genome",  "axon",    "lattice", "ferment", "mantle", "crustal", "glacial", "fungal",
    "pigment", "solvent", "spectrum", "kinase", "ligand", "photon",  "turbine", "doctrine", "treaty", "statute",
    "verdict", "census", "cohort",  "neural"};

// Unfamiliar words of three or more syllables.
inline const std::vector<std::string_view> kUnfamiliarLong{
    "photosynthesis", "atmospheric",    "electromagnetic", "wavelength",    "dispersion",     "molecular",
    "organization",   "characteristic", "fundamental",     "hypothesis",    "consideration",  "infrastructure",
    "sophisticated",  "interpretation", "phenomenon",      "approximately", "environmental",  "simultaneously",
    "predominantly",  "configuration",  "chlorophyll",     "mitochondria",  "metabolism",     "equilibrium",
    "thermodynamic",  "gravitational",  "velocity",        "acceleration",  "precipitation",  "evaporation",
    "condensation",   "ecosystem",      "biodiversity",    "legislation",   "constitutional", "jurisdiction",
    "sovereignty",    "economical",     "inflationary",    "monetary",      "amplitude",      "frequency",
    "refraction",     "polarization",   "luminosity",      "hemisphere",    "latitude",       "longitude",
    "continental",    "volcanic",       "sedimentary",     "metamorphic",   "erosion",        "respiration",
    "circulation",    "digestion",      "vertebrate",      "invertebrate",  "organism",       "cellular",
    "genetic",        "hereditary",     "mutation",        "evolutionary",  "adaptation",     "population",
    "democracy",      "parliamentary",  "bureaucracy",     "ideology",      "philosophy",     "psychology",
    "sociology",      "anthropology",   "archaeology",     "literature",    "metaphorical",   "allegory",
    "narrative"};

struct FixtureStyle {
  int words_per_sentence = 8;  // sentence lengths vary by +-2 around this
  double share_familiar_two = 0.0;
  double share_unfamiliar_two = 0.0;
  double share_unfamiliar_long = 0.0;
  std::size_t familiar_vocabulary = 40;  // prefix of kFamiliarShort in use
  int target_words = 120;
};

inline std::string fixture_text(const FixtureStyle& style, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> jitter(-2, 2);
  const std::size_t familiar = std::clamp<std::size_t>(style.familiar_vocabulary, 1, kFamiliarShort.size());
  auto pick = [&](const std::vector<std::string_view>& pool, std::size_t n) {
    return pool[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
  };

  std::string out;
  int words = 0;
  while (words < style.target_words) {
    const int length = std::max(2, style.words_per_sentence + jitter(rng));
    for (int w = 0; w < length; ++w) {
      const double u = unit(rng);
      double edge = style.share_unfamiliar_long;
      std::string word;
      if (u < edge) {
        word = pick(kUnfamiliarLong, kUnfamiliarLong.size());
      } else if (u < (edge += style.share_unfamiliar_two)) {
        word = pick(kUnfamiliarTwo, kUnfamiliarTwo.size());
      } else if (u < (edge += style.share_familiar_two)) {
        word = pick(kFamiliarTwo, kFamiliarTwo.size());
      } else {
        word = pick(kFamiliarShort, familiar);
      }
      if (w == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      if (!out.empty()) out += ' ';
      out += word;
    }
    out += '.';
    words += length;
  }
  return out;
}

}  // namespace gradeband::testing
