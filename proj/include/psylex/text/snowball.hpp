#pragma once

// Snowball stemmers for English (Porter2), Dutch, German and Italian.
// Each follows the published Snowball algorithm (the classic 2.x definitions);
// the golden files under tests/data/stems pin their output.
//
// Regions (R1, R2, RV) are indices into the word; a suffix is "in R1" when it
// starts at or after p1. Only the tail of the word is ever rewritten, so the
// indices stay valid while the steps run.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace psylex::snowball {

using Word = std::u32string;
using View = std::u32string_view;

namespace detail {

inline bool ends_with(const Word& w, View suffix, std::size_t limit = 0) {
  return w.size() >= suffix.size() && w.size() - suffix.size() >= limit &&
         View(w).substr(w.size() - suffix.size()) == suffix;
}

/// Longest candidate `w` ends with that starts at or after `limit`; empty when
/// none matches. Snowball never falls back to a shorter suffix when the region
/// test on the longest one fails, and neither do the callers.
inline View longest_suffix(const Word& w, std::initializer_list<View> candidates,
                           std::size_t limit = 0) {
  View best;
  for (View c : candidates)
    if (c.size() > best.size() && ends_with(w, c, limit)) best = c;
  return best;
}

inline bool is_one_of(char32_t c, View set) { return set.find(c) != View::npos; }

inline void replace_suffix(Word& w, std::size_t suffix_len, View with) {
  w.replace(w.size() - suffix_len, suffix_len, with);
}

/// Start of the region after the first non-vowel that follows a vowel,
/// scanning from `from`; `w.size()` when there is none.
template <class IsVowel>
std::size_t region_after(const Word& w, std::size_t from, IsVowel is_vowel) {
  std::size_t i = from;
  while (i < w.size() && !is_vowel(w[i])) ++i;
  while (i < w.size() && is_vowel(w[i])) ++i;
  return i < w.size() ? i + 1 : w.size();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// English (Porter2)
// ---------------------------------------------------------------------------
class English {
 public:
  static Word stem(Word word) {
    if (auto special = exception1(word)) return *special;
    if (word.size() < 3) return word;
    English s(std::move(word));
    s.run();
    return std::move(s.w_);
  }

 private:
  explicit English(Word w) : w_(std::move(w)) {}

  static bool vowel(char32_t c) { return detail::is_one_of(c, U"aeiouy"); }

  static std::optional<Word> exception1(const Word& w) {
    static constexpr std::pair<View, View> table[] = {
        {U"skis", U"ski"},    {U"skies", U"sky"},    {U"dying", U"die"},    {U"lying", U"lie"},
        {U"tying", U"tie"},   {U"idly", U"idl"},     {U"gently", U"gentl"}, {U"ugly", U"ugli"},
        {U"early", U"earli"}, {U"only", U"onli"},    {U"singly", U"singl"}, {U"sky", U"sky"},
        {U"news", U"news"},   {U"howe", U"howe"},    {U"atlas", U"atlas"},  {U"cosmos", U"cosmos"},
        {U"bias", U"bias"},   {U"andes", U"andes"}};
    for (const auto& [from, to] : table)
      if (w == from) return Word(to);
    return std::nullopt;
  }

  // Words left alone after step 1a.
  bool exception2() const {
    for (View v : {U"inning", U"outing", U"canning", U"herring", U"earring", U"proceed",
                   U"exceed", U"succeed"})
      if (w_ == v) return true;
    return false;
  }

  void run() {
    prelude();
    mark_regions();
    step_1a();
    if (!exception2()) {
      step_1b();
      step_1c();
      step_2();
      step_3();
      step_4();
      step_5();
    }
    std::replace(w_.begin(), w_.end(), U'Y', U'y');
  }

  void prelude() {
    if (w_.front() == U'\'') w_.erase(0, 1);
    if (!w_.empty() && w_.front() == U'y') w_.front() = U'Y';
    for (std::size_t i = 1; i < w_.size(); ++i)
      if (w_[i] == U'y' && vowel(w_[i - 1])) w_[i] = U'Y';
  }

  void mark_regions() {
    std::size_t start = 0;
    for (View prefix : {U"gener", U"commun", U"arsen"})
      if (View(w_).starts_with(prefix)) start = prefix.size();
    p1_ = start ? start : detail::region_after(w_, 0, vowel);
    p2_ = detail::region_after(w_, p1_, vowel);
  }

  // Short syllable ending just before `end`: non-vowel, vowel, non-vowel other
  // than w/x/Y; or vowel, non-vowel at the very start of the word.
  bool short_syllable_before(std::size_t end) const {
    if (end >= 3) {
      const char32_t a = w_[end - 3], b = w_[end - 2], c = w_[end - 1];
      if (!vowel(a) && vowel(b) && !vowel(c) && c != U'w' && c != U'x' && c != U'Y') return true;
    }
    return end == 2 && vowel(w_[0]) && !vowel(w_[1]);
  }

  bool vowel_before(std::size_t end) const {
    return std::any_of(w_.begin(), w_.begin() + static_cast<std::ptrdiff_t>(end), vowel);
  }

  void step_1a() {
    if (auto s = detail::longest_suffix(w_, {U"'", U"'s'", U"'s"}); !s.empty())
      w_.resize(w_.size() - s.size());

    const View s = detail::longest_suffix(w_, {U"sses", U"ied", U"ies", U"s", U"ss", U"us"});
    if (s == U"sses") {
      detail::replace_suffix(w_, 4, U"ss");
    } else if (s == U"ied" || s == U"ies") {
      detail::replace_suffix(w_, 3, w_.size() > 4 ? U"i" : U"ie");
    } else if (s == U"s") {
      // Needs a vowel somewhere before the letter preceding the s.
      if (w_.size() >= 2 && vowel_before(w_.size() - 2)) w_.pop_back();
    }
  }

  void step_1b() {
    const View s =
        detail::longest_suffix(w_, {U"eed", U"eedly", U"ed", U"edly", U"ing", U"ingly"});
    if (s.empty()) return;
    const std::size_t base = w_.size() - s.size();
    if (s == U"eed" || s == U"eedly") {
      if (base >= p1_) detail::replace_suffix(w_, s.size(), U"ee");
      return;
    }
    if (!vowel_before(base)) return;
    w_.resize(base);
    if (detail::ends_with(w_, U"at") || detail::ends_with(w_, U"bl") ||
        detail::ends_with(w_, U"iz")) {
      w_.push_back(U'e');
    } else if (w_.size() >= 2 && w_.back() == w_[w_.size() - 2] &&
               detail::is_one_of(w_.back(), U"bdfgmnprt")) {
      w_.pop_back();
    } else if (w_.size() == p1_ && short_syllable_before(w_.size())) {
      w_.push_back(U'e');
    }
  }

  void step_1c() {
    if (w_.size() < 3) return;
    const char32_t last = w_.back();
    if ((last == U'y' || last == U'Y') && !vowel(w_[w_.size() - 2])) w_.back() = U'i';
  }

  using Rule = std::pair<View, View>;

  template <std::size_t N>
  const Rule* longest_rule(const Rule (&rules)[N]) const {
    const Rule* best = nullptr;
    for (const auto& r : rules)
      if (detail::ends_with(w_, r.first) && (!best || r.first.size() > best->first.size()))
        best = &r;
    return best;
  }

  void step_2() {
    static constexpr Rule rules[] = {
        {U"tional", U"tion"}, {U"enci", U"ence"},   {U"anci", U"ance"},   {U"abli", U"able"},
        {U"entli", U"ent"},   {U"izer", U"ize"},    {U"ization", U"ize"}, {U"ational", U"ate"},
        {U"ation", U"ate"},   {U"ator", U"ate"},    {U"alism", U"al"},    {U"aliti", U"al"},
        {U"alli", U"al"},     {U"fulness", U"ful"}, {U"ousli", U"ous"},   {U"ousness", U"ous"},
        {U"iveness", U"ive"}, {U"iviti", U"ive"},   {U"biliti", U"ble"},  {U"bli", U"ble"},
        {U"ogi", U"og"},      {U"fulli", U"ful"},   {U"lessli", U"less"}, {U"li", U""}};
    const Rule* rule = longest_rule(rules);
    if (!rule) return;
    const std::size_t base = w_.size() - rule->first.size();
    if (base < p1_) return;
    if (rule->first == U"ogi" && (base == 0 || w_[base - 1] != U'l')) return;
    if (rule->first == U"li" && (base == 0 || !detail::is_one_of(w_[base - 1], U"cdeghkmnrt")))
      return;
    detail::replace_suffix(w_, rule->first.size(), rule->second);
  }

  void step_3() {
    static constexpr Rule rules[] = {
        {U"tional", U"tion"}, {U"ational", U"ate"}, {U"alize", U"al"}, {U"icate", U"ic"},
        {U"iciti", U"ic"},    {U"ical", U"ic"},     {U"ful", U""},     {U"ness", U""},
        {U"ative", U""}};
    const Rule* rule = longest_rule(rules);
    if (!rule) return;
    const std::size_t base = w_.size() - rule->first.size();
    if (base < p1_ || (rule->first == U"ative" && base < p2_)) return;
    detail::replace_suffix(w_, rule->first.size(), rule->second);
  }

  void step_4() {
    const View s = detail::longest_suffix(
        w_, {U"al", U"ance", U"ence", U"er", U"ic", U"able", U"ible", U"ant", U"ement", U"ment",
             U"ent", U"ism", U"ate", U"iti", U"ous", U"ive", U"ize", U"ion"});
    if (s.empty()) return;
    const std::size_t base = w_.size() - s.size();
    if (base < p2_) return;
    if (s == U"ion" && (base == 0 || (w_[base - 1] != U's' && w_[base - 1] != U't'))) return;
    w_.resize(base);
  }

  void step_5() {
    if (w_.empty()) return;
    const std::size_t base = w_.size() - 1;
    if (w_.back() == U'e') {
      if (base >= p2_ || (base >= p1_ && !short_syllable_before(base))) w_.pop_back();
    } else if (w_.back() == U'l') {
      if (base >= p2_ && base > 0 && w_[base - 1] == U'l') w_.pop_back();
    }
  }

  Word w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
};

// ---------------------------------------------------------------------------
// Dutch
// ---------------------------------------------------------------------------
class Dutch {
 public:
  static Word stem(Word word) {
    Dutch s(std::move(word));
    s.run();
    return std::move(s.w_);
  }

 private:
  explicit Dutch(Word w) : w_(std::move(w)) {}

  static bool vowel(char32_t c) { return detail::is_one_of(c, U"aeiouyè"); }

  void run() {
    prelude();
    mark_regions();
    standard_suffix();
    for (auto& c : w_) {
      if (c == U'I') c = U'i';
      if (c == U'Y') c = U'y';
    }
  }

  void prelude() {
    for (auto& c : w_) {
      switch (c) {
        case U'á': case U'ä': c = U'a'; break;
        case U'é': case U'ë': c = U'e'; break;
        case U'í': case U'ï': c = U'i'; break;
        case U'ó': case U'ö': c = U'o'; break;
        case U'ú': case U'ü': c = U'u'; break;
        default: break;
      }
    }
    if (!w_.empty() && w_.front() == U'y') w_.front() = U'Y';
    for (std::size_t i = 0; i + 1 < w_.size(); ++i) {
      if (!vowel(w_[i])) continue;
      if (w_[i + 1] == U'i' && i + 2 < w_.size() && vowel(w_[i + 2]))
        w_[i + 1] = U'I';
      else if (w_[i + 1] == U'y')
        w_[i + 1] = U'Y';
    }
  }

  void mark_regions() {
    const std::size_t r1 = detail::region_after(w_, 0, vowel);
    p1_ = r1 == w_.size() ? r1 : std::max<std::size_t>(r1, 3);
    p2_ = detail::region_after(w_, r1, vowel);
  }

  void undouble() {
    if (detail::ends_with(w_, U"dd") || detail::ends_with(w_, U"kk") ||
        detail::ends_with(w_, U"tt"))
      w_.pop_back();
  }

  // -en / -ene ending starting at `base`.
  bool en_ending(std::size_t base) {
    if (base < p1_ || base == 0 || vowel(w_[base - 1])) return false;
    if (base >= 3 && View(w_).substr(base - 3, 3) == U"gem") return false;
    w_.resize(base);
    undouble();
    return true;
  }

  void e_ending() {
    e_found_ = false;
    if (w_.empty() || w_.back() != U'e') return;
    const std::size_t base = w_.size() - 1;
    if (base < p1_ || base == 0 || vowel(w_[base - 1])) return;
    w_.pop_back();
    e_found_ = true;
    undouble();
  }

  bool in_r2(std::size_t suffix_len) const { return w_.size() - suffix_len >= p2_; }

  void standard_suffix() {
    // Step 1.
    if (const View s = detail::longest_suffix(w_, {U"heden", U"ene", U"en", U"se", U"s"});
        !s.empty()) {
      const std::size_t base = w_.size() - s.size();
      if (s == U"heden") {
        if (base >= p1_) detail::replace_suffix(w_, s.size(), U"heid");
      } else if (s == U"en" || s == U"ene") {
        en_ending(base);
      } else if (base >= p1_ && base > 0 && !vowel(w_[base - 1]) && w_[base - 1] != U'j') {
        w_.resize(base);
      }
    }

    // Step 2.
    e_ending();

    // Step 3a.
    if (detail::ends_with(w_, U"heid") && in_r2(4)) {
      const std::size_t base = w_.size() - 4;
      if (base == 0 || w_[base - 1] != U'c') {
        w_.resize(base);
        if (detail::ends_with(w_, U"en")) en_ending(w_.size() - 2);
      }
    }

    // Step 3b.
    if (const View s =
            detail::longest_suffix(w_, {U"end", U"ig", U"ing", U"lijk", U"baar", U"bar"});
        !s.empty() && in_r2(s.size())) {
      const std::size_t base = w_.size() - s.size();
      if (s == U"end" || s == U"ing") {
        w_.resize(base);
        if (detail::ends_with(w_, U"ig") && in_r2(2) &&
            !(w_.size() >= 3 && w_[w_.size() - 3] == U'e'))
          w_.resize(w_.size() - 2);
        else
          undouble();
      } else if (s == U"ig") {
        if (base == 0 || w_[base - 1] != U'e') w_.resize(base);
      } else if (s == U"lijk") {
        w_.resize(base);
        e_ending();
      } else if (s == U"baar") {
        w_.resize(base);
      } else if (e_found_) {  // bar
        w_.resize(base);
      }
    }

    // Step 4: undouble a vowel in a final consonant-VV-consonant.
    const std::size_t n = w_.size();
    if (n >= 4 && !vowel(w_[n - 1]) && w_[n - 1] != U'I' && w_[n - 2] == w_[n - 3] &&
        detail::is_one_of(w_[n - 2], U"aeou") && !vowel(w_[n - 4]))
      w_.erase(n - 2, 1);
  }

  Word w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
  bool e_found_ = false;
};

// ---------------------------------------------------------------------------
// German
// ---------------------------------------------------------------------------
class German {
 public:
  static Word stem(Word word) {
    German s(std::move(word));
    s.run();
    return std::move(s.w_);
  }

 private:
  explicit German(Word w) : w_(std::move(w)) {}

  static bool vowel(char32_t c) { return detail::is_one_of(c, U"aeiouyäöü"); }

  void run() {
    prelude();
    mark_regions();
    step_1();
    step_2();
    step_3();
    for (auto& c : w_) {
      switch (c) {
        case U'Y': c = U'y'; break;
        case U'U': case U'ü': c = U'u'; break;
        case U'ä': c = U'a'; break;
        case U'ö': c = U'o'; break;
        default: break;
      }
    }
  }

  void prelude() {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] == U'ß') w_.replace(i, 1, U"ss");
    for (std::size_t i = 0; i + 2 < w_.size(); ++i) {
      if (!vowel(w_[i]) || !vowel(w_[i + 2])) continue;
      if (w_[i + 1] == U'u') w_[i + 1] = U'U';
      else if (w_[i + 1] == U'y') w_[i + 1] = U'Y';
    }
  }

  void mark_regions() {
    p1_ = p2_ = w_.size();
    if (w_.size() < 3) return;
    const std::size_t r1 = detail::region_after(w_, 0, vowel);
    if (r1 == w_.size()) return;
    p1_ = std::max<std::size_t>(r1, 3);
    p2_ = detail::region_after(w_, r1, vowel);
  }

  void step_1() {
    const View s = detail::longest_suffix(w_, {U"e", U"em", U"en", U"ern", U"er", U"s", U"es"});
    if (s.empty()) return;
    const std::size_t base = w_.size() - s.size();
    if (base < p1_) return;
    if (s == U"em" || s == U"ern" || s == U"er") {
      w_.resize(base);
    } else if (s == U"e" || s == U"en" || s == U"es") {
      w_.resize(base);
      if (detail::ends_with(w_, U"niss")) w_.pop_back();
    } else if (base > 0 && detail::is_one_of(w_[base - 1], U"bdfghklmnrt")) {
      w_.resize(base);
    }
  }

  void step_2() {
    const View s = detail::longest_suffix(w_, {U"en", U"er", U"st", U"est"});
    if (s.empty()) return;
    const std::size_t base = w_.size() - s.size();
    if (base < p1_) return;
    if (s != U"st") {
      w_.resize(base);
    } else if (base >= 4 && detail::is_one_of(w_[base - 1], U"bdfghklmnt")) {
      w_.resize(base);
    }
  }

  void step_3() {
    const View s = detail::longest_suffix(
        w_, {U"end", U"ig", U"ung", U"lich", U"isch", U"ik", U"heit", U"keit"});
    if (s.empty()) return;
    const std::size_t base = w_.size() - s.size();
    if (base < p2_) return;
    const auto preceded_by_e = [&](std::size_t at) { return at > 0 && w_[at - 1] == U'e'; };
    if (s == U"end" || s == U"ung") {
      w_.resize(base);
      if (detail::ends_with(w_, U"ig") && !preceded_by_e(w_.size() - 2) && w_.size() - 2 >= p2_)
        w_.resize(w_.size() - 2);
    } else if (s == U"ig" || s == U"ik" || s == U"isch") {
      if (!preceded_by_e(base)) w_.resize(base);
    } else if (s == U"lich" || s == U"heit") {
      w_.resize(base);
      if ((detail::ends_with(w_, U"er") || detail::ends_with(w_, U"en")) && w_.size() - 2 >= p1_)
        w_.resize(w_.size() - 2);
    } else {  // keit
      w_.resize(base);
      if (const View t = detail::longest_suffix(w_, {U"ig", U"lich"});
          !t.empty() && w_.size() - t.size() >= p2_)
        w_.resize(w_.size() - t.size());
    }
  }

  Word w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
};

// ---------------------------------------------------------------------------
// Italian
// ---------------------------------------------------------------------------
class Italian {
 public:
  static Word stem(Word word) {
    Italian s(std::move(word));
    s.run();
    return std::move(s.w_);
  }

 private:
  explicit Italian(Word w) : w_(std::move(w)) {}

  static bool vowel(char32_t c) {
    return detail::is_one_of(c, U"aeiouàèìòù");
  }

  void run() {
    prelude();
    mark_regions();
    attached_pronoun();
    if (!standard_suffix()) verb_suffix();
    vowel_suffix();
    for (auto& c : w_) {
      if (c == U'I') c = U'i';
      if (c == U'U') c = U'u';
    }
  }

  void prelude() {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      switch (w_[i]) {
        case U'á': w_[i] = U'à'; break;
        case U'é': w_[i] = U'è'; break;
        case U'í': w_[i] = U'ì'; break;
        case U'ó': w_[i] = U'ò'; break;
        case U'ú': w_[i] = U'ù'; break;
        case U'q':
          if (i + 1 < w_.size() && w_[i + 1] == U'u') w_[++i] = U'U';
          break;
        default: break;
      }
    }
    for (std::size_t i = 0; i + 2 < w_.size(); ++i) {
      if (!vowel(w_[i]) || !vowel(w_[i + 2])) continue;
      if (w_[i + 1] == U'u') w_[i + 1] = U'U';
      else if (w_[i + 1] == U'i') w_[i + 1] = U'I';
    }
  }

  void mark_regions() {
    const std::size_t n = w_.size();
    const auto next_vowel = [&](std::size_t from) {
      while (from < n && !vowel(w_[from])) ++from;
      return from;
    };
    const auto next_consonant = [&](std::size_t from) {
      while (from < n && vowel(w_[from])) ++from;
      return from;
    };

    pv_ = n;
    if (n >= 2) {
      if (vowel(w_[0])) {
        if (!vowel(w_[1])) {
          if (auto j = next_vowel(2); j < n) pv_ = j + 1;
        } else if (auto j = next_consonant(2); j < n) {
          pv_ = j + 1;
        }
      } else if (!vowel(w_[1])) {
        if (auto j = next_vowel(2); j < n) pv_ = j + 1;
      } else if (n >= 3) {
        pv_ = 3;
      }
    }
    p1_ = detail::region_after(w_, 0, vowel);
    p2_ = detail::region_after(w_, p1_, vowel);
  }

  bool in(std::size_t region, std::size_t suffix_len) const {
    return w_.size() - suffix_len >= region;
  }

  void attached_pronoun() {
    const View pronoun = detail::longest_suffix(
        w_, {U"ci",     U"gli",    U"la",     U"le",     U"li",     U"lo",     U"mi",
             U"ne",     U"si",     U"ti",     U"vi",     U"sene",   U"gliela", U"gliele",
             U"glieli", U"glielo", U"gliene", U"mela",   U"mele",   U"meli",   U"melo",
             U"mene",   U"tela",   U"tele",   U"teli",   U"telo",   U"tene",   U"cela",
             U"cele",   U"celi",   U"celo",   U"cene",   U"vela",   U"vele",   U"veli",
             U"velo",   U"vene"});
    if (pronoun.empty()) return;
    Word stem_part = w_.substr(0, w_.size() - pronoun.size());
    const View ending =
        detail::longest_suffix(stem_part, {U"ando", U"endo", U"ar", U"er", U"ir"});
    if (ending.empty() || stem_part.size() - ending.size() < pv_) return;
    if (ending == U"ando" || ending == U"endo")
      w_.resize(stem_part.size());
    else
      detail::replace_suffix(w_, pronoun.size(), U"e");
  }

  // Returns false when no standard suffix was removed.
  bool standard_suffix() {
    const View s = detail::longest_suffix(
        w_, {U"ica",    U"logia",  U"osa",    U"ista",   U"iva",    U"anza",   U"enza",
             U"ice",    U"atrice", U"iche",   U"logie",  U"abile",  U"ibile",  U"usione",
             U"azione", U"uzione", U"atore",  U"ose",    U"ante",   U"mente",  U"amente",
             U"iste",   U"ive",    U"anze",   U"enze",   U"ici",    U"atrici", U"ichi",
             U"abili",  U"ibili",  U"ismi",   U"usioni", U"azioni", U"uzioni", U"atori",
             U"osi",    U"anti",   U"amenti", U"imenti", U"isti",   U"ivi",    U"ico",
             U"ismo",   U"oso",    U"amento", U"imento", U"ivo",    U"ità",
             U"istà", U"istè", U"istì"});
    if (s.empty()) return false;
    const std::size_t len = s.size();
    const auto drop_if_r2 = [&](View t) {
      if (detail::ends_with(w_, t) && in(p2_, t.size())) {
        w_.resize(w_.size() - t.size());
        return true;
      }
      return false;
    };

    if (s == U"azione" || s == U"azioni" || s == U"atore" || s == U"atori") {
      if (!in(p2_, len)) return false;
      w_.resize(w_.size() - len);
      drop_if_r2(U"ic");
    } else if (s == U"logia" || s == U"logie") {
      if (!in(p2_, len)) return false;
      detail::replace_suffix(w_, len, U"log");
    } else if (s == U"usione" || s == U"usioni" || s == U"uzione" || s == U"uzioni") {
      if (!in(p2_, len)) return false;
      detail::replace_suffix(w_, len, U"u");
    } else if (s == U"enza" || s == U"enze") {
      if (!in(p2_, len)) return false;
      detail::replace_suffix(w_, len, U"ente");
    } else if (s == U"amento" || s == U"amenti" || s == U"imento" || s == U"imenti") {
      if (!in(pv_, len)) return false;
      w_.resize(w_.size() - len);
    } else if (s == U"amente") {
      if (!in(p1_, len)) return false;
      w_.resize(w_.size() - len);
      if (const View t = detail::longest_suffix(w_, {U"ic", U"abil", U"os", U"iv"});
          !t.empty() && in(p2_, t.size())) {
        w_.resize(w_.size() - t.size());
        if (t == U"iv") drop_if_r2(U"at");
      }
    } else if (s == U"ità") {
      if (!in(p2_, len)) return false;
      w_.resize(w_.size() - len);
      if (const View t = detail::longest_suffix(w_, {U"ic", U"abil", U"iv"});
          !t.empty() && in(p2_, t.size()))
        w_.resize(w_.size() - t.size());
    } else if (s == U"iva" || s == U"ive" || s == U"ivi" || s == U"ivo") {
      if (!in(p2_, len)) return false;
      w_.resize(w_.size() - len);
      if (drop_if_r2(U"at")) drop_if_r2(U"ic");
    } else {
      if (!in(p2_, len)) return false;
      w_.resize(w_.size() - len);
    }
    return true;
  }

  void verb_suffix() {
    const View s = detail::longest_suffix(
        w_,
        {U"isca",   U"enda",     U"ata",      U"ita",    U"uta",    U"ava",    U"eva",
         U"iva",    U"erebbe",   U"irebbe",   U"isce",   U"ende",   U"are",    U"ere",
         U"ire",    U"asse",     U"ate",      U"avate",  U"evate",  U"ivate",  U"ete",
         U"erete",  U"irete",    U"ite",      U"ereste", U"ireste", U"ute",    U"erai",
         U"irai",   U"isci",     U"endi",     U"erei",   U"irei",   U"assi",   U"ati",
         U"iti",    U"eresti",   U"iresti",   U"uti",    U"avi",    U"evi",    U"ivi",
         U"isco",   U"ando",     U"endo",     U"Yamo",   U"iamo",   U"avamo",  U"evamo",
         U"ivamo",  U"eremo",    U"iremo",    U"assimo", U"ammo",   U"emmo",   U"eremmo",
         U"iremmo", U"immo",     U"ano",      U"iscano", U"avano",  U"evano",  U"ivano",
         U"eranno", U"iranno",   U"ono",      U"iscono", U"arono",  U"erono",  U"irono",
         U"erebbero", U"irebbero", U"assero", U"essero", U"issero", U"ato",    U"ito",
         U"uto",    U"avo",      U"evo",      U"ivo",    U"ar",     U"ir",     U"erà",
         U"irà", U"erò", U"irò"},
        pv_);
    if (!s.empty()) w_.resize(w_.size() - s.size());
  }

  void vowel_suffix() {
    if (!w_.empty() && detail::is_one_of(w_.back(), U"aeioàèìò") &&
        in(pv_, 1)) {
      w_.pop_back();
      if (!w_.empty() && w_.back() == U'i' && in(pv_, 1)) w_.pop_back();
    }
    if (w_.size() >= 2 && w_.back() == U'h' && (w_[w_.size() - 2] == U'c' || w_[w_.size() - 2] == U'g') &&
        in(pv_, 2))
      w_.pop_back();
  }

  Word w_;
  std::size_t pv_ = 0;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
};

}  // namespace psylex::snowball
