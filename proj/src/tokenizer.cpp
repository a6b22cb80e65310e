#include "infodist/tokenizer.hpp"

#include <memory>

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

#include "infodist/error.hpp"

namespace infodist {

std::string fold_case(std::string_view utf8_text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8_text.data(), static_cast<int32_t>(utf8_text.size())));
  s.foldCase();
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::vector<std::string> tokenize(std::string_view utf8_text) {
  std::vector<std::string> tokens;
  if (utf8_text.empty()) return tokens;
  const icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8_text.data(), static_cast<int32_t>(utf8_text.size())));

  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::BreakIterator> words(
      icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
  if (U_FAILURE(status)) throw DomainError(std::string("ICU word iterator: ") + u_errorName(status));
  words->setText(text);

  int32_t start = words->first();
  for (int32_t end = words->next(); end != icu::BreakIterator::DONE;
       start = end, end = words->next()) {
    // Rule status distinguishes words/numbers/ideographs from spaces and punctuation.
    if (words->getRuleStatus() == UBRK_WORD_NONE) continue;
    icu::UnicodeString token(text, start, end - start);
    token.foldCase();
    std::string utf8;
    token.toUTF8String(utf8);
    tokens.push_back(std::move(utf8));
  }
  return tokens;
}

}  // namespace infodist
