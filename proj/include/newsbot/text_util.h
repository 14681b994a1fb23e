// Copyright 2026 The Newsbot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEWSBOT_TEXT_UTIL_H_
#define NEWSBOT_TEXT_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newsbot {

std::string_view Trim(std::string_view s);
std::string ToLowerAscii(std::string_view s);
bool StartsWith(std::string_view s, std::string_view prefix);

std::vector<std::string> Split(std::string_view s, char delim);
// Splits on '\n', dropping a trailing '\r' from each line and the empty
// piece after a final newline.
std::vector<std::string> SplitLines(std::string_view text);
std::vector<std::string> SplitWhitespace(std::string_view s);

// Length in bytes of the UTF-8 sequence starting at s[pos]. Invalid lead
// bytes count as a single byte so scanning always makes progress.
std::size_t Utf8SequenceLength(std::string_view s, std::size_t pos);
// Decodes the code point at s[pos]; returns U+FFFD for malformed input.
char32_t DecodeUtf8(std::string_view s, std::size_t pos);
std::size_t CodePointCount(std::string_view s);
bool IsValidUtf8(std::string_view s);

// ASCII punctuation, General Punctuation, CJK symbols and fullwidth forms.
bool IsPunctuation(char32_t cp);

// True for languages written with spaces between words (everything except
// zh, ja and th, by the primary subtag).
bool UsesWordSpacing(std::string_view language);

std::optional<int64_t> ParseInt(std::string_view s);
std::optional<double> ParseDouble(std::string_view s);
// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double value);

// Comma-separated records with RFC 4180 quoting. Quoted fields may contain
// commas, doubled quotes and newlines.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);
std::string CsvField(std::string_view field);

// Tab-separated field escaping: backslash, tab, newline and carriage return
// become \\ \t \n \r.
std::string EscapeTsvField(std::string_view field);
std::string UnescapeTsvField(std::string_view field);

std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view contents);

}  // namespace newsbot

#endif  // NEWSBOT_TEXT_UTIL_H_
