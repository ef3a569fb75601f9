// Copyright 2026 The todc Authors.
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

#ifndef TODC_TEXT_HPP_
#define TODC_TEXT_HPP_

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace todc {

inline bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// ASCII punctuation only; bytes >= 0x80 (UTF-8 sequences) count as word characters.
inline bool is_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Lowercases, collapses internal whitespace to one space and strips
/// punctuation and whitespace from both ends. Used for slot values, intent
/// labels and every other string compared by exact match.
inline std::string normalize_value(std::string_view s) {
  std::string collapsed = join(split_whitespace(to_lower(s)), " ");
  std::string_view v = collapsed;
  while (!v.empty() && (is_punct(v.front()) || is_space(v.front()))) v.remove_prefix(1);
  while (!v.empty() && (is_punct(v.back()) || is_space(v.back()))) v.remove_suffix(1);
  return std::string(v);
}

/// Metric tokenizer shared by BLEU, ROUGE and the length aspects.
///
/// Text is lowercased, every ASCII punctuation character except `_` becomes
/// its own token, and the result is split on whitespace. Delexicalized
/// placeholders such as `[restaurant_name]` are kept whole.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  const std::string lower = to_lower(text);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const char c = lower[i];
    if (c == '[') {
      std::size_t j = i + 1;
      while (j < lower.size() &&
             (std::isalnum(static_cast<unsigned char>(lower[j])) || lower[j] == '_'))
        ++j;
      if (j < lower.size() && lower[j] == ']' && j > i + 1) {
        flush();
        tokens.push_back(lower.substr(i, j - i + 1));
        i = j;
        continue;
      }
    }
    if (is_space(c)) {
      flush();
    } else if (is_punct(c) && c != '_') {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace todc

#endif  // TODC_TEXT_HPP_
