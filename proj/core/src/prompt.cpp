// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "shadowcast/error.hpp"

namespace shadowcast {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string build_system_prompt(const std::optional<std::string>& subject_override) {
  std::string prompt(proposal_system_prompt());
  if (subject_override && !trim(*subject_override).empty()) {
    while (!prompt.empty() && prompt.back() == '\n') prompt.pop_back();
    prompt += "\n\n# Subject requirement\n\nThe subject of the drawing must be a " + trim(*subject_override) + ".\n";
  }
  return prompt;
}

PromptProposal parse_proposal(std::string_view reply) {
  std::vector<std::string> paragraphs;
  std::string current;
  std::istringstream in{std::string(reply)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) {
      if (!current.empty()) paragraphs.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (!current.empty()) current += ' ';
    current += t;
  }
  if (!current.empty()) paragraphs.push_back(std::move(current));

  if (paragraphs.size() != 2) {
    throw Error(ErrorCode::kFormatError,
                "expected two paragraphs separated by a blank line, got " + std::to_string(paragraphs.size()));
  }

  const std::string& reasoning = paragraphs[0];
  const std::string needle = "outline of ";
  const auto at = lower(reasoning).find(needle);
  if (at == std::string::npos) throw Error(ErrorCode::kFormatError, "reasoning does not name the outlined component");
  const std::size_t from = at + needle.size();
  const std::size_t to = reasoning.find('.', from);
  std::string component = trim(std::string_view(reasoning).substr(from, to == std::string::npos ? to : to - from));
  if (component.empty()) throw Error(ErrorCode::kFormatError, "outlined component is empty");

  return PromptProposal{reasoning, paragraphs[1], std::move(component)};
}

std::string coherence_question(const std::string& component) {
  return "The highlighted stroke is meant to outline " + component + ". " + std::string(kCoherenceQuestion) +
         " Answer yes or no.";
}

std::optional<YesNo> normalize_answer(std::string_view reply) {
  const std::string s = lower(reply);
  std::size_t b = 0;
  while (b < s.size() && !std::isalpha(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = b;
  while (e < s.size() && std::isalpha(static_cast<unsigned char>(s[e]))) ++e;
  const std::string_view word = std::string_view(s).substr(b, e - b);
  if (word == "yes") return YesNo::kYes;
  if (word == "no") return YesNo::kNo;
  return std::nullopt;
}

}  // namespace shadowcast
