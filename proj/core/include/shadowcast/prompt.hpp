// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "shadowcast/ranking.hpp"

namespace shadowcast {

/// The proposal system prompt shipped in assets/prompts/system_prompt.txt.
std::string_view proposal_system_prompt();

/// The system prompt, with a subject constraint appended when an override is
/// given.
std::string build_system_prompt(const std::optional<std::string>& subject_override);

/// Parses a proposal reply: exactly two paragraphs separated by a blank line,
/// the first naming the outlined component ("... an outline of <component>.").
/// Throws FormatError otherwise.
PromptProposal parse_proposal(std::string_view reply);

inline constexpr std::string_view kCoherenceQuestion =
    "Does the highlighted stroke outline the described component?";

std::string coherence_question(const std::string& component);

enum class YesNo { kYes, kNo };

/// Lower-cases the reply and strips surrounding whitespace and punctuation;
/// nullopt unless it reads "yes" or "no" (optionally followed by more words).
std::optional<YesNo> normalize_answer(std::string_view reply);

}  // namespace shadowcast
