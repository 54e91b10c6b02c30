#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tabex {

struct PromptPair {
    std::string system;
    std::string user;
};

enum class PromptKind { explicitation, repair };

// Fixed prompt templates; the user templates carry the placeholders
// {{Input Text Here}} and (repair only) {{Broken HTML Table Here}}.
const std::string& system_prompt(PromptKind kind);
const std::string& user_prompt_template(PromptKind kind);

// Substitute placeholders.  Repair requires broken_html (Error(MissingField)
// otherwise); the rendered user prompt never contains an unfilled
// placeholder.
PromptPair render_prompt(PromptKind kind, std::string_view raw_text,
                         const std::optional<std::string>& broken_html = std::nullopt);

}  // namespace tabex
