#include "tabex/prompts.hpp"

#include <initializer_list>
#include <utility>

#include "tabex/errors.hpp"

namespace tabex {

namespace {

// Template text is fixed verbatim, trailing spaces included; the wording is
// part of the contract with fine-tuned repair models.

const std::string kSystemExplicitation =
    "You are an expert in interpreting various table formats. Your task is to generate "
    "fixed HTML tables from unstructured text. ";

const std::string kSystemRepair =
    "You are an expert in interpreting various table formats. Your task is to generate "
    "fixed HTML tables from unstructured text, and optionally a table that may or may not "
    "contain errors. ";

const std::string kUserExplicitation =
    "I have an unstructured text representation of a table.\n"
    "Instructions:\n"
    "-Analyze the given ''Raw Input **unstructured** Text'' and html table to accurately "
    "identify rows, columns, and data cells.\n"
    "-Ensure that the output table maintains the same row and column structure as the given "
    "''Raw Input Text''.\n"
    "-Keep the table rows and columns in the same order and structure as they appear in the "
    "given ''Raw Input Text''.\n"
    "-Include all content from the current given ''Raw Input Text'' without omission.\n"
    "-Do not add any content in the fixed HTML table if it is not present in the given "
    "''Raw Input Text''. \n"
    "-Ensure that the fixed HTML table is well-formed and valid, and enclosed inside "
    "<table></table> tags.\n"
    "''Raw Input Text'':\n"
    "{{Input Text Here}}";

const std::string kUserRepair =
    "I have an unstructured text representation of a table and an html representation of "
    "the same table.\n"
    "Instructions:\n"
    "-Analyze the given ''Raw Input **unstructured** Text'' and html table to accurately "
    "identify rows, columns, and data cells.\n"
    "-Ensure that the output table maintains the same row and column structure as the given "
    "''Raw Input Text''.\n"
    "-Keep the table rows and columns in the same order and structure as they appear in the "
    "given ''Raw Input Text''.\n"
    "-Include all content from the current given ''Raw Input Text'' without omission.\n"
    "-Do not add any content in the fixed HTML table if it is not present in the given "
    "''Raw Input Text''. \n"
    "-Ensure that the fixed HTML table is well-formed and valid, and enclosed inside "
    "<table></table> tags.\n"
    "''Raw Input Text'':\n"
    "{{Input Text Here}}\n"
    "\n"
    "''HTML Table'':\n"
    "{{Broken HTML Table Here}}";

constexpr std::string_view kInputPlaceholder = "{{Input Text Here}}";
constexpr std::string_view kBrokenPlaceholder = "{{Broken HTML Table Here}}";

// Substitute placeholders in one pass over the template so substituted
// values are never rescanned.
std::string fill_template(std::string_view tmpl,
                          std::initializer_list<std::pair<std::string_view, std::string_view>>
                              substitutions) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        std::size_t open = tmpl.find("{{", i);
        if (open == std::string_view::npos) {
            out += tmpl.substr(i);
            break;
        }
        out += tmpl.substr(i, open - i);
        bool matched = false;
        for (const auto& [placeholder, value] : substitutions) {
            if (tmpl.compare(open, placeholder.size(), placeholder) == 0) {
                out += value;
                i = open + placeholder.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            out += "{{";
            i = open + 2;
        }
    }
    return out;
}

}  // namespace

const std::string& system_prompt(PromptKind kind) {
    return kind == PromptKind::explicitation ? kSystemExplicitation : kSystemRepair;
}

const std::string& user_prompt_template(PromptKind kind) {
    return kind == PromptKind::explicitation ? kUserExplicitation : kUserRepair;
}

PromptPair render_prompt(PromptKind kind, std::string_view raw_text,
                         const std::optional<std::string>& broken_html) {
    if (kind == PromptKind::repair && !broken_html) {
        throw Error(ErrorCode::MissingField, "repair prompt requires the broken table");
    }
    PromptPair out;
    out.system = system_prompt(kind);
    if (kind == PromptKind::repair) {
        out.user = fill_template(user_prompt_template(kind),
                                 {{kInputPlaceholder, raw_text},
                                  {kBrokenPlaceholder, *broken_html}});
    } else {
        out.user = fill_template(user_prompt_template(kind), {{kInputPlaceholder, raw_text}});
    }
    return out;
}

}  // namespace tabex
