#pragma once

// Prompt text for every LLM call the pipeline makes.  The extraction and
// translation templates are fixed wording the rest of the pipeline (and the
// golden transcripts) depend on — do not edit casually; prompt-building is
// byte-stable on purpose.

#include <stdexcept>
#include <string>
#include <vector>

#include "lot/chat.hpp"
#include "lot/task.hpp"

namespace lot {

// ---------------------------------------------------------------------------
// logic extraction (phase one)

// Multiple-choice variant (quirks and all — recorded transcripts depend on
// these exact bytes).
inline constexpr const char* kExtractionPromptMultiChoice =
    "Please use uppercase English letters such as A, B, C, etc. to identify all "
    "possible propositions. Do not include negative tones such as \"not\" in the "
    "propositions. For example, if the sentence is \"It is not bored,\" you should "
    "use \"A: bored\" to represent it.\n"
    "\n"
    "Next, for each proposition, use the symbol to represent its negative form. "
    "For example, the negative form of proposition A can be expressed as A.\n"
    "\n"
    "Now, please carefully analyze the context and find causal relationship between "
    "propositions seriously. A causal expression is only established when the "
    "context directly supports this relationship. Use arrows (→) to indicate "
    "causal relationships, for example, \"If A, then B\", \"B if A\" and \"A causes "
    "B\" etc. can be represented as A→B.\n"
    "\n"
    "Finally, output propositions and causal expressions.";

// Binary-entailment variant.
inline constexpr const char* kExtractionPromptBinary =
    "Please use uppercase English letters such as A, B, C, etc. to identify all "
    "possible propositions. Do not include negative tones such as \"not\" in the "
    "propositions. For example, if the sentence is \"It is not bored,\" you should "
    "use \"A: bored\" to represent it.\n"
    "\n"
    "Next, for each proposition, use the symbol to represent its negative form. "
    "For example, the negative form of proposition A can be expressed as ¬A.\n"
    "\n"
    "Now, please carefully analyze the context and find causal relationship between "
    "propositions. A causal expression is only established when the context "
    "directly supports this relationship. Use arrows (→) to indicate causal "
    "relationships, for example, \"If A, then B\", \"B if A\" and \"A causes B\" "
    "etc. can be represented as A→B.\n"
    "\n"
    "Finally, output propositions and causal expressions.";

inline std::string build_extraction_prompt(DatasetFamily family, const std::string& context) {
    if (context.empty())
        throw std::invalid_argument("extraction prompt needs a non-empty context");
    const char* base = family == DatasetFamily::MultiChoice ? kExtractionPromptMultiChoice
                                                            : kExtractionPromptBinary;
    return std::string(base) + "\n\nContext:\n" + context;
}

// Stage one of the two-stage extraction: pick the sentences that carry a
// conditional relationship.
inline constexpr const char* kSelectionPrompt =
    "Please select all sentences from the following context that contain "
    "conditional reasoning relationships, such as \"if...then...\" or "
    "\"...causes...\" statements. Output only the selected sentences, one per "
    "line.";

inline std::string build_selection_prompt(const std::string& context) {
    if (context.empty())
        throw std::invalid_argument("selection prompt needs a non-empty context");
    return std::string(kSelectionPrompt) + "\n\nContext:\n" + context;
}

// ---------------------------------------------------------------------------
// logic translation (phase three)

inline constexpr const char* kTranslationPrompt =
    "Please use the provided propositions to translate each expression into a "
    "complete sentence.\n"
    "\n"
    "¬A represents the negation of proposition A, the arrow (→) "
    "represents the causal relationship, and A→B represents if A, then B.\n"
    "\n"
    "Only output the sentences in a paragraph!";

// ---------------------------------------------------------------------------
// answer prompts (Direct / CoT)

inline constexpr const char* kCotTrigger = "Let's think step by step.";

inline std::string direct_prompt(const Task& task) {
    std::string out = task.context;
    if (task.family == DatasetFamily::MultiChoice) {
        out += "\n\nQuestion: " + task.question + "\nOptions:\n";
        for (std::size_t i = 0; i < task.options.size(); ++i) {
            out += static_cast<char>('A' + i);
            out += ". " + task.options[i] + "\n";
        }
        out += "\nPlease answer with the letter of the correct option.";
    } else {
        out += "\n\nWhether this inference is correct: " + task.question;
        out += "\n\nPlease answer with Correct or Incorrect.";
    }
    return out;
}

inline std::string cot_prompt(const Task& task) {
    return direct_prompt(task) + "\n\n" + kCotTrigger;
}

// ---------------------------------------------------------------------------
// tree-search sub-prompts

// System instructions follow the published wording; the single few-shot
// exemplar in each builder is ours.
inline constexpr const char* kTotFinalSystem =
    "Suppose you are one of the greatest AI scientists, logicians and "
    "mathematicians. Let us think step by step.\n"
    "Read and analyze the \"Premises\" first, then judge whether the "
    "\"Hypothesis\" is True, False.\n"
    "Please make sure your reasoning is directly deduced from the \"Premises\" "
    "and \"Propositions\" other than introducing unsourced common knowledge and "
    "unsourced information by common sense reasoning.\n"
    "----";

inline constexpr const char* kTotGenerateSystem =
    "Suppose you are one of the greatest AI scientists, logicians and "
    "mathematicians. Let us think step by step. Please use Logical Reasoning "
    "Rules(LRR) to deduce a \"Proposition\" from two given \"Premises\" and the "
    "proposition does not include \"if\".\n"
    "Logical Reasoning Rules(LRR):\n"
    "1. \"Two premises\": \"If A,then B. A is true.\" then \"Proposition\": \"B is "
    "true.\"\n"
    "2. \"Two premises\": \"If A,then B. B is not true.\" then \"Proposition\": "
    "\"A is not true\"\n"
    "3. \"Two premises\": \"A is either C or D. A is not C.\" then \"Proposition\": "
    "\"A is D.\"\n"
    "Please make sure that the \"Proposition\" is logically correct.\n"
    "Please make sure that the \"Proposition\" is not a duplicate of the "
    "\"Premises\".\n"
    "Please make sure your reasoning is directly deduced from the \"Premises\" and "
    "\"Propositions\" other than introducing unsourced common knowledge and "
    "unsourced information by common sense reasoning.\n"
    "Please remember that your \"Proposition\" should be useful to determine "
    "whether the \"Hypothesis\" is True, False.\n"
    "----";

inline constexpr const char* kTotValidateSystem =
    "Suppose you are one of the greatest AI scientists, logicians and "
    "mathematicians. Let us think step by step.\n"
    "Please use the Logical Reasoning Rules(LRR) to determine whether the "
    "deduction of the given \"Premises\" to a \"Proposition\" is valid or not, "
    "reply with True or False.\n"
    "Logical Reasoning Rules(LRR):\n"
    "1. \"Two premises\": \"If A,then B. A is true.\" then \"Proposition\": \"B is "
    "true.\"\n"
    "2. \"Two premises\": \"If A,then B. If B,then C.\" then \"Proposition\": \"If "
    "A, then C.\"\n"
    "3. \"Two premises\": \"If A,then B. B is not true.\" then \"Proposition\": "
    "\"A is not true\"\n"
    "4. \"Two premises\": \"A is either C or D. A is not C.\" then \"Proposition\": "
    "\"A is D.\"\n"
    "----";

inline constexpr const char* kTotSourcedSystem =
    "Suppose you are one of the greatest AI scientists, logicians and "
    "mathematicians. Let us think step by step.\n"
    "Please determine whether the \"Proposition\" is directly deduced from the "
    "\"Premises\" with certainty other than introducing unsourced information by "
    "common sense reasoning, reply with True or False.\n"
    "----";

inline std::vector<ChatMessage> tot_generate_messages(const std::string& premises,
                                                      const std::string& hypothesis) {
    return {
        system_message(kTotGenerateSystem),
        user_message("---\n\"Premises\": \"If Tom is happy, then Tom sings. Tom is happy.\"\n"
                     "We want to deduce more propositions to determine the correctness of the "
                     "following \"Hypothesis\":\n"
                     "\"Hypothesis\": \"Tom sings.\"\n"
                     "Can you deduce a new \"Proposition\" from at least two given "
                     "\"Premises\"?"),
        assistant_message("\"Proposition\": \"Tom sings.\""),
        user_message("---\n\"Premises\": \"" + premises + "\"\n"
                     "We want to deduce more propositions to determine the correctness of the "
                     "following \"Hypothesis\":\n"
                     "\"Hypothesis\": \"" + hypothesis + "\"\n"
                     "Can you deduce a new \"Proposition\" from at least two given "
                     "\"Premises\"?"),
    };
}

inline std::vector<ChatMessage> tot_validate_messages(const std::string& premises,
                                                      const std::string& proposition) {
    return {
        system_message(kTotValidateSystem),
        user_message("---\n\"Premises\": \"If Tom is happy, then Tom sings. Tom is happy.\"\n"
                     "\"Proposition\": \"Tom sings.\""),
        assistant_message("\"Judgement\": \"Is this deduction valid? True\""),
        user_message("---\n\"Premises\": \"" + premises + "\"\n\"Proposition\": \"" +
                     proposition + "\""),
    };
}

inline std::vector<ChatMessage> tot_sourced_messages(const std::string& premises,
                                                     const std::string& proposition) {
    return {
        system_message(kTotSourcedSystem),
        user_message("---\n\"Premises\": \"If Tom is happy, then Tom sings. Tom is happy.\"\n"
                     "\"Proposition\": \"Tom sings.\""),
        assistant_message(
            "\"Judgement\": \"Is this proposition directly deduced from the premises? "
            "True\""),
        user_message("---\n\"Premises\": \"" + premises + "\"\n\"Proposition\": \"" +
                     proposition + "\""),
    };
}

inline std::vector<ChatMessage> tot_final_messages(const std::string& premises,
                                                   const std::string& hypothesis) {
    return {
        system_message(kTotFinalSystem),
        user_message("---\n\"Premises\": \"If Tom is happy, then Tom sings. Tom is happy.\"\n"
                     "\"Hypothesis\": \"Tom sings.\""),
        assistant_message("\"Judgement\": \"Now we know that the Hypothesis is True\""),
        user_message("---\n\"Premises\": \"" + premises + "\"\n\"Hypothesis\": \"" +
                     hypothesis + "\""),
    };
}

}  // namespace lot
