#pragma once

// Prompting-method combinators: Direct, CoT, SC(k) over either base, a linear
// tree-search explorer for binary entailment, and the orthogonal context
// augmenter that runs extraction -> closure -> translation before delegating
// to any of the above.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lot/entail.hpp"
#include "lot/expr.hpp"
#include "lot/expr_set.hpp"
#include "lot/extraction.hpp"
#include "lot/gateway.hpp"
#include "lot/laws.hpp"
#include "lot/prompts.hpp"
#include "lot/task.hpp"
#include "lot/translation.hpp"

namespace lot {

// Non-owning handle bundling the gateway with per-run model/sampling choices,
// so method signatures stay (task, llm).
struct Llm {
    Gateway* gateway = nullptr;
    std::string model = "gpt-3.5-turbo-0125";
    std::optional<double> temperature;
    std::optional<double> top_p;
    std::optional<int> max_tokens;

    ChatRequest request(std::vector<ChatMessage> messages) const {
        ChatRequest req;
        req.model = model;
        req.messages = std::move(messages);
        req.temperature = temperature;
        req.top_p = top_p;
        req.max_tokens = max_tokens;
        return req;
    }

    std::string complete(std::vector<ChatMessage> messages) const {
        if (!gateway) throw std::invalid_argument("llm handle has no gateway");
        return gateway->complete(request(std::move(messages)));
    }

    std::string complete_text(const std::string& prompt) const {
        return complete({user_message(prompt)});
    }
};

struct Answer {
    Label label;
    std::string raw;                 // full completion text (joined for SC)
    std::map<std::string, int> votes;  // per-label tally, populated by SC only

    friend bool operator==(const Answer&, const Answer&) = default;
};

// ---------------------------------------------------------------------------
// answer extraction (total — never throws)

namespace detail {

inline bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool word_at(const std::string& text, std::size_t pos, const std::string& word) {
    if (pos + word.size() > text.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        char c = text[pos + i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (c != word[i]) return false;
    }
    if (pos > 0 && is_word_char(text[pos - 1])) return false;
    std::size_t end = pos + word.size();
    if (end < text.size() && is_word_char(text[end])) return false;
    return true;
}

}  // namespace detail

// Scans from the end of the text: the last standalone A-E for multiple choice,
// the last true/false/correct/incorrect word for binary entailment. Unknown
// when nothing matches.
inline Label extract_answer(const std::string& raw, DatasetFamily family) {
    if (family == DatasetFamily::MultiChoice) {
        for (std::size_t i = raw.size(); i-- > 0;) {
            char c = raw[i];
            if (c < 'A' || c > 'E') continue;
            if (i > 0 && detail::is_word_char(raw[i - 1])) continue;
            if (i + 1 < raw.size() && detail::is_word_char(raw[i + 1])) continue;
            return Label::option(c);
        }
        return Label::unknown();
    }
    static const std::vector<std::pair<std::string, bool>> words = {
        {"incorrect", false}, {"correct", true}, {"true", true}, {"false", false}};
    std::size_t best_pos = std::string::npos;
    bool best_value = false;
    for (const auto& [word, value] : words) {
        for (std::size_t i = raw.size() >= word.size() ? raw.size() - word.size() + 1 : 0;
             i-- > 0;) {
            if (detail::word_at(raw, i, word)) {
                if (best_pos == std::string::npos || i > best_pos) {
                    best_pos = i;
                    best_value = value;
                }
                break;  // later occurrences of this word already ruled out
            }
        }
    }
    if (best_pos == std::string::npos) return Label::unknown();
    return Label::truth(best_value);
}

// ---------------------------------------------------------------------------
// single-shot methods

inline Answer run_direct(const Task& task, const Llm& llm) {
    std::string raw = llm.complete_text(direct_prompt(task));
    return Answer{extract_answer(raw, task.family), raw, {}};
}

inline Answer run_cot(const Task& task, const Llm& llm) {
    std::string raw = llm.complete_text(cot_prompt(task));
    return Answer{extract_answer(raw, task.family), raw, {}};
}

// ---------------------------------------------------------------------------
// self-consistency

enum class BaseMethod { Direct, Cot };

// k samples of the base method, majority label. Ties break to the label whose
// winning count was reached first in sample order. Samples that fail at the
// gateway are dropped from the tally; if every sample fails the last error is
// rethrown.
inline Answer run_sc(int k, BaseMethod base, const Task& task, const Llm& llm) {
    if (k < 1) throw std::invalid_argument("sample count must be >= 1");
    std::vector<Answer> samples;
    std::exception_ptr last_error;
    for (int i = 0; i < k; ++i) {
        try {
            samples.push_back(base == BaseMethod::Direct ? run_direct(task, llm)
                                                         : run_cot(task, llm));
        } catch (const GatewayError&) {
            last_error = std::current_exception();
        }
    }
    if (samples.empty()) std::rethrow_exception(last_error);

    Answer out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out.votes[samples[i].label.str()] += 1;
        if (i) out.raw += "\n---\n";
        out.raw += samples[i].raw;
    }
    int max_count = 0;
    for (const auto& [label, count] : out.votes) max_count = std::max(max_count, count);
    std::map<std::string, int> running;
    for (const auto& sample : samples) {
        if (++running[sample.label.str()] == max_count) {
            out.label = sample.label;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// context augmentation (the wrapper every other method composes with)

struct LotOptions {
    LawSet laws;                // which rewrite laws drive the closure
    double keep_fraction = 1.0; // in (0,1]: keep the first ceil(f*n) deductions
    bool use_extension = true;  // false: translate the extracted set verbatim
    bool two_stage = false;     // select conditional sentences before extraction
    ClosureLimits limits;
};

namespace detail {

inline std::size_t keep_count(double fraction, std::size_t n) {
    if (n == 0) return 0;
    auto kept = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(kept, 1, n);
}

inline std::vector<std::string> template_sentences(const SymbolTable& table,
                                                   const ExprSet& exprs) {
    std::vector<std::string> out;
    for (const Expr& e : exprs) out.push_back(template_translate(table, e) + ".");
    return out;
}

}  // namespace detail

// Returns a copy of the task whose context carries the deduced information.
// Extraction that yields nothing usable degrades to the identity; translation
// falls back to the deterministic template when the gateway fails mid-phase.
// Gateway errors during selection/extraction propagate.
inline Task apply_lot(const Task& task, const Llm& llm, const LotOptions& options = {}) {
    if (!(options.keep_fraction > 0.0) || options.keep_fraction > 1.0)
        throw std::invalid_argument("keep_fraction must be in (0, 1]");
    if (options.use_extension && !options.laws.any())
        throw std::invalid_argument("context augmentation needs at least one law");

    std::string extraction_input = task.context;
    if (options.two_stage) {
        std::string selected = llm.complete_text(build_selection_prompt(task.context));
        std::string trimmed = detail::trim(selected);
        if (!trimmed.empty()) extraction_input = trimmed;
    }

    ExtractionResult extracted;
    try {
        extracted = parse_extraction_output(
            llm.complete_text(build_extraction_prompt(task.family, extraction_input)));
    } catch (const EmptyExtraction&) {
        return task;
    }

    ExprSet to_translate;
    if (options.use_extension) {
        try {
            ExprSet closed = closure(extracted.exprs, options.laws, options.limits);
            to_translate = novel_expressions(closed, extracted.exprs);
        } catch (const LimitExceeded&) {
            return task;  // truncated closures are not trustworthy augmentations
        }
    } else {
        to_translate = extracted.exprs;
    }
    if (to_translate.empty()) return task;

    std::size_t kept = detail::keep_count(options.keep_fraction, to_translate.size());
    ExprSet chosen;
    for (const Expr& e : to_translate) {
        if (chosen.size() == kept) break;
        chosen.insert(e);
    }

    std::vector<std::string> sentences;
    try {
        std::string paragraph =
            llm.complete_text(build_translation_prompt(extracted.symbols, chosen));
        sentences = split_sentences(paragraph);
        if (sentences.empty())
            sentences = detail::template_sentences(extracted.symbols, chosen);
    } catch (const GatewayError&) {
        sentences = detail::template_sentences(extracted.symbols, chosen);
    }

    Task out = task;
    out.context = compose_augmented_context(task.context, sentences);
    return out;
}

// ---------------------------------------------------------------------------
// tree search over propositions (binary entailment only)

struct ToTLimits {
    int branch = 5;          // proposal attempts per state
    int success_target = 4;  // stop once this many propositions are accepted
};

struct ToTState {
    std::string premises;  // original context + accepted propositions
    bool success = false;  // both validity checks passed
    int depth = 0;         // which expansion round proposed it
};

struct ToTMetrics {
    int total_states = 0;        // proposal attempts whose validation ran
    int successful_states = 0;   // attempts passing both checks
    bool full_reasoning = false; // success_target reached before exhaustion

    friend bool operator==(const ToTMetrics&, const ToTMetrics&) = default;
};

namespace detail {

// Pulls the quoted text after the last "Proposition": marker; degrades to the
// whole trimmed completion when the model ignored the format.
inline std::string parse_tot_proposition(const std::string& raw) {
    static const std::string marker = "\"Proposition\":";
    std::size_t pos = raw.rfind(marker);
    if (pos != std::string::npos) {
        std::size_t q1 = raw.find('"', pos + marker.size());
        if (q1 != std::string::npos) {
            std::size_t q2 = raw.find('"', q1 + 1);
            if (q2 != std::string::npos) return raw.substr(q1 + 1, q2 - q1 - 1);
        }
        return trim(raw.substr(pos + marker.size()));
    }
    return trim(raw);
}

}  // namespace detail

// Linear frontier: the current premise list is the state. Each round proposes
// up to `branch` candidate propositions; the first one passing both the
// validity and the sourcing check is appended to the premises and opens the
// next round. A round with no accepted proposal ends the search. The final
// judgement runs over the accumulated premises either way.
inline std::pair<Answer, ToTMetrics> explore_tot(const Task& task, const Llm& llm,
                                                 const ToTLimits& limits = {},
                                                 std::vector<ToTState>* trace = nullptr) {
    if (task.family != DatasetFamily::BinaryEntail)
        throw std::invalid_argument("tree search needs a binary entailment task");
    if (limits.branch < 1 || limits.success_target < 1)
        throw std::invalid_argument("tree search limits must be positive");

    std::string premises = task.context;
    const std::string& hypothesis = task.question;
    ToTMetrics metrics;

    int depth = 0;
    while (metrics.successful_states < limits.success_target) {
        bool advanced = false;
        for (int attempt = 0; attempt < limits.branch; ++attempt) {
            std::string proposition = detail::parse_tot_proposition(
                llm.complete(tot_generate_messages(premises, hypothesis)));
            std::string validate_raw =
                llm.complete(tot_validate_messages(premises, proposition));
            metrics.total_states += 1;
            bool valid =
                extract_answer(validate_raw, DatasetFamily::BinaryEntail) == Label::truth(true);
            bool accepted = false;
            if (valid) {
                std::string sourced_raw =
                    llm.complete(tot_sourced_messages(premises, proposition));
                accepted = extract_answer(sourced_raw, DatasetFamily::BinaryEntail) ==
                           Label::truth(true);
            }
            if (accepted) {
                metrics.successful_states += 1;
                premises += " " + proposition;
                if (trace) trace->push_back({premises, true, depth});
                advanced = true;
                break;
            }
            if (trace) trace->push_back({premises, false, depth});
        }
        if (!advanced) break;
        ++depth;
    }
    metrics.full_reasoning = metrics.successful_states >= limits.success_target;

    std::string final_raw = llm.complete(tot_final_messages(premises, hypothesis));
    Answer answer{extract_answer(final_raw, DatasetFamily::BinaryEntail), final_raw, {}};
    return {answer, metrics};
}

}  // namespace lot
