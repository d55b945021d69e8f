#pragma once

// Normalized benchmark items: every dataset loads into the same Task shape.

#include <optional>
#include <string>
#include <vector>

#include "lot/errors.hpp"

namespace lot {

// The two answer formats the benchmarks use.
enum class DatasetFamily { MultiChoice, BinaryEntail };

inline std::string to_string(DatasetFamily family) {
    return family == DatasetFamily::MultiChoice ? "multi_choice" : "binary_entail";
}

inline DatasetFamily family_from_string(const std::string& text) {
    if (text == "multi_choice") return DatasetFamily::MultiChoice;
    if (text == "binary_entail") return DatasetFamily::BinaryEntail;
    throw Error("unknown dataset family '" + text + "'");
}

enum class Dataset { ReClor, LogiQA, RuleTaker, ProofWriter, FOLIO };

inline std::string to_string(Dataset d) {
    switch (d) {
        case Dataset::ReClor: return "reclor";
        case Dataset::LogiQA: return "logiqa";
        case Dataset::RuleTaker: return "ruletaker";
        case Dataset::ProofWriter: return "proofwriter";
        case Dataset::FOLIO: return "folio";
    }
    return "";
}

inline Dataset dataset_from_string(const std::string& text) {
    if (text == "reclor") return Dataset::ReClor;
    if (text == "logiqa") return Dataset::LogiQA;
    if (text == "ruletaker") return Dataset::RuleTaker;
    if (text == "proofwriter") return Dataset::ProofWriter;
    if (text == "folio") return Dataset::FOLIO;
    throw Error("unknown dataset '" + text + "'");
}

inline DatasetFamily family_of(Dataset d) {
    return (d == Dataset::ReClor || d == Dataset::LogiQA) ? DatasetFamily::MultiChoice
                                                          : DatasetFamily::BinaryEntail;
}

// Answer label: an option letter for multiple choice, a truth value for
// entailment, or Unknown when no answer could be extracted.
struct Label {
    enum class Kind { Option, True, False, Unknown };

    Kind kind = Kind::Unknown;
    char letter = '\0';  // 'A'..'E', Option only

    static Label option(char c) {
        if (c < 'A' || c > 'E') throw Error(std::string("option letter out of range: ") + c);
        return Label{Kind::Option, c};
    }
    static Label truth(bool v) { return Label{v ? Kind::True : Kind::False, '\0'}; }
    static Label unknown() { return Label{}; }

    bool is_unknown() const { return kind == Kind::Unknown; }

    std::string str() const {
        switch (kind) {
            case Kind::Option: return std::string(1, letter);
            case Kind::True: return "True";
            case Kind::False: return "False";
            case Kind::Unknown: return "Unknown";
        }
        return "Unknown";
    }

    static Label from_string(const std::string& text) {
        if (text.size() == 1 && text[0] >= 'A' && text[0] <= 'E') return option(text[0]);
        if (text == "True") return truth(true);
        if (text == "False") return truth(false);
        if (text == "Unknown") return unknown();
        throw Error("unknown label '" + text + "'");
    }

    friend bool operator==(const Label&, const Label&) = default;
};

struct TaskMeta {
    std::optional<int> depth;
    std::optional<bool> cwa;
    std::optional<std::string> language;

    friend bool operator==(const TaskMeta&, const TaskMeta&) = default;
};

struct Task {
    std::string id;
    DatasetFamily family = DatasetFamily::BinaryEntail;
    std::string context;
    std::string question;
    std::vector<std::string> options;  // MultiChoice only, A..E order
    Label gold;
    Dataset dataset = Dataset::ProofWriter;
    TaskMeta meta;

    friend bool operator==(const Task&, const Task&) = default;
};

// Family invariants; throws SchemaError naming the record.
inline void validate_task(const Task& task) {
    if (task.family == DatasetFamily::MultiChoice) {
        if (task.options.empty() || task.options.size() > 5)
            throw SchemaError(task.id, "multiple-choice task needs 1-5 options");
        if (task.gold.kind != Label::Kind::Option)
            throw SchemaError(task.id, "multiple-choice gold label must be an option letter");
        if (static_cast<std::size_t>(task.gold.letter - 'A') >= task.options.size())
            throw SchemaError(task.id, "gold option letter outside the option list");
    } else {
        if (task.gold.kind != Label::Kind::True && task.gold.kind != Label::Kind::False)
            throw SchemaError(task.id, "binary-entailment gold label must be True or False");
    }
    if (task.id.empty()) throw SchemaError(task.id, "empty task id");
    if (task.context.empty()) throw SchemaError(task.id, "empty context");
}

}  // namespace lot
