#pragma once

// Benchmark ingestion: per-dataset adapters from the published upstream file
// formats into normalized Tasks, plus the subset filters the evaluation uses
// and JSONL round-tripping of the normalized form.
//
// Upstream shapes consumed (one adapter each):
//   reclor       JSON array of {id_string, context, question, answers, label}
//   logiqa       JSONL {id?, context, question, options, answer, language?}
//   ruletaker    JSONL {id, context, questions: [{id, text, label, meta?{QDep}}]}
//   proofwriter  JSONL {id, theory, questions: {Qn: {question, answer, QDep?}}}
//   folio        JSONL {story_id, example_id, premises, conclusion, label}
//
// Questions labeled unknown/uncertain carry no definite truth value and can
// never become tasks here (binary datasets are consumed as True/False
// classification); they are skipped at load time.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lot/errors.hpp"
#include "lot/task.hpp"

namespace lot {

struct FilterSpec {
    std::optional<int> depth;                     // keep tasks whose meta.depth matches
    bool cwa_only = false;                        // keep tasks marked closed-world
    std::optional<std::set<std::string>> ids;     // keep tasks in this id set
};

// One id per line; blank lines and '#' comments ignored.
inline std::set<std::string> load_id_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        std::string id = line.substr(start, end - start + 1);
        if (id.empty() || id[0] == '#') continue;
        ids.insert(id);
    }
    return ids;
}

// The evaluation subsets: implication ids for reclor (when a list is given),
// depth-5 closed-world for ruletaker/proofwriter, closed-world for folio,
// everything for logiqa.
inline FilterSpec published_subset_filter(Dataset dataset,
                               const std::filesystem::path& reclor_id_list = {}) {
    FilterSpec filter;
    switch (dataset) {
        case Dataset::ReClor:
            if (!reclor_id_list.empty()) filter.ids = load_id_list(reclor_id_list);
            break;
        case Dataset::LogiQA:
            break;
        case Dataset::RuleTaker:
        case Dataset::ProofWriter:
            filter.depth = 5;
            filter.cwa_only = true;
            break;
        case Dataset::FOLIO:
            filter.cwa_only = true;
            break;
    }
    return filter;
}

// Published subset sizes, for a pass/warn (never fail) count check: upstream
// releases drift, so a mismatch is reported rather than rejected.
inline int published_subset_count(Dataset dataset) {
    switch (dataset) {
        case Dataset::ReClor: return 46;
        case Dataset::LogiQA: return 1302;
        case Dataset::RuleTaker: return 967;
        case Dataset::ProofWriter: return 985;
        case Dataset::FOLIO: return 135;
    }
    return 0;
}

inline std::optional<std::string> count_check_message(Dataset dataset, std::size_t n) {
    int expected = published_subset_count(dataset);
    if (n == static_cast<std::size_t>(expected)) return std::nullopt;
    std::ostringstream out;
    out << "warning: " << to_string(dataset) << " filter selected " << n
        << " tasks, published subset has " << expected;
    return out.str();
}

namespace detail {

inline nlohmann::json parse_json(const std::string& text, const std::string& where) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw SchemaError(where, err.what());
    }
}

inline const nlohmann::json& require_field(const nlohmann::json& rec, const char* key,
                                           const std::string& id) {
    auto it = rec.find(key);
    if (it == rec.end())
        throw SchemaError(id, std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::string require_string(const nlohmann::json& rec, const char* key,
                                  const std::string& id) {
    const auto& v = require_field(rec, key, id);
    if (!v.is_string())
        throw SchemaError(id, std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

inline int require_int(const nlohmann::json& rec, const char* key, const std::string& id) {
    const auto& v = require_field(rec, key, id);
    if (!v.is_number_integer())
        throw SchemaError(id, std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

inline std::vector<std::string> require_string_array(const nlohmann::json& rec,
                                                     const char* key, const std::string& id) {
    const auto& v = require_field(rec, key, id);
    if (!v.is_array())
        throw SchemaError(id, std::string("field \"") + key + "\" must be an array");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string())
            throw SchemaError(id, std::string("field \"") + key + "\" must hold strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Applies one JSONL line handler per non-empty line, with 1-based numbering
// for error messages.
template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string where = path.filename().string() + ":" + std::to_string(line_no);
        fn(parse_json(line, where), where);
    }
}

// True/False for definite labels, nullopt for unknown/uncertain; throws on
// anything else.
inline std::optional<bool> truth_label(const nlohmann::json& v, const std::string& id) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (s == "true") return true;
        if (s == "false") return false;
        if (s == "unknown" || s == "uncertain") return std::nullopt;
    }
    throw SchemaError(id, "label must be true, false, or unknown");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// per-dataset adapters

inline std::vector<Task> load_reclor(const std::filesystem::path& path) {
    nlohmann::json doc = detail::parse_json(detail::read_file(path), path.filename().string());
    if (!doc.is_array())
        throw SchemaError(path.filename().string(), "expected a JSON array of records");
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        std::string fallback = path.filename().string() + "[" + std::to_string(i) + "]";
        std::string id = rec.contains("id_string")
                             ? detail::require_string(rec, "id_string", fallback)
                             : fallback;
        Task t;
        t.id = id;
        t.dataset = Dataset::ReClor;
        t.family = DatasetFamily::MultiChoice;
        t.context = detail::require_string(rec, "context", id);
        t.question = detail::require_string(rec, "question", id);
        t.options = detail::require_string_array(rec, "answers", id);
        int label = detail::require_int(rec, "label", id);
        if (label < 0 || label >= static_cast<int>(t.options.size()))
            throw SchemaError(id, "label index out of range");
        t.gold = Label::option(static_cast<char>('A' + label));
        tasks.push_back(std::move(t));
    }
    return tasks;
}

inline std::vector<Task> load_logiqa(const std::filesystem::path& path) {
    std::vector<Task> tasks;
    detail::for_each_jsonl(path, [&](const nlohmann::json& rec, const std::string& where) {
        std::string id = rec.contains("id") ? detail::require_string(rec, "id", where)
                                            : "logiqa-" + std::to_string(tasks.size() + 1);
        Task t;
        t.id = id;
        t.dataset = Dataset::LogiQA;
        t.family = DatasetFamily::MultiChoice;
        t.context = detail::require_string(rec, "context", id);
        t.question = detail::require_string(rec, "question", id);
        t.options = detail::require_string_array(rec, "options", id);
        int answer = detail::require_int(rec, "answer", id);
        if (answer < 0 || answer >= static_cast<int>(t.options.size()))
            throw SchemaError(id, "answer index out of range");
        t.gold = Label::option(static_cast<char>('A' + answer));
        if (rec.contains("language"))
            t.meta.language = detail::require_string(rec, "language", id);
        tasks.push_back(std::move(t));
    });
    return tasks;
}

inline std::vector<Task> load_ruletaker(const std::filesystem::path& path) {
    std::vector<Task> tasks;
    detail::for_each_jsonl(path, [&](const nlohmann::json& rec, const std::string& where) {
        std::string theory_id = detail::require_string(rec, "id", where);
        std::string context = detail::require_string(rec, "context", theory_id);
        const auto& questions = detail::require_field(rec, "questions", theory_id);
        if (!questions.is_array())
            throw SchemaError(theory_id, "field \"questions\" must be an array");
        for (const auto& q : questions) {
            std::string qid = theory_id + "-" + detail::require_string(q, "id", theory_id);
            auto truth = detail::truth_label(detail::require_field(q, "label", qid), qid);
            if (!truth) continue;  // open-world entry: no definite truth value
            Task t;
            t.id = qid;
            t.dataset = Dataset::RuleTaker;
            t.family = DatasetFamily::BinaryEntail;
            t.context = context;
            t.question = detail::require_string(q, "text", qid);
            t.gold = Label::truth(*truth);
            t.meta.cwa = true;
            if (q.contains("meta") && q["meta"].contains("QDep"))
                t.meta.depth = detail::require_int(q["meta"], "QDep", qid);
            tasks.push_back(std::move(t));
        }
    });
    return tasks;
}

inline std::vector<Task> load_proofwriter(const std::filesystem::path& path) {
    std::vector<Task> tasks;
    detail::for_each_jsonl(path, [&](const nlohmann::json& rec, const std::string& where) {
        std::string theory_id = detail::require_string(rec, "id", where);
        std::string theory = detail::require_string(rec, "theory", theory_id);
        const auto& questions = detail::require_field(rec, "questions", theory_id);
        if (!questions.is_object())
            throw SchemaError(theory_id, "field \"questions\" must be an object");
        for (const auto& [key, q] : questions.items()) {
            std::string qid = theory_id + "-" + key;
            auto truth = detail::truth_label(detail::require_field(q, "answer", qid), qid);
            if (!truth) continue;  // open-world entry
            Task t;
            t.id = qid;
            t.dataset = Dataset::ProofWriter;
            t.family = DatasetFamily::BinaryEntail;
            t.context = theory;
            t.question = detail::require_string(q, "question", qid);
            t.gold = Label::truth(*truth);
            t.meta.cwa = true;
            if (q.contains("QDep")) t.meta.depth = detail::require_int(q, "QDep", qid);
            tasks.push_back(std::move(t));
        }
    });
    return tasks;
}

inline std::vector<Task> load_folio(const std::filesystem::path& path) {
    std::vector<Task> tasks;
    auto id_part = [](const nlohmann::json& rec, const char* key, const std::string& where) {
        const auto& v = detail::require_field(rec, key, where);
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_string()) return v.get<std::string>();
        throw SchemaError(where, std::string("field \"") + key + "\" must be a string or int");
    };
    detail::for_each_jsonl(path, [&](const nlohmann::json& rec, const std::string& where) {
        std::string id =
            "folio-" + id_part(rec, "story_id", where) + "-" + id_part(rec, "example_id", where);
        auto truth = detail::truth_label(detail::require_field(rec, "label", id), id);
        if (!truth) return;  // uncertain entry: no definite truth value
        Task t;
        t.id = id;
        t.dataset = Dataset::FOLIO;
        t.family = DatasetFamily::BinaryEntail;
        const auto& premises = detail::require_field(rec, "premises", id);
        if (premises.is_string()) {
            t.context = premises.get<std::string>();
        } else if (premises.is_array()) {
            std::string joined;
            for (const auto& p : premises) {
                if (!p.is_string())
                    throw SchemaError(id, "field \"premises\" must hold strings");
                if (!joined.empty()) joined += "\n";
                joined += p.get<std::string>();
            }
            t.context = joined;
        } else {
            throw SchemaError(id, "field \"premises\" must be a string or array");
        }
        t.question = detail::require_string(rec, "conclusion", id);
        t.gold = Label::truth(*truth);
        t.meta.cwa = true;
        tasks.push_back(std::move(t));
    });
    return tasks;
}

// ---------------------------------------------------------------------------
// filtering and the normalized form

inline std::vector<Task> apply_filter(std::vector<Task> tasks, const FilterSpec& filter) {
    std::vector<Task> out;
    for (auto& t : tasks) {
        if (filter.depth && t.meta.depth != filter.depth) continue;
        if (filter.cwa_only && t.meta.cwa != true) continue;
        if (filter.ids && !filter.ids->count(t.id)) continue;
        out.push_back(std::move(t));
    }
    return out;
}

inline std::vector<Task> load_dataset(Dataset dataset, const std::filesystem::path& path,
                                      const FilterSpec& filter = {}) {
    std::vector<Task> tasks;
    switch (dataset) {
        case Dataset::ReClor: tasks = load_reclor(path); break;
        case Dataset::LogiQA: tasks = load_logiqa(path); break;
        case Dataset::RuleTaker: tasks = load_ruletaker(path); break;
        case Dataset::ProofWriter: tasks = load_proofwriter(path); break;
        case Dataset::FOLIO: tasks = load_folio(path); break;
    }
    tasks = apply_filter(std::move(tasks), filter);
    std::set<std::string> seen;
    for (const Task& t : tasks) {
        if (!seen.insert(t.id).second) throw SchemaError(t.id, "duplicate task id");
        validate_task(t);
    }
    return tasks;
}

inline nlohmann::json task_to_json(const Task& t) {
    nlohmann::json meta = nlohmann::json::object();
    if (t.meta.depth) meta["depth"] = *t.meta.depth;
    if (t.meta.cwa) meta["cwa"] = *t.meta.cwa;
    if (t.meta.language) meta["language"] = *t.meta.language;
    return nlohmann::json{
        {"id", t.id},
        {"family", to_string(t.family)},
        {"context", t.context},
        {"question", t.question},
        {"options", t.options},
        {"gold", t.gold.str()},
        {"dataset", to_string(t.dataset)},
        {"meta", meta},
    };
}

inline Task task_from_json(const nlohmann::json& rec, const std::string& where) {
    Task t;
    t.id = detail::require_string(rec, "id", where);
    t.family = family_from_string(detail::require_string(rec, "family", t.id));
    t.context = detail::require_string(rec, "context", t.id);
    t.question = detail::require_string(rec, "question", t.id);
    t.options = detail::require_string_array(rec, "options", t.id);
    t.gold = Label::from_string(detail::require_string(rec, "gold", t.id));
    t.dataset = dataset_from_string(detail::require_string(rec, "dataset", t.id));
    const auto& meta = detail::require_field(rec, "meta", t.id);
    if (!meta.is_object()) throw SchemaError(t.id, "field \"meta\" must be an object");
    if (meta.contains("depth")) t.meta.depth = detail::require_int(meta, "depth", t.id);
    if (meta.contains("cwa")) {
        if (!meta["cwa"].is_boolean()) throw SchemaError(t.id, "meta.cwa must be a boolean");
        t.meta.cwa = meta["cwa"].get<bool>();
    }
    if (meta.contains("language"))
        t.meta.language = detail::require_string(meta, "language", t.id);
    validate_task(t);
    return t;
}

inline std::vector<Task> read_tasks(const std::filesystem::path& path) {
    std::vector<Task> tasks;
    std::set<std::string> seen;
    detail::for_each_jsonl(path, [&](const nlohmann::json& rec, const std::string& where) {
        Task t = task_from_json(rec, where);
        if (!seen.insert(t.id).second) throw SchemaError(t.id, "duplicate task id");
        tasks.push_back(std::move(t));
    });
    return tasks;
}

inline void write_tasks(const std::filesystem::path& path, const std::vector<Task>& tasks) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFile(path.string());
    for (const Task& t : tasks) out << task_to_json(t).dump() << "\n";
}

}  // namespace lot
