// Regenerates the recorded provider transcripts under fixtures/transcripts/.
// Every provider exchange is scripted through the in-memory transport; nothing
// here touches the network.  Each generator re-runs the exact pipeline the
// tests replay and asserts the outcomes it is freezing, so a drifted fixture
// fails loudly at generation time instead of silently corrupting tests.
//
// Usage: gen_fixtures [fixtures-dir]   (default: ./fixtures)

#include <algorithm>
#include <array>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lot/cli.hpp"
#include "lot/fake_transport.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lot;

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::runtime_error("fixture generation failed: " + message);
}

bool has(const std::string& body, const std::string& marker) {
    return body.find(marker) != std::string::npos;
}

// --------------------------------------------------------------------------
// shared script pieces

// Extraction reply for the worked-example task (the proofwriter golden task):
// three symbols and the two premise implications.
const char* kGoldenExtraction =
    "A: a person reads a book\n"
    "B: person gains knowledge\n"
    "C: become smarter\n"
    "A→B\n"
    "B→C";

const char* kNoStructure = "no explicit logical structure found";

// Reference verbalization of each expression the pipeline can ask for.
const std::vector<std::pair<std::string, std::string>>& sentence_table() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"A → B", "If a person reads a book, then person gains knowledge."},
        {"A → C", "If a person reads a book, that person become smarter."},
        {"B → C", "If person gains knowledge, then become smarter."},
        {"¬B → ¬A",
         "If it is not the case that person gains knowledge, then it is not the case that a "
         "person reads a book."},
        {"¬C → ¬A",
         "If it is not the case that become smarter, then it is not the case that a person "
         "reads a book."},
        {"¬C → ¬B",
         "If it is not the case that become smarter, then it is not the case that person "
         "gains knowledge."},
    };
    return table;
}

// One sentence per requested expression, in the prompt's (canonical) order.
std::string translation_reply(const std::string& body) {
    std::string out;
    for (const auto& [expr, sentence] : sentence_table())
        if (has(body, expr)) out += sentence + "\n";
    require(!out.empty(), "translation request with no known expressions");
    return out;
}

// Marker the augmented golden context carries (first appended line).
const char* kAugmentedMarker = "5. If a person reads a book";

// Tree-search script: which flows accept proposals and what the final
// judgement says.  Validation/sourcing prompts carry only premises and
// proposition, so two tasks sharing premises see identical replies — a
// requirement for parallel replay determinism.
std::string tot_generate_reply(const std::string& body) {
    if (has(body, "Harry")) return "\"Proposition\": \"Harry gains knowledge.\"";
    if (has(body, "fern")) return "\"Proposition\": \"The fern grows.\"";
    if (has(body, "wolf")) return "\"Proposition\": \"Rex howls.\"";
    if (has(body, "lamp")) return "\"Proposition\": \"The lamp glows.\"";
    if (has(body, "Brookton")) return "\"Proposition\": \"The hotels fill up.\"";
    if (has(body, "penguin")) return "\"Proposition\": \"Pip cannot fly.\"";
    throw std::logic_error("unscripted generate request");
}

std::string tot_validate_reply(const std::string& body) {
    if (has(body, kAugmentedMarker)) return "True";  // augmented premises deduce cleanly
    if (has(body, "Harry")) return "False";          // bare premises stall
    if (has(body, "fern")) return "False";
    return "True";  // wolf, lamp, Brookton, penguin
}

std::string tot_sourced_reply(const std::string& body) {
    if (has(body, "wolf")) return "False";     // sound but unsourced
    if (has(body, "penguin")) return "False";  // likewise
    return "True";
}

std::string tot_final_reply(const std::string& body) {
    if (has(body, kAugmentedMarker)) return "The hypothesis is true.";
    if (has(body, "Harry")) return "The hypothesis is false.";
    if (has(body, "fern")) return "The hypothesis is false.";
    if (has(body, "empty")) return "The hypothesis is false.";  // folio contrapositive case
    return "The hypothesis is true.";
}

// Answer votes per task, indexed by how often the identical request was
// already posted (repeat 0 feeds direct/cot, 1.. feed self-consistency and
// augmented reruns).
std::string answer_reply(const std::string& body, int repeat) {
    static const std::map<std::string, std::array<const char*, 5>> votes = {
        // multiple choice
        {"gala", {"Answer: A", "Answer: B", "Answer: A", "Answer: B", "Answer: C"}},
        {"sculpture", {"Answer: C", "Answer: C", "Answer: C", "Answer: C", "Answer: C"}},
        {"orchestra", {"Answer: C", "Answer: B", "Answer: B", "Answer: B", "Answer: C"}},
        {"certificate", {"Answer: A", "Answer: A", "Answer: D", "Answer: A", "Answer: A"}},
        {"library", {"Answer: B", "Answer: B", "Answer: B", "Answer: B", "Answer: B"}},
        {"shelter", {"Answer: C", "Answer: A", "Answer: C", "Answer: A", "Answer: C"}},
        {"仓库", {"Answer: B", "Answer: B", "Answer: B", "Answer: B", "Answer: B"}},
        {"列车", {"Answer: A", "Answer: B", "Answer: A", "Answer: B", "Answer: A"}},
        // binary
        {"fern", {"Incorrect", "Correct", "Incorrect", "Correct", "Incorrect"}},
        {"wolf", {"Correct", "Correct", "Correct", "Correct", "Correct"}},
        {"lamp", {"Incorrect", "Incorrect", "Correct", "Incorrect", "Incorrect"}},
        {"empty", {"False", "False", "False", "False", "False"}},
        {"Brookton", {"True", "True", "True", "True", "True"}},
        {"penguin", {"False", "True", "False", "True", "False"}},
    };
    if (has(body, kAugmentedMarker)) return "Correct";  // augmented worked example
    if (has(body, "Harry"))
        return std::array<const char*, 5>{"Correct", "Correct", "Incorrect", "Correct",
                                          "Correct"}[repeat % 5];
    for (const auto& [marker, table] : votes)
        if (has(body, marker)) return table[repeat % 5];
    throw std::logic_error("unscripted answer request");
}

// The one handler covering every phase a full matrix run can request.
std::string matrix_script(const json& request, int repeat) {
    std::string body = request.dump();
    if (has(body, "identify all possible propositions"))
        return has(body, "Harry read the book") ? kGoldenExtraction : kNoStructure;
    if (has(body, "translate each expression")) return translation_reply(body);
    if (has(body, "deduce a \\\"Proposition\\\" from two given")) return tot_generate_reply(body);
    if (has(body, "is valid or not")) return tot_validate_reply(body);
    if (has(body, "with certainty")) return tot_sourced_reply(body);
    if (has(body, "judge whether the \\\"Hypothesis\\\"")) return tot_final_reply(body);
    return answer_reply(body, repeat);
}

// --------------------------------------------------------------------------
// recording rigs

struct Recorder {
    std::shared_ptr<FakeTransport> transport;
    Gateway gateway;
    Llm llm;

    explicit Recorder(FakeTransport::Handler handler)
        : transport(std::make_shared<FakeTransport>(std::move(handler))),
          gateway(Mode::Record,
                  GatewayConfig{.api_key = "fixture-key", .backoff_base_ms = 0}, transport),
          llm{&gateway} {}

    void save(const fs::path& path) {
        gateway.save_transcript(path);
        std::cout << "wrote " << path.string() << " (" << gateway.transcript().size()
                  << " entries)\n";
    }
};

Task load_single(const fs::path& fixtures, Dataset d, const std::string& id) {
    EvalConfig cfg;
    cfg.fixtures = true;
    cfg.fixtures_dir = fixtures.string();
    for (Task& t : load_dataset(d, dataset_file(cfg, d), dataset_filter(cfg, d)))
        if (t.id == id) return t;
    throw std::runtime_error("fixture task not found: " + id);
}

std::string golden_augmented_context(const Task& golden) {
    return golden.context + "\n5. If a person reads a book, that person become smarter.";
}

// --------------------------------------------------------------------------
// generators

// Worked-example transcript: extraction, the single-sentence translation, and
// the direct answer over the augmented context.
void gen_worked_example(const fs::path& fixtures) {
    std::vector<Task> tasks =
        read_tasks(fixtures / "datasets" / "worked_example.jsonl");
    require(tasks.size() == 1, "worked_example.jsonl must hold exactly one task");
    const Task& task = tasks[0];

    Recorder rec([](const json& request, int) -> std::string {
        std::string body = request.dump();
        if (has(body, "identify all possible propositions")) return kGoldenExtraction;
        if (has(body, "translate each expression"))
            return "If a person reads a book, that person become smarter.";
        if (has(body, kAugmentedMarker)) return "Correct";
        throw std::logic_error("unscripted request in worked-example flow");
    });

    Task augmented = apply_lot(task, rec.llm);
    require(augmented.context == golden_augmented_context(task),
            "augmented context drifted from the worked example");
    Answer answer = run_direct(augmented, rec.llm);
    require(answer.label == Label::truth(true), "worked example must answer True");
    rec.save(fixtures / "transcripts" / "worked_example.json");
}

// Self-consistency transcript: a 2-2-1 tie on a multiple-choice task and a
// 3-2 majority on a binary task, five samples each.
void gen_sc(const fs::path& fixtures) {
    Task choice = load_single(fixtures, Dataset::ReClor, "test_1");
    Task binary = load_single(fixtures, Dataset::ProofWriter, "pw-1-Q1");

    Recorder rec([](const json& request, int repeat) -> std::string {
        std::string body = request.dump();
        if (has(body, "gala")) {
            std::array<const char*, 5> v{"Answer: A", "Answer: B", "Answer: A", "Answer: B",
                                         "Answer: C"};
            require(repeat < 5, "too many samples for the choice task");
            return v[repeat];
        }
        if (has(body, "Harry")) {
            std::array<const char*, 5> v{"Correct", "Correct", "Incorrect", "Incorrect",
                                         "Correct"};
            require(repeat < 5, "too many samples for the binary task");
            return v[repeat];
        }
        throw std::logic_error("unscripted request in sc flow");
    });

    Answer tie = run_sc(5, BaseMethod::Direct, choice, rec.llm);
    require(tie.label == Label::option('A'), "2-2-1 tie must resolve to the first leader");
    require(tie.votes.at("A") == 2 && tie.votes.at("B") == 2 && tie.votes.at("C") == 1,
            "unexpected vote tally on the choice task");
    Answer majority = run_sc(5, BaseMethod::Direct, binary, rec.llm);
    require(majority.label == Label::truth(true), "3-2 majority must be True");
    require(rec.gateway.transcript().size() == 10, "sc transcript must hold 10 samples");
    rec.save(fixtures / "transcripts" / "sc.json");
}

// Tree-search narrative pair: the bare worked-example premises stall (five
// rejected proposals), the augmented premises reach four straight successes.
void gen_tot(const fs::path& fixtures) {
    Task bare = load_single(fixtures, Dataset::ProofWriter, "pw-1-Q1");
    Task augmented = bare;
    augmented.context = golden_augmented_context(bare);

    Recorder rec([](const json& request, int) -> std::string {
        std::string body = request.dump();
        if (has(body, "deduce a \\\"Proposition\\\" from two given"))
            return tot_generate_reply(body);
        if (has(body, "is valid or not")) return tot_validate_reply(body);
        if (has(body, "with certainty")) return tot_sourced_reply(body);
        if (has(body, "judge whether the \\\"Hypothesis\\\"")) return tot_final_reply(body);
        throw std::logic_error("unscripted request in tot flow");
    });

    auto [bare_answer, bare_metrics] = explore_tot(bare, rec.llm);
    require(bare_metrics.total_states == 5 && bare_metrics.successful_states == 0 &&
                !bare_metrics.full_reasoning,
            "bare tree search must burn five proposals without a success");
    require(bare_answer.label == Label::truth(false), "bare tree search must answer False");

    auto [aug_answer, aug_metrics] = explore_tot(augmented, rec.llm);
    require(aug_metrics.total_states == 4 && aug_metrics.successful_states == 4 &&
                aug_metrics.full_reasoning,
            "augmented tree search must succeed four times straight");
    require(aug_answer.label == Label::truth(true), "augmented tree search must answer True");
    rec.save(fixtures / "transcripts" / "tot.json");
}

// Augmentation-ablation transcripts: one proofwriter lot run per knob, with
// line-per-expression translations so appended-sentence counts are exact.
void gen_ablations(const fs::path& fixtures) {
    struct Variant {
        const char* file;
        LotOptions options;
        int appended_lines;
    };
    LotOptions no_contraposition;
    no_contraposition.laws.contraposition = false;
    LotOptions keep_half;
    keep_half.keep_fraction = 0.5;
    LotOptions no_extension;
    no_extension.use_extension = false;
    const std::vector<Variant> variants = {
        {"ablation_full.json", LotOptions{}, 4},
        {"ablation_no_contraposition.json", no_contraposition, 1},
        {"ablation_keep_half.json", keep_half, 2},
        {"ablation_no_extension.json", no_extension, 2},
    };

    for (const Variant& variant : variants) {
        Recorder rec(matrix_script);
        EvalConfig cfg;
        cfg.fixtures = true;
        cfg.fixtures_dir = fixtures.string();
        cfg.datasets = {Dataset::ProofWriter};
        cfg.methods = {MethodSpec::parse("lot")};
        cfg.lot = variant.options;
        cfg.run_id = "ablation";

        MatrixResult result = run_matrix(cfg, rec.gateway);
        require(result.outcomes.size() == 2, "ablation run must cover both proofwriter tasks");
        const TaskOutcome& golden = result.outcomes[0];
        require(golden.task_id == "pw-1-Q1", "golden task must come first");
        require(!golden.error, "ablation run hit a scripting gap: " +
                                   golden.error.value_or(""));
        const Task original = load_single(fixtures, Dataset::ProofWriter, "pw-1-Q1");
        require(golden.augmented.has_value(), "lot outcome must carry the augmented context");
        long added = std::count(golden.augmented->begin(), golden.augmented->end(), '\n') -
                     std::count(original.context.begin(), original.context.end(), '\n');
        require(added == variant.appended_lines,
                std::string(variant.file) + ": expected " +
                    std::to_string(variant.appended_lines) + " appended sentences, got " +
                    std::to_string(added));
        rec.save(fixtures / "transcripts" / variant.file);
    }
}

// The full default matrix: all five fixture datasets, all ten methods.
void gen_matrix(const fs::path& fixtures) {
    Recorder rec(matrix_script);
    EvalConfig cfg;
    cfg.fixtures = true;
    cfg.fixtures_dir = fixtures.string();
    cfg.datasets = all_datasets();
    cfg.methods = all_methods();
    cfg.run_id = "matrix";

    MatrixResult recorded = run_matrix(cfg, rec.gateway);
    require(recorded.warnings.empty(), "fixture matrix must not warn");
    // choice datasets skip both tree-search methods: 2x8 + 3x10 rows
    require(recorded.report.rows.size() == 46,
            "expected 46 rows, got " + std::to_string(recorded.report.rows.size()));
    require(recorded.outcomes.size() == 134,
            "expected 134 outcomes, got " + std::to_string(recorded.outcomes.size()));
    for (const TaskOutcome& outcome : recorded.outcomes)
        require(!outcome.error,
                "scripting gap on " + outcome.task_id + "/" + outcome.method + ": " +
                    outcome.error.value_or(""));

    fs::path path = fixtures / "transcripts" / "matrix.json";
    rec.save(path);

    // self-check: parallel replay of the saved transcript reproduces the
    // recorded report byte for byte, twice
    std::string recorded_bytes = report_to_json(recorded.report).dump(2);
    for (int round = 0; round < 2; ++round) {
        Gateway replayer(Mode::Replay, GatewayConfig{}, nullptr, Transcript::load(path));
        EvalConfig replay_cfg = cfg;
        replay_cfg.parallelism = 8;
        MatrixResult replayed = run_matrix(replay_cfg, replayer);
        require(report_to_json(replayed.report).dump(2) == recorded_bytes,
                "parallel replay diverged from the recorded matrix");
    }
    std::cout << "matrix replay self-check passed\n";
}

}  // namespace

int main(int argc, char** argv) {
    try {
        fs::path fixtures = argc > 1 ? fs::path(argv[1]) : fs::path("fixtures");
        require(fs::exists(fixtures / "datasets"), "fixture datasets not found under " +
                                                       fixtures.string());
        fs::create_directories(fixtures / "transcripts");
        gen_worked_example(fixtures);
        gen_sc(fixtures);
        gen_tot(fixtures);
        gen_ablations(fixtures);
        gen_matrix(fixtures);
        std::cout << "all fixture transcripts regenerated\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
