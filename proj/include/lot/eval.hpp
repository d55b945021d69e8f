#pragma once

// Evaluation driver: runs method x dataset matrices over a gateway with a
// bounded worker pool, produces the RunReport plus a per-task outcome log,
// and persists everything under reports/, outcomes/ and transcripts/.

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lot/datasets.hpp"
#include "lot/gateway.hpp"
#include "lot/methods.hpp"
#include "lot/report.hpp"

namespace lot {

// ---------------------------------------------------------------------------
// method naming

enum class BaseKind { Direct, Cot, Sc, CotSc, Tot };

struct MethodSpec {
    BaseKind base = BaseKind::Direct;
    bool lot = false;  // augment context first

    std::string base_name() const {
        switch (base) {
            case BaseKind::Direct: return "direct";
            case BaseKind::Cot: return "cot";
            case BaseKind::Sc: return "sc";
            case BaseKind::CotSc: return "cot-sc";
            case BaseKind::Tot: return "tot";
        }
        return "";
    }

    // "lot" alone means augmented direct prompting; its delta anchors there.
    std::string name() const {
        if (!lot) return base_name();
        return base == BaseKind::Direct ? "lot" : "lot+" + base_name();
    }

    static MethodSpec parse(const std::string& text) {
        MethodSpec m;
        std::string rest = text;
        if (text == "lot" || text.rfind("lot+", 0) == 0) {
            m.lot = true;
            rest = text == "lot" ? "direct" : text.substr(4);
        }
        if (rest == "direct") m.base = BaseKind::Direct;
        else if (rest == "cot") m.base = BaseKind::Cot;
        else if (rest == "sc") m.base = BaseKind::Sc;
        else if (rest == "cot-sc") m.base = BaseKind::CotSc;
        else if (rest == "tot") m.base = BaseKind::Tot;
        else throw Error("unknown method '" + text + "'");
        return m;
    }

    friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

// ---------------------------------------------------------------------------
// configuration

struct EvalConfig {
    std::vector<Dataset> datasets;
    std::vector<MethodSpec> methods;
    std::string model = "gpt-3.5-turbo-0125";
    Mode mode = Mode::Replay;
    int parallelism = 8;
    int sc_k = 5;  // samples per self-consistency vote
    LotOptions lot;
    ToTLimits tot;
    bool fixtures = false;  // run on the bundled fixture datasets
    std::string fixtures_dir = "fixtures";
    std::string data_dir = "data";
    std::string out_dir = ".";
    std::string run_id;  // empty: derived from wall clock at run start
    std::string transcript;  // replay/record transcript path; empty: out_dir/transcripts/<run_id>.json
    unsigned seed = 0;  // request backoff jitter
};

inline std::filesystem::path dataset_file(const EvalConfig& cfg, Dataset d) {
    std::filesystem::path dir = cfg.fixtures
                                    ? std::filesystem::path(cfg.fixtures_dir) / "datasets"
                                    : std::filesystem::path(cfg.data_dir);
    return dir / (to_string(d) + (d == Dataset::ReClor ? ".json" : ".jsonl"));
}

// Fixture runs skip the implication id list (fixture ids are synthetic); real
// runs pick it up from the fixtures directory when present.
inline FilterSpec dataset_filter(const EvalConfig& cfg, Dataset d) {
    if (cfg.fixtures || d != Dataset::ReClor) return published_subset_filter(d);
    auto ids = std::filesystem::path(cfg.fixtures_dir) / "reclor_implication_ids.txt";
    return published_subset_filter(d, std::filesystem::exists(ids) ? ids : std::filesystem::path{});
}

inline nlohmann::json config_snapshot(const EvalConfig& cfg) {
    nlohmann::json datasets = nlohmann::json::array();
    for (Dataset d : cfg.datasets) datasets.push_back(to_string(d));
    nlohmann::json methods = nlohmann::json::array();
    for (const MethodSpec& m : cfg.methods) methods.push_back(m.name());
    return nlohmann::json{
        {"datasets", datasets},
        {"methods", methods},
        {"model", cfg.model},
        {"mode", to_string(cfg.mode)},
        {"parallelism", cfg.parallelism},
        {"sc_k", cfg.sc_k},
        {"lot",
         {{"laws",
           {{"double_negation", cfg.lot.laws.double_negation},
            {"contraposition", cfg.lot.laws.contraposition},
            {"transitivity", cfg.lot.laws.transitivity}}},
          {"keep_fraction", cfg.lot.keep_fraction},
          {"use_extension", cfg.lot.use_extension},
          {"two_stage", cfg.lot.two_stage}}},
        {"tot", {{"branch", cfg.tot.branch}, {"success_target", cfg.tot.success_target}}},
        {"fixtures", cfg.fixtures},
        {"seed", cfg.seed},
    };
}

// ---------------------------------------------------------------------------
// worker pool

// Order-preserving parallel map; exceptions from the function propagate after
// all workers join. parallelism <= 1 runs inline.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, int parallelism, Fn fn)
    -> std::vector<decltype(fn(items.front()))> {
    using Out = decltype(fn(items.front()));
    std::vector<Out> results(items.size());
    if (items.empty()) return results;

    int workers = std::max(1, std::min<int>(parallelism, static_cast<int>(items.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            try {
                results[i] = fn(items[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

// ---------------------------------------------------------------------------
// matrix execution

struct TaskOutcome {
    std::string task_id;
    std::string dataset;
    std::string method;
    Label predicted;
    Label gold;
    bool correct = false;
    std::optional<std::string> augmented;  // augmented context, lot methods only
    std::optional<ToTMetrics> tot;
    std::optional<std::string> error;  // gateway failure for this task
};

struct MatrixResult {
    RunReport report;
    std::vector<TaskOutcome> outcomes;
    std::vector<std::string> warnings;
};

namespace detail {

inline TaskOutcome evaluate_task(const Task& task, const MethodSpec& method,
                                 const EvalConfig& cfg, const Llm& llm) {
    TaskOutcome out;
    out.task_id = task.id;
    out.dataset = to_string(task.dataset);
    out.method = method.name();
    out.gold = task.gold;
    try {
        Task subject = task;
        if (method.lot) {
            subject = apply_lot(task, llm, cfg.lot);
            out.augmented = subject.context;
        }
        Answer answer;
        switch (method.base) {
            case BaseKind::Direct: answer = run_direct(subject, llm); break;
            case BaseKind::Cot: answer = run_cot(subject, llm); break;
            case BaseKind::Sc:
                answer = run_sc(cfg.sc_k, BaseMethod::Direct, subject, llm);
                break;
            case BaseKind::CotSc:
                answer = run_sc(cfg.sc_k, BaseMethod::Cot, subject, llm);
                break;
            case BaseKind::Tot: {
                auto [a, metrics] = explore_tot(subject, llm, cfg.tot);
                answer = a;
                out.tot = metrics;
                break;
            }
        }
        out.predicted = answer.label;
    } catch (const GatewayError& err) {
        out.predicted = Label::unknown();
        out.error = err.what();
    }
    out.correct = out.predicted == out.gold;
    return out;
}

inline ToTAggregate aggregate_tot(const std::vector<const ToTMetrics*>& metrics) {
    ToTAggregate agg;
    if (metrics.empty()) return agg;
    double n = static_cast<double>(metrics.size());
    int fr = 0;
    for (const ToTMetrics* m : metrics) {
        agg.ts_mean += m->total_states;
        agg.ss_mean += m->successful_states;
        fr += m->full_reasoning ? 1 : 0;
    }
    agg.ts_mean /= n;
    agg.ss_mean /= n;
    agg.fr_pct = 100.0 * fr / n;
    return agg;
}

inline std::string derive_run_id() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "run-%Y%m%d-%H%M%S", &tm);
    return buf;
}

}  // namespace detail

inline MatrixResult run_matrix(const EvalConfig& cfg, Gateway& gateway) {
    if (cfg.datasets.empty()) throw Error("no datasets selected");
    if (cfg.methods.empty()) throw Error("no methods selected");

    MatrixResult result;
    result.report.run_id = cfg.run_id.empty() ? detail::derive_run_id() : cfg.run_id;
    result.report.config_snapshot = config_snapshot(cfg);

    Llm llm{&gateway, cfg.model};
    // recording must assign per-fingerprint ordinals in a reproducible order
    int parallelism = gateway.mode() == Mode::Record ? 1 : cfg.parallelism;

    std::vector<const ToTMetrics*> all_tot;
    for (Dataset dataset : cfg.datasets) {
        auto tasks = load_dataset(dataset, dataset_file(cfg, dataset),
                                  dataset_filter(cfg, dataset));
        if (!cfg.fixtures)
            if (auto warn = count_check_message(dataset, tasks.size()))
                result.warnings.push_back(*warn);
        if (tasks.empty()) {
            result.warnings.push_back("warning: no tasks selected from " +
                                      to_string(dataset));
            continue;
        }

        for (const MethodSpec& method : cfg.methods) {
            if (method.base == BaseKind::Tot &&
                family_of(dataset) != DatasetFamily::BinaryEntail)
                continue;  // tree search is defined for binary entailment only

            auto outcomes = parallel_map(tasks, parallelism, [&](const Task& task) {
                return detail::evaluate_task(task, method, cfg, llm);
            });

            ReportRow row;
            row.dataset = to_string(dataset);
            row.method = method.name();
            row.model = cfg.model;
            row.n = static_cast<int>(outcomes.size());
            std::vector<const ToTMetrics*> row_tot;
            for (const TaskOutcome& o : outcomes) {
                if (o.correct) ++row.correct;
                if (o.error) row.partial_failure = true;
                if (o.tot) row_tot.push_back(&*o.tot);
            }
            row.accuracy = 100.0 * row.correct / row.n;
            if (!row_tot.empty()) row.tot = detail::aggregate_tot(row_tot);
            result.report.rows.push_back(row);
            for (TaskOutcome& o : outcomes) result.outcomes.push_back(std::move(o));
        }
    }

    // deltas: each augmented row anchors to its bare-method row in this report
    std::map<std::string, double> accuracy_by_key;
    for (const ReportRow& row : result.report.rows)
        accuracy_by_key[row.dataset + "|" + row.method + "|" + row.model] = row.accuracy;
    for (ReportRow& row : result.report.rows) {
        MethodSpec spec = MethodSpec::parse(row.method);
        if (!spec.lot) continue;
        spec.lot = false;
        auto it = accuracy_by_key.find(row.dataset + "|" + spec.name() + "|" + row.model);
        if (it != accuracy_by_key.end()) row.delta_vs_baseline = row.accuracy - it->second;
    }

    // top-level tree-search aggregate spans every tree-search outcome
    for (const TaskOutcome& o : result.outcomes)
        if (o.tot) all_tot.push_back(&*o.tot);
    if (!all_tot.empty()) result.report.tot_metrics = detail::aggregate_tot(all_tot);

    return result;
}

// The report's counters must be re-derivable from the outcome log.
inline void verify_report(const RunReport& report, const std::vector<TaskOutcome>& outcomes) {
    std::map<std::string, std::pair<int, int>> tally;  // key -> {n, correct}
    for (const TaskOutcome& o : outcomes) {
        auto& [n, correct] = tally[o.dataset + "|" + o.method];
        ++n;
        if (o.correct) ++correct;
    }
    for (const ReportRow& row : report.rows) {
        auto it = tally.find(row.dataset + "|" + row.method);
        if (it == tally.end()) throw Error("report row missing from outcome log: " +
                                           row.dataset + "/" + row.method);
        if (it->second.first != row.n || it->second.second != row.correct)
            throw Error("report row disagrees with outcome log: " + row.dataset + "/" +
                        row.method);
    }
}

// ---------------------------------------------------------------------------
// persistence

inline nlohmann::json outcome_to_json(const TaskOutcome& o) {
    nlohmann::json j{
        {"task", o.task_id},   {"dataset", o.dataset},     {"method", o.method},
        {"predicted", o.predicted.str()}, {"gold", o.gold.str()}, {"correct", o.correct},
    };
    if (o.augmented) j["augmented"] = *o.augmented;
    if (o.tot)
        j["tot"] = {{"TS", o.tot->total_states},
                    {"SS", o.tot->successful_states},
                    {"FR", o.tot->full_reasoning}};
    if (o.error) j["error"] = *o.error;
    return j;
}

struct RunPaths {
    std::filesystem::path report_json;
    std::filesystem::path report_csv;
    std::filesystem::path outcomes;
    std::filesystem::path transcript;  // record mode only
};

inline RunPaths run_paths(const EvalConfig& cfg, const std::string& run_id) {
    std::filesystem::path base(cfg.out_dir);
    RunPaths p;
    p.report_json = base / "reports" / (run_id + ".json");
    p.report_csv = base / "reports" / (run_id + ".csv");
    p.outcomes = base / "outcomes" / (run_id + ".jsonl");
    p.transcript = cfg.transcript.empty()
                       ? base / "transcripts" / (run_id + ".json")
                       : std::filesystem::path(cfg.transcript);
    return p;
}

inline RunPaths persist_run(const EvalConfig& cfg, const MatrixResult& result) {
    RunPaths paths = run_paths(cfg, result.report.run_id);
    std::filesystem::create_directories(paths.report_json.parent_path());
    std::filesystem::create_directories(paths.outcomes.parent_path());

    std::ofstream report_out(paths.report_json, std::ios::binary);
    report_out << report_to_json(result.report).dump(2) << "\n";
    std::ofstream csv_out(paths.report_csv, std::ios::binary);
    csv_out << report_to_csv(result.report);
    std::ofstream outcomes_out(paths.outcomes, std::ios::binary);
    for (const TaskOutcome& o : result.outcomes) outcomes_out << outcome_to_json(o).dump() << "\n";
    return paths;
}

}  // namespace lot
