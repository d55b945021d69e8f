#pragma once

// Command-line surface.  Four subcommands:
//   run     — evaluate a method x dataset matrix and persist report artifacts
//   record  — run, capturing every provider exchange to a transcript
//   deduce  — offline closure over expression strings, novel results printed
//   report  — re-render a stored run report
// Everything writes to caller-supplied streams so tests can drive the CLI
// in-process.  Precedence: flags > config file (lot.json) > built-in defaults.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lot/eval.hpp"

namespace lot {

// ---------------------------------------------------------------------------
// small parsers

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

inline LawSet laws_from_names(const std::vector<std::string>& names) {
    LawSet set = LawSet::none();
    for (const std::string& name : names) {
        if (name == "all") set = LawSet::all();
        else if (name == "double-negation") set.double_negation = true;
        else if (name == "contraposition") set.contraposition = true;
        else if (name == "transitivity") set.transitivity = true;
        else
            throw Error("unknown law '" + name +
                        "' (expected double-negation, contraposition, transitivity, all)");
    }
    return set;
}

// Ablation tokens read as the thing being removed: "no-contraposition".
inline void apply_ablations(LawSet& laws, const std::vector<std::string>& tokens) {
    for (const std::string& token : tokens) {
        if (token == "no-double-negation") laws.double_negation = false;
        else if (token == "no-contraposition") laws.contraposition = false;
        else if (token == "no-transitivity") laws.transitivity = false;
        else
            throw Error("unknown ablation '" + token +
                        "' (expected no-double-negation, no-contraposition, no-transitivity)");
    }
}

inline std::vector<Dataset> datasets_from_names(const std::vector<std::string>& names) {
    std::vector<Dataset> out;
    for (const std::string& name : names) out.push_back(dataset_from_string(name));
    return out;
}

inline std::vector<MethodSpec> methods_from_names(const std::vector<std::string>& names) {
    std::vector<MethodSpec> out;
    for (const std::string& name : names) out.push_back(MethodSpec::parse(name));
    return out;
}

inline std::vector<Dataset> all_datasets() {
    return {Dataset::ReClor, Dataset::LogiQA, Dataset::RuleTaker, Dataset::ProofWriter,
            Dataset::FOLIO};
}

inline std::vector<MethodSpec> all_methods() {
    std::vector<MethodSpec> out;
    for (const char* name : {"direct", "cot", "sc", "cot-sc", "tot", "lot", "lot+cot",
                             "lot+sc", "lot+cot-sc", "lot+tot"})
        out.push_back(MethodSpec::parse(name));
    return out;
}

// ---------------------------------------------------------------------------
// config file

// JSON config mirroring the run flags; unknown keys are rejected so typos
// surface instead of silently using defaults.
inline void apply_config_file(const std::filesystem::path& path, EvalConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error("config " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw Error("config " + path.string() + " must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        if (key == "datasets")
            cfg.datasets = datasets_from_names(value.get<std::vector<std::string>>());
        else if (key == "methods")
            cfg.methods = methods_from_names(value.get<std::vector<std::string>>());
        else if (key == "model") cfg.model = value.get<std::string>();
        else if (key == "mode") cfg.mode = mode_from_string(value.get<std::string>());
        else if (key == "parallelism") cfg.parallelism = value.get<int>();
        else if (key == "sc_k") cfg.sc_k = value.get<int>();
        else if (key == "laws")
            cfg.lot.laws = laws_from_names(value.get<std::vector<std::string>>());
        else if (key == "keep_fraction") cfg.lot.keep_fraction = value.get<double>();
        else if (key == "use_extension") cfg.lot.use_extension = value.get<bool>();
        else if (key == "two_stage") cfg.lot.two_stage = value.get<bool>();
        else if (key == "tot_branch") cfg.tot.branch = value.get<int>();
        else if (key == "tot_target") cfg.tot.success_target = value.get<int>();
        else if (key == "fixtures") cfg.fixtures = value.get<bool>();
        else if (key == "fixtures_dir") cfg.fixtures_dir = value.get<std::string>();
        else if (key == "data_dir") cfg.data_dir = value.get<std::string>();
        else if (key == "out_dir") cfg.out_dir = value.get<std::string>();
        else if (key == "transcript") cfg.transcript = value.get<std::string>();
        else if (key == "run_id") cfg.run_id = value.get<std::string>();
        else if (key == "seed") cfg.seed = value.get<unsigned>();
        else throw Error("config " + path.string() + " has an unknown key '" + key + "'");
    }
}

// ---------------------------------------------------------------------------
// subcommand bodies

inline int cmd_deduce(const std::vector<std::string>& expr_args, const LawSet& laws,
                      const ClosureLimits& limits, std::ostream& out, std::ostream& err) {
    try {
        ExprSet premises;
        for (const std::string& text : expr_args) premises.insert(parse_expr(text));
        ExprSet fresh = novel_expressions(closure(premises, laws, limits), premises);
        for (const std::string& rendered : fresh.rendered()) out << rendered << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int cmd_report(const std::string& run_id, const std::string& out_dir,
                      std::ostream& out, std::ostream& err) {
    std::filesystem::path path =
        std::filesystem::path(out_dir) / "reports" / (run_id + ".json");
    try {
        std::ifstream in(path);
        if (!in) throw NotFound("no stored report for run '" + run_id + "' at " + path.string());
        out << render_report(report_from_json(nlohmann::json::parse(in)));
        return 0;
    } catch (const nlohmann::json::exception& e) {
        err << "error: report " << path.string() << " is not valid JSON: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

// Replay needs its transcript up front; prefer an explicit path, then the
// bundled fixture transcript, then the transcript of the named run.
inline std::filesystem::path replay_transcript_path(const EvalConfig& cfg) {
    if (!cfg.transcript.empty()) return cfg.transcript;
    if (cfg.fixtures)
        return std::filesystem::path(cfg.fixtures_dir) / "transcripts" / "matrix.json";
    if (!cfg.run_id.empty()) return run_paths(cfg, cfg.run_id).transcript;
    throw Error("replay mode needs --transcript, --fixtures, or --run-id to locate a transcript");
}

inline int cmd_run(EvalConfig cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.lot.keep_fraction <= 0.0 || cfg.lot.keep_fraction > 1.0)
            throw Error("--keep-fraction must be in (0, 1]");
        if (cfg.datasets.empty()) cfg.datasets = all_datasets();
        if (cfg.methods.empty()) cfg.methods = all_methods();

        GatewayConfig gateway_config;
        gateway_config.seed = cfg.seed;
        std::optional<Transcript> transcript;
        if (cfg.mode == Mode::Replay)
            transcript = Transcript::load(replay_transcript_path(cfg));
        Gateway gateway(cfg.mode, gateway_config, nullptr, std::move(transcript));

        MatrixResult result = run_matrix(cfg, gateway);
        verify_report(result.report, result.outcomes);
        for (const std::string& warning : result.warnings) err << warning << "\n";

        RunPaths paths = persist_run(cfg, result);
        if (cfg.mode == Mode::Record) gateway.save_transcript(paths.transcript);

        out << render_report(result.report);
        out << "report: " << paths.report_json.string() << "\n";
        out << "outcomes: " << paths.outcomes.string() << "\n";
        if (cfg.mode == Mode::Record) out << "transcript: " << paths.transcript.string() << "\n";

        bool all_failed = !result.outcomes.empty();
        for (const TaskOutcome& o : result.outcomes)
            if (!o.error) all_failed = false;
        if (all_failed) {
            err << "error: every task failed; see " << paths.outcomes.string() << "\n";
            return 1;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

// ---------------------------------------------------------------------------
// argument wiring

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"logic-augmented prompting over chat-completion providers", "lot"};
    app.require_subcommand(1);

    // deduce
    std::vector<std::string> expr_args;
    std::string law_names = "all";
    std::string ablate_tokens;
    ClosureLimits limits;
    CLI::App* deduce = app.add_subcommand("deduce", "closure over expression strings");
    deduce->add_option("exprs", expr_args, "expressions, e.g. \"¬A→¬B\"")->required();
    deduce->add_option("--laws", law_names, "comma list: double-negation, contraposition, transitivity, all");
    deduce->add_option("--ablate", ablate_tokens, "comma list: no-double-negation, no-contraposition, no-transitivity");
    deduce->add_option("--max-exprs", limits.max_exprs, "closure size bound");
    deduce->add_option("--max-rounds", limits.max_rounds, "closure round bound");

    // report
    std::string report_run_id;
    std::string report_out_dir = ".";
    CLI::App* report = app.add_subcommand("report", "re-render a stored run report");
    report->add_option("run-id", report_run_id, "run identifier")->required();
    report->add_option("--out-dir", report_out_dir, "artifact root the run was written to");

    // run / record share one flag set
    EvalConfig defaults;
    std::string dataset_names, method_names, model = defaults.model, mode_name = "replay";
    int parallelism = defaults.parallelism, sc_k = defaults.sc_k;
    int tot_branch = defaults.tot.branch, tot_target = defaults.tot.success_target;
    double keep_fraction = defaults.lot.keep_fraction;
    bool no_extension = false, two_stage = false, fixtures = false;
    std::string fixtures_dir = defaults.fixtures_dir, data_dir = defaults.data_dir;
    std::string out_dir = defaults.out_dir, transcript_path, run_id;
    unsigned seed = defaults.seed;
    std::string config_path = "lot.json";

    auto add_run_flags = [&](CLI::App* cmd) {
        std::map<std::string, CLI::Option*> opts;
        opts["dataset"] = cmd->add_option("--dataset", dataset_names,
                                          "comma list of datasets (default: all five)");
        opts["method"] = cmd->add_option("--method", method_names,
                                         "comma list of methods (default: all ten)");
        opts["model"] = cmd->add_option("--model", model, "provider model name");
        opts["mode"] = cmd->add_option("--mode", mode_name, "live, record, or replay")
                           ->check(CLI::IsMember({"live", "record", "replay"}));
        opts["parallelism"] = cmd->add_option("--parallelism", parallelism, "worker threads");
        opts["sc-k"] = cmd->add_option("--sc-k", sc_k, "self-consistency sample count");
        opts["laws"] = cmd->add_option("--laws", law_names, "extension law selection");
        opts["ablate"] = cmd->add_option("--ablate", ablate_tokens, "extension law ablations");
        opts["keep-fraction"] =
            cmd->add_option("--keep-fraction", keep_fraction, "fraction of deduced expressions kept");
        opts["no-extension"] =
            cmd->add_flag("--no-extension", no_extension, "translate extracted expressions verbatim");
        opts["two-stage"] =
            cmd->add_flag("--two-stage", two_stage, "separate selection call before extraction");
        opts["fixtures"] = cmd->add_flag("--fixtures", fixtures, "use the bundled fixture datasets");
        opts["fixtures-dir"] = cmd->add_option("--fixtures-dir", fixtures_dir, "fixture root");
        opts["data-dir"] = cmd->add_option("--data-dir", data_dir, "real dataset root");
        opts["out-dir"] = cmd->add_option("--out-dir", out_dir, "artifact root");
        opts["transcript"] = cmd->add_option("--transcript", transcript_path, "transcript path");
        opts["run-id"] = cmd->add_option("--run-id", run_id, "run identifier (default: timestamp)");
        opts["seed"] = cmd->add_option("--seed", seed, "backoff jitter seed");
        opts["tot-branch"] = cmd->add_option("--tot-branch", tot_branch, "proposals per state");
        opts["tot-target"] = cmd->add_option("--tot-target", tot_target, "successes for full reasoning");
        opts["config"] = cmd->add_option("--config", config_path, "config file (default lot.json)");
        return opts;
    };
    CLI::App* run = app.add_subcommand("run", "evaluate a method x dataset matrix");
    CLI::App* record = app.add_subcommand("record", "run while capturing a provider transcript");
    auto run_opts = add_run_flags(run);
    auto record_opts = add_run_flags(record);

    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (deduce->parsed()) {
            LawSet laws = laws_from_names(split_csv(law_names));
            apply_ablations(laws, split_csv(ablate_tokens));
            return cmd_deduce(expr_args, laws, limits, out, err);
        }
        if (report->parsed()) return cmd_report(report_run_id, report_out_dir, out, err);

        CLI::App* cmd = run->parsed() ? run : record;
        auto& opts = run->parsed() ? run_opts : record_opts;
        auto given = [&](const char* name) { return opts.at(name)->count() > 0; };

        EvalConfig cfg;  // defaults, then config file, then flags
        if (given("config")) {
            apply_config_file(config_path, cfg);
        } else if (std::filesystem::exists(config_path)) {
            apply_config_file(config_path, cfg);
        }
        if (given("dataset")) cfg.datasets = datasets_from_names(split_csv(dataset_names));
        if (given("method")) cfg.methods = methods_from_names(split_csv(method_names));
        if (given("model")) cfg.model = model;
        if (given("mode")) cfg.mode = mode_from_string(mode_name);
        if (given("parallelism")) cfg.parallelism = parallelism;
        if (given("sc-k")) cfg.sc_k = sc_k;
        if (given("laws")) cfg.lot.laws = laws_from_names(split_csv(law_names));
        if (given("ablate")) apply_ablations(cfg.lot.laws, split_csv(ablate_tokens));
        if (given("keep-fraction")) cfg.lot.keep_fraction = keep_fraction;
        if (given("no-extension")) cfg.lot.use_extension = false;
        if (given("two-stage")) cfg.lot.two_stage = true;
        if (given("fixtures")) cfg.fixtures = true;
        if (given("fixtures-dir")) cfg.fixtures_dir = fixtures_dir;
        if (given("data-dir")) cfg.data_dir = data_dir;
        if (given("out-dir")) cfg.out_dir = out_dir;
        if (given("transcript")) cfg.transcript = transcript_path;
        if (given("run-id")) cfg.run_id = run_id;
        if (given("seed")) cfg.seed = seed;
        if (given("tot-branch")) cfg.tot.branch = tot_branch;
        if (given("tot-target")) cfg.tot.success_target = tot_target;
        if (cmd == record) cfg.mode = Mode::Record;
        return cmd_run(std::move(cfg), out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lot
