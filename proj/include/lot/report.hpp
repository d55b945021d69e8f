#pragma once

// Run reports: accuracy rows per dataset x method x model, optional
// tree-search metrics, and their JSON/CSV/terminal renderings. Pure data —
// the evaluation driver fills these in.

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lot/errors.hpp"

namespace lot {

// Aggregated tree-search accounting over a batch of tasks.
struct ToTAggregate {
    double ts_mean = 0.0;  // mean proposal attempts per task
    double ss_mean = 0.0;  // mean accepted propositions per task
    double fr_pct = 0.0;   // share of tasks that hit the success target, in %

    friend bool operator==(const ToTAggregate&, const ToTAggregate&) = default;
};

struct ReportRow {
    std::string dataset;
    std::string method;
    std::string model;
    int n = 0;
    int correct = 0;
    double accuracy = 0.0;  // percent
    std::optional<double> delta_vs_baseline;  // percentage points vs the anchor row
    std::optional<ToTAggregate> tot;          // tree-search rows only
    bool partial_failure = false;             // some tasks errored out

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct RunReport {
    std::string run_id;
    nlohmann::json config_snapshot = nlohmann::json::object();
    std::vector<ReportRow> rows;
    std::optional<ToTAggregate> tot_metrics;  // across every tree-search row

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

namespace detail {

inline nlohmann::json tot_to_json(const ToTAggregate& t) {
    return {{"TS_mean", t.ts_mean}, {"SS_mean", t.ss_mean}, {"FR_pct", t.fr_pct}};
}

inline ToTAggregate tot_from_json(const nlohmann::json& j) {
    return {j.at("TS_mean").get<double>(), j.at("SS_mean").get<double>(),
            j.at("FR_pct").get<double>()};
}

inline std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

inline nlohmann::json report_to_json(const RunReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json j{
            {"dataset", row.dataset}, {"method", row.method}, {"model", row.model},
            {"n", row.n},             {"correct", row.correct}, {"accuracy", row.accuracy},
            {"delta_vs_baseline",
             row.delta_vs_baseline ? nlohmann::json(*row.delta_vs_baseline)
                                   : nlohmann::json(nullptr)},
            {"partial_failure", row.partial_failure},
        };
        if (row.tot) j["tot"] = detail::tot_to_json(*row.tot);
        rows.push_back(std::move(j));
    }
    nlohmann::json out{
        {"run_id", r.run_id},
        {"config_snapshot", r.config_snapshot},
        {"rows", rows},
    };
    if (r.tot_metrics) out["tot_metrics"] = detail::tot_to_json(*r.tot_metrics);
    return out;
}

inline RunReport report_from_json(const nlohmann::json& j) {
    RunReport r;
    r.run_id = j.at("run_id").get<std::string>();
    r.config_snapshot = j.at("config_snapshot");
    for (const auto& row_json : j.at("rows")) {
        ReportRow row;
        row.dataset = row_json.at("dataset").get<std::string>();
        row.method = row_json.at("method").get<std::string>();
        row.model = row_json.at("model").get<std::string>();
        row.n = row_json.at("n").get<int>();
        row.correct = row_json.at("correct").get<int>();
        row.accuracy = row_json.at("accuracy").get<double>();
        if (!row_json.at("delta_vs_baseline").is_null())
            row.delta_vs_baseline = row_json.at("delta_vs_baseline").get<double>();
        if (row_json.contains("tot")) row.tot = detail::tot_from_json(row_json["tot"]);
        row.partial_failure = row_json.value("partial_failure", false);
        r.rows.push_back(std::move(row));
    }
    if (j.contains("tot_metrics")) r.tot_metrics = detail::tot_from_json(j["tot_metrics"]);
    return r;
}

inline std::string report_to_csv(const RunReport& r) {
    std::string out = "dataset,method,model,n,correct,accuracy,delta_vs_baseline\n";
    for (const auto& row : r.rows) {
        out += row.dataset + "," + row.method + "," + row.model + "," +
               std::to_string(row.n) + "," + std::to_string(row.correct) + "," +
               detail::fixed2(row.accuracy) + ",";
        if (row.delta_vs_baseline) out += detail::fixed2(*row.delta_vs_baseline);
        out += "\n";
    }
    return out;
}

// Aligned text table; deltas carry an explicit sign, tree-search metrics get
// their own trailing section when any row recorded them.
inline std::string render_report(const RunReport& r) {
    std::vector<std::array<std::string, 7>> cells;
    cells.push_back({"dataset", "method", "model", "n", "correct", "accuracy", "delta"});
    for (const auto& row : r.rows) {
        std::string delta = "-";
        if (row.delta_vs_baseline)
            delta = (*row.delta_vs_baseline < 0 ? "" : "+") +
                    detail::fixed2(*row.delta_vs_baseline);
        cells.push_back({row.dataset,
                         row.method + (row.partial_failure ? " (partial)" : ""),
                         row.model, std::to_string(row.n), std::to_string(row.correct),
                         detail::fixed2(row.accuracy), delta});
    }
    std::array<std::size_t, 7> width{};
    for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c)
            width[c] = std::max(width[c], line[c].size());

    std::string out = "run " + r.run_id + "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string line;
        for (std::size_t c = 0; c < cells[i].size(); ++c) {
            if (c) line += "  ";
            line += cells[i][c];
            line.append(width[c] - cells[i][c].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
        if (i == 0) {
            std::string rule;
            for (std::size_t c = 0; c < width.size(); ++c) {
                if (c) rule += "  ";
                rule.append(width[c], '-');
            }
            out += rule + "\n";
        }
    }
    if (r.tot_metrics) {
        out += "tree search: TS_mean=" + detail::fixed2(r.tot_metrics->ts_mean) +
               " SS_mean=" + detail::fixed2(r.tot_metrics->ss_mean) +
               " FR=" + detail::fixed2(r.tot_metrics->fr_pct) + "%\n";
    }
    return out;
}

}  // namespace lot
