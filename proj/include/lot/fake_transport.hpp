#pragma once

// In-memory Transport for tests and fixture recording: scripted responses,
// injectable failures, and bookkeeping for concurrency assertions.  Never
// touches the network.

#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lot/gateway.hpp"

namespace lot {

class FakeTransport : public Transport {
public:
    // handler(request_body_json, repeat) -> completion text; `repeat` counts
    // how many times this exact body has been posted before (lets scripts
    // vary self-consistency samples).
    using Handler = std::function<std::string(const nlohmann::json&, int)>;

    explicit FakeTransport(Handler handler) : handler_(std::move(handler)) {}

    HttpResponse post(const std::string& path, const std::string& body,
                      const std::vector<std::pair<std::string, std::string>>& headers) override {
        int repeat;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            ++calls_;
            ++active_;
            if (active_ > high_water_) high_water_ = active_;
            repeat = body_counts_[body]++;
            last_path_ = path;
            last_headers_ = headers;
            if (!failures_.empty()) {
                HttpResponse failure = failures_.front();
                failures_.pop_front();
                --active_;
                return failure;
            }
        }
        if (latency_ms_ > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(latency_ms_));

        std::string content = handler_(nlohmann::json::parse(body), repeat);
        nlohmann::json reply = {
            {"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
        std::lock_guard<std::mutex> lock(mutex_);
        --active_;
        return {200, reply.dump()};
    }

    // Queue an HTTP failure served before the handler gets a turn.
    void push_failure(int status, std::string body = "") {
        std::lock_guard<std::mutex> lock(mutex_);
        failures_.push_back({status, std::move(body)});
    }

    void set_latency_ms(int ms) { latency_ms_ = ms; }

    int calls() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return calls_;
    }
    int high_water() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return high_water_;
    }
    std::string last_path() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return last_path_;
    }
    std::vector<std::pair<std::string, std::string>> last_headers() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return last_headers_;
    }

private:
    Handler handler_;
    std::deque<HttpResponse> failures_;
    std::map<std::string, int> body_counts_;
    int calls_ = 0;
    int active_ = 0;
    int high_water_ = 0;
    int latency_ms_ = 0;
    std::string last_path_;
    std::vector<std::pair<std::string, std::string>> last_headers_;
    mutable std::mutex mutex_;
};

}  // namespace lot
