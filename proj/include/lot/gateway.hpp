#pragma once

// Provider-agnostic chat-completion gateway with three modes:
//   Live    — call the provider
//   Record  — call the provider and persist every exchange to a transcript
//   Replay  — answer purely from a transcript; zero network traffic
//
// Requests are keyed by a fingerprint hashed over the canonical request
// JSON plus a per-request ordinal, so k identical sampling requests (self-
// consistency) record and replay as k distinct entries.

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lot/chat.hpp"
#include "lot/errors.hpp"
#include "lot/version.hpp"

namespace lot {

enum class Mode { Live, Record, Replay };

inline std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Live: return "live";
        case Mode::Record: return "record";
        case Mode::Replay: return "replay";
    }
    return "";
}

inline Mode mode_from_string(const std::string& text) {
    if (text == "live") return Mode::Live;
    if (text == "record") return Mode::Record;
    if (text == "replay") return Mode::Replay;
    throw Error("unknown mode '" + text + "'");
}

struct GatewayConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key;  // falls back to the LOT_API_KEY environment variable
    int max_attempts = 5;
    int backoff_base_ms = 500;
    double rate_limit_rps = 0;  // 0 = unlimited
    int max_in_flight = 8;
    unsigned seed = 0;  // backoff jitter
};

// ---------------------------------------------------------------------------
// transport

struct HttpResponse {
    int status = 0;
    std::string body;
};

// One HTTP POST; implementations may throw TransportError for network
// failures.  Injected so tests and the fixture generator never touch the
// network.
class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse post(const std::string& path, const std::string& body,
                              const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

// Real HTTP transport over cpp-httplib.
class HttplibTransport : public Transport {
public:
    explicit HttplibTransport(const std::string& base_url) {
        std::size_t scheme_end = base_url.find("://");
        std::string scheme =
            scheme_end == std::string::npos ? "https" : base_url.substr(0, scheme_end);
        std::string rest =
            scheme_end == std::string::npos ? base_url : base_url.substr(scheme_end + 3);
        std::size_t slash = rest.find('/');
        std::string host = slash == std::string::npos ? rest : rest.substr(0, slash);
        prefix_ = slash == std::string::npos ? "" : rest.substr(slash);
        if (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
        client_ = std::make_unique<httplib::Client>(scheme + "://" + host);
        client_->set_connection_timeout(30, 0);
        client_->set_read_timeout(120, 0);
    }

    HttpResponse post(const std::string& path, const std::string& body,
                      const std::vector<std::pair<std::string, std::string>>& headers) override {
        httplib::Headers h;
        for (const auto& [key, value] : headers)
            if (key != "Content-Type") h.emplace(key, value);
        auto res = client_->Post((prefix_ + path).c_str(), h, body, "application/json");
        if (!res)
            throw TransportError("network error: " + httplib::to_string(res.error()));
        return {res->status, res->body};
    }

private:
    std::unique_ptr<httplib::Client> client_;
    std::string prefix_;
};

// ---------------------------------------------------------------------------
// fingerprints

namespace detail {

inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t hash = 14695981039346656037ull) {
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

inline std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

}  // namespace detail

// Canonical JSON for a request: nlohmann objects serialize with sorted
// keys, so equal requests always dump to equal bytes.
inline nlohmann::json request_json(const ChatRequest& req) {
    nlohmann::json j;
    j["model"] = req.model;
    j["messages"] = nlohmann::json::array();
    for (const ChatMessage& m : req.messages)
        j["messages"].push_back({{"role", m.role}, {"content", m.content}});
    j["temperature"] = req.temperature ? nlohmann::json(*req.temperature) : nlohmann::json();
    j["top_p"] = req.top_p ? nlohmann::json(*req.top_p) : nlohmann::json();
    j["max_tokens"] = req.max_tokens ? nlohmann::json(*req.max_tokens) : nlohmann::json();
    return j;
}

inline std::string base_fingerprint(const ChatRequest& req) {
    return detail::hex64(detail::fnv1a64(request_json(req).dump()));
}

inline std::string request_fingerprint(const ChatRequest& req, int ordinal) {
    std::string keyed = request_json(req).dump() + "#" + std::to_string(ordinal);
    return detail::hex64(detail::fnv1a64(keyed));
}

// ---------------------------------------------------------------------------
// transcript

class Transcript {
public:
    struct Entry {
        std::string fingerprint;
        nlohmann::json request;
        std::string response;
    };

    Transcript() {
        metadata_["created_at"] = now_iso8601();
        metadata_["pipeline_version"] = kPipelineVersion;
    }

    static Transcript load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw MissingFile(path.string());
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw Error("transcript " + path.string() + " is not valid JSON: " + e.what());
        }
        if (!doc.is_object() || doc.value("version", 0) != 1)
            throw Error("transcript " + path.string() + " has an unsupported format");
        Transcript t;
        if (doc.contains("metadata")) t.metadata_ = doc["metadata"];
        for (const auto& item : doc.value("entries", nlohmann::json::array())) {
            Entry e{item.at("fingerprint").get<std::string>(), item.value("request", nlohmann::json()),
                    item.at("response").get<std::string>()};
            t.add(std::move(e));
        }
        return t;
    }

    void save(const std::filesystem::path& path) const {
        nlohmann::json doc;
        doc["version"] = 1;
        doc["metadata"] = metadata_;
        doc["entries"] = nlohmann::json::array();
        // sorted by fingerprint: a parallel recording session still saves
        // deterministic bytes
        for (const auto& [fp, idx] : by_fingerprint_) {
            const Entry& e = entries_[idx];
            doc["entries"].push_back({{"fingerprint", e.fingerprint},
                                      {"request", e.request},
                                      {"response", e.response}});
        }
        std::filesystem::create_directories(path.parent_path().empty()
                                                ? std::filesystem::path(".")
                                                : path.parent_path());
        std::ofstream out(path);
        out << doc.dump(2) << "\n";
    }

    void add(Entry entry) {
        auto [it, fresh] = by_fingerprint_.emplace(entry.fingerprint, entries_.size());
        if (!fresh) {
            entries_[it->second] = std::move(entry);
            return;
        }
        entries_.push_back(std::move(entry));
    }

    const std::string* find(const std::string& fingerprint) const {
        auto it = by_fingerprint_.find(fingerprint);
        if (it == by_fingerprint_.end()) return nullptr;
        return &entries_[it->second].response;
    }

    std::size_t size() const { return entries_.size(); }
    const nlohmann::json& metadata() const { return metadata_; }

    static std::string now_iso8601() {
        std::time_t t = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

private:
    std::vector<Entry> entries_;
    std::map<std::string, std::size_t> by_fingerprint_;
    nlohmann::json metadata_;
};

// ---------------------------------------------------------------------------
// pacing primitives

namespace detail {

class TokenBucket {
public:
    explicit TokenBucket(double rps) : rps_(rps), tokens_(rps > 0 ? rps : 0) {}

    void acquire() {
        if (rps_ <= 0) return;
        std::unique_lock<std::mutex> lock(mutex_);
        for (;;) {
            refill();
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            double deficit_s = (1.0 - tokens_) / rps_;
            auto wait = std::chrono::duration<double>(deficit_s);
            lock.unlock();
            std::this_thread::sleep_for(wait);
            lock.lock();
        }
    }

private:
    void refill() {
        auto now = std::chrono::steady_clock::now();
        if (last_ == std::chrono::steady_clock::time_point{}) {
            last_ = now;
            return;
        }
        double elapsed = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        tokens_ = std::min(rps_, tokens_ + elapsed * rps_);  // burst cap = 1 second
    }

    double rps_;
    double tokens_;
    std::chrono::steady_clock::time_point last_{};
    std::mutex mutex_;
};

// Bounds concurrent provider calls; RAII slot.
class FlightGate {
public:
    explicit FlightGate(int cap) : cap_(cap < 1 ? 1 : cap) {}

    class Slot {
    public:
        explicit Slot(FlightGate& gate) : gate_(&gate) {
            std::unique_lock<std::mutex> lock(gate_->mutex_);
            gate_->cv_.wait(lock, [&] { return gate_->active_ < gate_->cap_; });
            ++gate_->active_;
        }
        ~Slot() {
            {
                std::lock_guard<std::mutex> lock(gate_->mutex_);
                --gate_->active_;
            }
            gate_->cv_.notify_one();
        }
        Slot(const Slot&) = delete;
        Slot& operator=(const Slot&) = delete;

    private:
        FlightGate* gate_;
    };

private:
    friend class Slot;
    int cap_;
    int active_ = 0;
    std::mutex mutex_;
    std::condition_variable cv_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// gateway

class Gateway {
public:
    Gateway(Mode mode, GatewayConfig config, std::shared_ptr<Transport> transport = nullptr,
            std::optional<Transcript> transcript = std::nullopt)
        : mode_(mode),
          config_(std::move(config)),
          transport_(std::move(transport)),
          bucket_(config_.rate_limit_rps),
          gate_(config_.max_in_flight),
          jitter_rng_(config_.seed) {
        if (transcript) {
            transcript_ = std::move(*transcript);
        }
        if (config_.api_key.empty()) {
            const char* env = std::getenv("LOT_API_KEY");
            if (env) config_.api_key = env;
        }
        if (const char* env = std::getenv("LOT_BASE_URL"); env && *env)
            config_.base_url = env;
    }

    Mode mode() const { return mode_; }
    const GatewayConfig& config() const { return config_; }

    // Completion text for the request; see the mode table above.
    std::string complete(const ChatRequest& req) {
        req.validate();
        int ordinal;
        {
            std::lock_guard<std::mutex> lock(state_mutex_);
            ordinal = ordinals_[base_fingerprint(req)]++;
        }
        std::string fp = request_fingerprint(req, ordinal);

        if (mode_ == Mode::Replay) {
            std::lock_guard<std::mutex> lock(state_mutex_);
            const std::string* stored = transcript_.find(fp);
            if (!stored) throw ReplayMiss(fp);
            return *stored;
        }

        if (config_.api_key.empty())
            throw AuthError("no API key: set LOT_API_KEY or the api_key config field");

        std::string response = post_with_retries(req);
        if (mode_ == Mode::Record) {
            std::lock_guard<std::mutex> lock(state_mutex_);
            transcript_.add({fp, request_json(req), response});
        }
        return response;
    }

    // Record mode: persist everything recorded so far.
    void save_transcript(const std::filesystem::path& path) const {
        std::lock_guard<std::mutex> lock(state_mutex_);
        transcript_.save(path);
    }

    const Transcript& transcript() const { return transcript_; }

private:
    std::string post_with_retries(const ChatRequest& req) {
        nlohmann::json body = request_json(req);
        // absent sampling parameters stay at the provider's defaults
        for (const char* key : {"temperature", "top_p", "max_tokens"})
            if (body[key].is_null()) body.erase(key);
        std::string payload = body.dump();
        std::vector<std::pair<std::string, std::string>> headers = {
            {"Authorization", "Bearer " + config_.api_key},
            {"Content-Type", "application/json"},
        };

        std::string last_error;
        bool rate_limited = false;
        for (int attempt = 0; attempt < config_.max_attempts; ++attempt) {
            if (attempt > 0) backoff(attempt);
            bucket_.acquire();
            HttpResponse resp;
            try {
                detail::FlightGate::Slot slot(gate_);
                resp = transport().post("/chat/completions", payload, headers);
            } catch (const std::exception& e) {
                last_error = e.what();
                rate_limited = false;
                continue;  // network hiccup — retry
            }
            if (resp.status == 401 || resp.status == 403)
                throw AuthError("provider rejected credentials (HTTP " +
                                std::to_string(resp.status) + ")");
            if (resp.status == 429 || resp.status >= 500) {
                rate_limited = resp.status == 429;
                last_error = "HTTP " + std::to_string(resp.status);
                continue;
            }
            if (resp.status != 200)
                throw TransportError("provider returned HTTP " + std::to_string(resp.status) +
                                     ": " + resp.body);
            return extract_content(resp.body);
        }
        if (rate_limited)
            throw RateLimited("rate limited after " + std::to_string(config_.max_attempts) +
                              " attempts");
        throw TransportError("request failed after " + std::to_string(config_.max_attempts) +
                             " attempts: " + last_error);
    }

    static std::string extract_content(const std::string& body) {
        nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
        if (doc.is_discarded())
            throw TransportError("provider response is not valid JSON");
        try {
            return doc.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception&) {
            throw TransportError("provider response lacks choices[0].message.content");
        }
    }

    void backoff(int attempt) {
        if (config_.backoff_base_ms <= 0) return;
        long long base = config_.backoff_base_ms;
        long long delay = base << (attempt - 1);  // base, 2·base, 4·base, …
        long long jitter;
        {
            std::lock_guard<std::mutex> lock(state_mutex_);
            std::uniform_int_distribution<long long> dist(0, base / 2);
            jitter = dist(jitter_rng_);
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(delay + jitter));
    }

    Transport& transport() {
        std::lock_guard<std::mutex> lock(state_mutex_);
        if (!transport_) transport_ = std::make_shared<HttplibTransport>(config_.base_url);
        return *transport_;
    }

    Mode mode_;
    GatewayConfig config_;
    std::shared_ptr<Transport> transport_;
    Transcript transcript_;
    std::map<std::string, int> ordinals_;
    detail::TokenBucket bucket_;
    detail::FlightGate gate_;
    std::mt19937_64 jitter_rng_;
    mutable std::mutex state_mutex_;
};

}  // namespace lot
