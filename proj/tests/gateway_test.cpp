#include "lot/gateway.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include "lot/fake_transport.hpp"

namespace lot {
namespace {

ChatRequest simple_request(const std::string& content, const std::string& model = "test-model") {
    ChatRequest req;
    req.model = model;
    req.messages = {user_message(content)};
    return req;
}

GatewayConfig fast_config() {
    GatewayConfig cfg;
    cfg.api_key = "test-key";
    cfg.backoff_base_ms = 0;
    return cfg;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

TEST(Fingerprint, StableAndSensitive) {
    ChatRequest a = simple_request("hello");
    ChatRequest b = simple_request("hello");
    EXPECT_EQ(base_fingerprint(a), base_fingerprint(b));
    EXPECT_EQ(request_fingerprint(a, 0), request_fingerprint(b, 0));
    // ordinal, content, model and sampling all change the fingerprint
    EXPECT_NE(request_fingerprint(a, 0), request_fingerprint(a, 1));
    EXPECT_NE(base_fingerprint(a), base_fingerprint(simple_request("other")));
    EXPECT_NE(base_fingerprint(a), base_fingerprint(simple_request("hello", "m2")));
    ChatRequest warm = a;
    warm.temperature = 0.7;
    EXPECT_NE(base_fingerprint(a), base_fingerprint(warm));
    EXPECT_EQ(request_fingerprint(a, 0).size(), 16u);
}

TEST(Gateway, LiveReturnsProviderText) {
    auto fake = std::make_shared<FakeTransport>(
        [](const nlohmann::json& req, int) {
            return "echo: " + req["messages"][0]["content"].get<std::string>();
        });
    Gateway gw(Mode::Live, fast_config(), fake);
    EXPECT_EQ(gw.complete(simple_request("ping")), "echo: ping");
    EXPECT_EQ(fake->calls(), 1);
    EXPECT_EQ(fake->last_path(), "/chat/completions");
    // bearer token included
    bool has_auth = false;
    for (const auto& [k, v] : fake->last_headers())
        if (k == "Authorization" && v == "Bearer test-key") has_auth = true;
    EXPECT_TRUE(has_auth);
}

TEST(Gateway, OmitsUnsetSamplingParams) {
    auto fake = std::make_shared<FakeTransport>([](const nlohmann::json& req, int) {
        EXPECT_FALSE(req.contains("temperature"));
        EXPECT_FALSE(req.contains("top_p"));
        EXPECT_FALSE(req.contains("max_tokens"));
        return "ok";
    });
    Gateway gw(Mode::Live, fast_config(), fake);
    gw.complete(simple_request("defaults"));

    auto strict = std::make_shared<FakeTransport>([](const nlohmann::json& req, int) {
        EXPECT_DOUBLE_EQ(req["temperature"].get<double>(), 0.5);
        return "ok";
    });
    Gateway gw2(Mode::Live, fast_config(), strict);
    ChatRequest req = simple_request("warm");
    req.temperature = 0.5;
    gw2.complete(req);
}

TEST(Gateway, RequestValidation) {
    Gateway gw(Mode::Live, fast_config(),
               std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return ""; }));
    ChatRequest no_messages;
    no_messages.model = "m";
    EXPECT_THROW(gw.complete(no_messages), std::invalid_argument);
    ChatRequest bad_role = simple_request("x");
    bad_role.messages[0].role = "tool";
    EXPECT_THROW(gw.complete(bad_role), std::invalid_argument);
    ChatRequest bad_top_p = simple_request("x");
    bad_top_p.top_p = 1.5;
    EXPECT_THROW(gw.complete(bad_top_p), std::invalid_argument);
}

TEST(Gateway, RetriesTransientFailures) {
    auto fake = std::make_shared<FakeTransport>(
        [](const nlohmann::json&, int) { return "recovered"; });
    fake->push_failure(500, "boom");
    fake->push_failure(503, "still");
    Gateway gw(Mode::Live, fast_config(), fake);
    EXPECT_EQ(gw.complete(simple_request("retry")), "recovered");
    EXPECT_EQ(fake->calls(), 3);
}

TEST(Gateway, RateLimitExhaustionThrows) {
    auto fake =
        std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return "never"; });
    for (int i = 0; i < 5; ++i) fake->push_failure(429);
    Gateway gw(Mode::Live, fast_config(), fake);
    EXPECT_THROW(gw.complete(simple_request("throttled")), RateLimited);
    EXPECT_EQ(fake->calls(), 5);  // max_attempts
}

TEST(Gateway, AuthFailuresDoNotRetry) {
    auto fake =
        std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return "never"; });
    fake->push_failure(401);
    Gateway gw(Mode::Live, fast_config(), fake);
    EXPECT_THROW(gw.complete(simple_request("denied")), AuthError);
    EXPECT_EQ(fake->calls(), 1);
}

TEST(Gateway, MissingKeyIsAuthErrorBeforeAnyCall) {
    unsetenv("LOT_API_KEY");
    auto fake =
        std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return "never"; });
    GatewayConfig cfg;
    cfg.api_key = "";
    Gateway gw(Mode::Live, cfg, fake);
    EXPECT_THROW(gw.complete(simple_request("anon")), AuthError);
    EXPECT_EQ(fake->calls(), 0);
}

TEST(Gateway, MalformedProviderResponse) {
    auto fake =
        std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return "unused"; });
    fake->push_failure(200, "this is not json");
    Gateway gw(Mode::Live, fast_config(), fake);
    EXPECT_THROW(gw.complete(simple_request("garbage")), TransportError);
    EXPECT_EQ(fake->calls(), 1);

    auto fake2 =
        std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return "unused"; });
    fake2->push_failure(200, R"({"no_choices": true})");
    Gateway gw2(Mode::Live, fast_config(), fake2);
    EXPECT_THROW(gw2.complete(simple_request("empty")), TransportError);
}

TEST(Gateway, RecordThenReplayRoundTrip) {
    auto path = temp_file("lot_gateway_roundtrip.json");
    std::filesystem::remove(path);

    auto fake = std::make_shared<FakeTransport>([](const nlohmann::json& req, int repeat) {
        return "sample-" + std::to_string(repeat) + " for " +
               req["messages"][0]["content"].get<std::string>();
    });
    Gateway recorder(Mode::Record, fast_config(), fake);
    // five identical requests — the self-consistency shape
    std::vector<std::string> recorded;
    for (int i = 0; i < 5; ++i) recorded.push_back(recorder.complete(simple_request("vote")));
    EXPECT_EQ(recorded[0], "sample-0 for vote");
    EXPECT_EQ(recorded[4], "sample-4 for vote");
    EXPECT_EQ(recorder.transcript().size(), 5u);  // distinct entries per ordinal
    recorder.save_transcript(path);

    auto untouched =
        std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return "never"; });
    Gateway replayer(Mode::Replay, fast_config(), untouched, Transcript::load(path));
    for (int i = 0; i < 5; ++i)
        EXPECT_EQ(replayer.complete(simple_request("vote")), recorded[i]);
    EXPECT_EQ(untouched->calls(), 0);  // replay is network-free

    // a sixth identical request was never recorded
    EXPECT_THROW(replayer.complete(simple_request("vote")), ReplayMiss);
    std::filesystem::remove(path);
}

TEST(Gateway, ReplayMissCarriesFingerprint) {
    Gateway replayer(Mode::Replay, fast_config(), nullptr, Transcript());
    try {
        replayer.complete(simple_request("absent"));
        FAIL() << "expected ReplayMiss";
    } catch (const ReplayMiss& err) {
        EXPECT_EQ(err.fingerprint().size(), 16u);
        EXPECT_NE(std::string(err.what()).find(err.fingerprint()), std::string::npos);
    }
}

TEST(Gateway, ConcurrencyCapHonored) {
    auto fake =
        std::make_shared<FakeTransport>([](const nlohmann::json&, int) { return "ok"; });
    fake->set_latency_ms(25);
    GatewayConfig cfg = fast_config();
    cfg.max_in_flight = 2;
    Gateway gw(Mode::Live, cfg, fake);

    std::vector<std::thread> workers;
    for (int i = 0; i < 8; ++i)
        workers.emplace_back(
            [&gw, i] { gw.complete(simple_request("task " + std::to_string(i))); });
    for (auto& w : workers) w.join();

    EXPECT_EQ(fake->calls(), 8);
    EXPECT_LE(fake->high_water(), 2);
}

TEST(Transcript, SaveLoadStability) {
    Transcript t;
    t.add({"fp-b", nlohmann::json{{"q", 2}}, "second"});
    t.add({"fp-a", nlohmann::json{{"q", 1}}, "first"});
    auto path = temp_file("lot_transcript_stability.json");
    t.save(path);

    Transcript loaded = Transcript::load(path);
    EXPECT_EQ(loaded.size(), 2u);
    ASSERT_NE(loaded.find("fp-a"), nullptr);
    EXPECT_EQ(*loaded.find("fp-a"), "first");
    EXPECT_EQ(loaded.find("nope"), nullptr);
    EXPECT_EQ(loaded.metadata()["pipeline_version"], kPipelineVersion);

    // duplicate fingerprints overwrite instead of accumulating
    t.add({"fp-a", nlohmann::json{}, "updated"});
    EXPECT_EQ(t.size(), 2u);
    EXPECT_EQ(*t.find("fp-a"), "updated");
    std::filesystem::remove(path);
}

TEST(Transcript, LoadRejectsBadFiles) {
    EXPECT_THROW(Transcript::load("/nonexistent/path.json"), MissingFile);
    auto path = temp_file("lot_transcript_bad.json");
    {
        std::ofstream out(path);
        out << "not json";
    }
    EXPECT_THROW(Transcript::load(path), Error);
    {
        std::ofstream out(path);
        out << R"({"version": 7, "entries": []})";
    }
    EXPECT_THROW(Transcript::load(path), Error);
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace lot
