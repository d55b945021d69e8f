#pragma once

// Chat-completion request shapes, shared by the prompt builders and the
// gateway.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lot {

struct ChatMessage {
    std::string role;  // "system" | "user" | "assistant"
    std::string content;

    friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

inline ChatMessage system_message(std::string content) {
    return {"system", std::move(content)};
}
inline ChatMessage user_message(std::string content) { return {"user", std::move(content)}; }
inline ChatMessage assistant_message(std::string content) {
    return {"assistant", std::move(content)};
}

struct ChatRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    // Absent sampling parameters are left to the provider's defaults.
    std::optional<double> temperature;
    std::optional<double> top_p;
    std::optional<int> max_tokens;

    void validate() const {
        if (model.empty()) throw std::invalid_argument("chat request without a model");
        if (messages.empty()) throw std::invalid_argument("chat request without messages");
        for (const ChatMessage& m : messages)
            if (m.role != "system" && m.role != "user" && m.role != "assistant")
                throw std::invalid_argument("chat message role '" + m.role + "' not allowed");
        if (temperature && *temperature < 0)
            throw std::invalid_argument("temperature must be >= 0");
        if (top_p && (*top_p <= 0 || *top_p > 1))
            throw std::invalid_argument("top_p must be in (0, 1]");
        if (max_tokens && *max_tokens <= 0)
            throw std::invalid_argument("max_tokens must be positive");
    }

    friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

}  // namespace lot
