#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "cticred/errors.hpp"
#include "cticred/text.hpp"

namespace cticred {

enum class PromptTag { ts, rc, sc, select, update };

inline const char* tag_name(PromptTag t) {
    switch (t) {
        case PromptTag::ts: return "ts";
        case PromptTag::rc: return "rc";
        case PromptTag::sc: return "sc";
        case PromptTag::select: return "select";
        case PromptTag::update: return "update";
    }
    return "?";
}

inline std::optional<PromptTag> tag_from_name(std::string_view s) {
    if (s == "ts") return PromptTag::ts;
    if (s == "rc") return PromptTag::rc;
    if (s == "sc") return PromptTag::sc;
    if (s == "select") return PromptTag::select;
    if (s == "update") return PromptTag::update;
    return std::nullopt;
}

// Decoding configuration; defaults are the pipeline-wide settings.
struct DecodingParams {
    double temperature = 0.0;
    double top_p = 0.75;
    int max_tokens = 4096;
};

struct ChatMessage {
    std::string role; // "system" or "user"
    std::string content;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    double top_p = 0.75;
    int max_tokens = 4096;
    PromptTag tag = PromptTag::sc;

    std::string joined_content() const {
        std::string out;
        for (const auto& m : messages) {
            if (!out.empty()) out.push_back('\n');
            out += m.content;
        }
        return out;
    }
};

struct ChatResponse {
    std::string content;
    std::chrono::milliseconds latency{0};
    int attempt = 1;
};

// chars/4 token estimate for the request budget heuristic.
inline long estimated_tokens(const ChatRequest& req) {
    std::size_t chars = 0;
    for (const auto& m : req.messages) chars += m.content.size() + m.role.size();
    return static_cast<long>((chars + 3) / 4);
}

// Budget leaves a 10% safety margin under max_tokens.
inline long token_budget(const ChatRequest& req) {
    return static_cast<long>(req.max_tokens) * 9 / 10;
}

// Chat-completion provider. complete() enforces the token budget before any
// transport work, then retries transient failures with exponential backoff.
class ChatClient {
public:
    struct RetryOptions {
        int retries = 2;               // additional attempts after the first
        int backoff_ms = 250;          // doubled per retry
    };

    virtual ~ChatClient() = default;

    ChatResponse complete(const ChatRequest& req) {
        if (estimated_tokens(req) > token_budget(req))
            throw Error(Errc::budget_exceeded,
                        "request estimated at " + std::to_string(estimated_tokens(req)) +
                            " tokens exceeds budget " + std::to_string(token_budget(req)));
        auto start = std::chrono::steady_clock::now();
        const int max_attempts = retry_.retries + 1;
        for (int attempt = 1;; ++attempt) {
            try {
                ChatResponse res = do_complete(req, attempt);
                res.attempt = attempt;
                res.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start);
                return res;
            } catch (const Error& e) {
                if (!e.transient() || attempt >= max_attempts)
                    throw Error(Errc::provider_error,
                                std::string(e.what()) + " (attempt " + std::to_string(attempt) +
                                    " of " + std::to_string(max_attempts) + ")");
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(retry_.backoff_ms << (attempt - 1)));
            }
        }
    }

    RetryOptions& retry() { return retry_; }

protected:
    explicit ChatClient(RetryOptions retry) : retry_(retry) {}
    virtual ChatResponse do_complete(const ChatRequest& req, int attempt) = 0;

private:
    RetryOptions retry_;
};

namespace detail {

// Bounded in-flight slot counter (runtime-configured semaphore).
class FlightLimiter {
public:
    explicit FlightLimiter(int slots) : slots_(slots) {}

    struct Slot {
        FlightLimiter* parent;
        ~Slot() {
            std::lock_guard<std::mutex> lock(parent->mu_);
            ++parent->slots_;
            parent->cv_.notify_one();
        }
    };

    Slot acquire() {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] { return slots_ > 0; });
        --slots_;
        return Slot{this};
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int slots_;
};

} // namespace detail

// Wire-protocol client: POST {base_url}/v1/chat/completions with an
// OpenAI-compatible body; the reply is the first choice's message content.
class HttpChatClient final : public ChatClient {
public:
    struct Options {
        std::string base_url;
        std::string model = "gpt-3.5-turbo";
        std::string path = "/v1/chat/completions";
        std::string api_key_env = "CTICRED_API_KEY";
        int timeout_seconds = 30;
        int max_in_flight = 4;
        RetryOptions retry{};
    };

    explicit HttpChatClient(Options opts)
        : ChatClient(opts.retry), opts_(std::move(opts)), limiter_(opts_.max_in_flight) {}

    const Options& options() const { return opts_; }

protected:
    ChatResponse do_complete(const ChatRequest& req, int) override {
        auto slot = limiter_.acquire();
        nlohmann::json body = {
            {"model", opts_.model},
            {"messages", nlohmann::json::array()},
            {"temperature", req.temperature},
            {"top_p", req.top_p},
            {"max_tokens", req.max_tokens},
        };
        for (const auto& m : req.messages)
            body["messages"].push_back({{"role", m.role}, {"content", m.content}});

        httplib::Client client(opts_.base_url);
        client.set_read_timeout(opts_.timeout_seconds, 0);
        client.set_connection_timeout(opts_.timeout_seconds, 0);
        httplib::Headers headers;
        if (const char* key = std::getenv(opts_.api_key_env.c_str()))
            headers.emplace("Authorization", std::string("Bearer ") + key);

        auto res = client.Post(opts_.path, headers, body.dump(), "application/json");
        if (!res)
            throw Error(Errc::provider_error,
                        "request to " + opts_.base_url + " failed: " + httplib::to_string(res.error()),
                        true);
        if (res->status == 429 || res->status >= 500)
            throw Error(Errc::provider_error,
                        "provider returned status " + std::to_string(res->status), true);
        if (res->status != 200)
            throw Error(Errc::provider_error,
                        "provider returned status " + std::to_string(res->status) + ": " + res->body);
        try {
            auto json = nlohmann::json::parse(res->body);
            ChatResponse out;
            out.content = json.at("choices").at(0).at("message").at("content").get<std::string>();
            return out;
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::provider_error, std::string("malformed provider response: ") + e.what());
        }
    }

private:
    Options opts_;
    detail::FlightLimiter limiter_;
};

// One scripted reply: applies to requests with the given tag, optionally
// narrowed by a prompt substring or the per-tag call ordinal (1-based).
// fail_times simulates that many transient failures before the reply.
struct MockRule {
    PromptTag tag = PromptTag::sc;
    std::optional<std::string> substring;
    std::optional<int> ordinal;
    std::string reply;
    int fail_times = 0;
};

// Deterministic provider: replies are a pure function of the script, the
// request tag, and the per-tag call ordinal. Keeps a transcript for golden
// comparisons.
class MockChatClient final : public ChatClient {
public:
    struct TranscriptEntry {
        PromptTag tag;
        int ordinal;
        std::string prompt;
        std::string reply;
    };

    explicit MockChatClient(std::vector<MockRule> rules, RetryOptions retry = {2, 0})
        : ChatClient(retry), rules_(std::move(rules)) {}

    const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

    std::string transcript_text() const {
        std::string out;
        for (const auto& e : transcript_) {
            out += tag_name(e.tag);
            out += '#';
            out += std::to_string(e.ordinal);
            out += '>';
            out += e.reply;
            out += '\n';
        }
        return out;
    }

protected:
    ChatResponse do_complete(const ChatRequest& req, int attempt) override {
        std::lock_guard<std::mutex> lock(mu_);
        int ordinal;
        if (attempt == 1) {
            ordinal = ++calls_[req.tag];
        } else {
            ordinal = calls_[req.tag];
        }
        std::string prompt = req.joined_content();
        const MockRule* rule = nullptr;
        for (const auto& r : rules_) {
            if (r.tag != req.tag) continue;
            if (r.ordinal && *r.ordinal != ordinal) continue;
            if (r.substring && prompt.find(*r.substring) == std::string::npos) continue;
            rule = &r;
            break;
        }
        if (!rule)
            throw Error(Errc::provider_error,
                        std::string("no scripted reply for tag ") + tag_name(req.tag) +
                            " call " + std::to_string(ordinal));
        if (attempt <= rule->fail_times)
            throw Error(Errc::provider_error, "scripted transient failure", true);
        transcript_.push_back({req.tag, ordinal, prompt, rule->reply});
        ChatResponse out;
        out.content = rule->reply;
        return out;
    }

private:
    std::vector<MockRule> rules_;
    std::map<PromptTag, int> calls_;
    std::vector<TranscriptEntry> transcript_;
    std::mutex mu_;
};

// Script file: one JSON object per line with fields
//   tag (required), reply (required), substring, ordinal, fail
inline std::vector<MockRule> load_mock_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open mock script " + path);
    std::vector<MockRule> rules;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::parse_error,
                        path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        MockRule rule;
        auto tag = tag_from_name(j.value("tag", ""));
        if (!tag)
            throw Error(Errc::parse_error,
                        path + ":" + std::to_string(lineno) + ": unknown tag");
        rule.tag = *tag;
        if (!j.contains("reply"))
            throw Error(Errc::parse_error,
                        path + ":" + std::to_string(lineno) + ": missing reply");
        rule.reply = j.at("reply").get<std::string>();
        if (j.contains("substring")) rule.substring = j.at("substring").get<std::string>();
        if (j.contains("ordinal")) rule.ordinal = j.at("ordinal").get<int>();
        rule.fail_times = j.value("fail", 0);
        rules.push_back(std::move(rule));
    }
    return rules;
}

// Produces a fresh client per verification trace. Mock scripts need their
// per-tag ordinals reset per trace; HTTP transports are shared behind the
// factory so the in-flight limit stays global.
using ClientFactory = std::function<std::unique_ptr<ChatClient>()>;

// Forwards to a shared transport; used to hand the same HTTP client to many
// concurrent traces through the ClientFactory interface.
class SharedClient final : public ChatClient {
public:
    explicit SharedClient(std::shared_ptr<ChatClient> inner)
        : ChatClient({0, 0}), inner_(std::move(inner)) {}

protected:
    ChatResponse do_complete(const ChatRequest& req, int) override {
        return inner_->complete(req);
    }

private:
    std::shared_ptr<ChatClient> inner_;
};

} // namespace cticred
