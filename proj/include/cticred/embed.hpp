#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "cticred/errors.hpp"
#include "cticred/text.hpp"

namespace cticred {

struct EmbeddingVector {
    std::vector<double> values;

    std::size_t dimension() const noexcept { return values.size(); }

    double norm() const {
        double s = 0.0;
        for (double v : values) s += v * v;
        return std::sqrt(s);
    }
};

// Cosine of the angle between a and b. Symmetric and scale-invariant.
inline double similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dimension() != b.dimension())
        throw Error(Errc::dimension_mismatch,
                    "similarity over dimensions " + std::to_string(a.dimension()) + " and " +
                        std::to_string(b.dimension()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0)
        throw Error(Errc::zero_vector, "similarity against a zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual EmbeddingVector embed(std::string_view text) const = 0;
    virtual std::size_t dimension() const = 0;
};

// Deterministic offline embedder: lowercase word tokens hashed into a
// fixed-size term-frequency vector, L2-normalized. Vectors are non-negative,
// so similarity between any two embedded texts lies in [0,1].
class HashedTfEmbedder final : public Embedder {
public:
    explicit HashedTfEmbedder(std::size_t dim = 256) : dim_(dim) {}

    EmbeddingVector embed(std::string_view text) const override {
        auto tokens = tokenize_words(text);
        if (tokens.empty())
            throw Error(Errc::empty_text, "cannot embed text with no tokens");
        EmbeddingVector v;
        v.values.assign(dim_, 0.0);
        for (const auto& tok : tokens)
            v.values[fnv1a64(tok) % dim_] += 1.0;
        double n = v.norm();
        for (double& x : v.values) x /= n;
        return v;
    }

    std::size_t dimension() const override { return dim_; }

private:
    std::size_t dim_;
};

// Client for a remote embedding endpoint:
//   POST <base_url><path>  body {"input": [texts], "model": name}
//   response {"data": [{"embedding": [floats]}]}
// Bearer token read from the environment.
class RemoteEmbedder final : public Embedder {
public:
    struct Options {
        std::string base_url;
        std::string model = "text-embedding";
        std::string path = "/v1/embeddings";
        std::string api_key_env = "CTICRED_API_KEY";
        std::size_t dimension = 256;
        int timeout_seconds = 30;
    };

    explicit RemoteEmbedder(Options opts) : opts_(std::move(opts)) {}

    EmbeddingVector embed(std::string_view text) const override {
        if (trim(text).empty())
            throw Error(Errc::empty_text, "cannot embed empty text");
        nlohmann::json body = {{"input", {std::string(text)}}, {"model", opts_.model}};
        httplib::Client client(opts_.base_url);
        client.set_read_timeout(opts_.timeout_seconds, 0);
        httplib::Headers headers;
        if (const char* key = std::getenv(opts_.api_key_env.c_str()))
            headers.emplace("Authorization", std::string("Bearer ") + key);
        auto res = client.Post(opts_.path, headers, body.dump(), "application/json");
        if (!res)
            throw Error(Errc::provider_error,
                        "embedding request to " + opts_.base_url + " failed: " +
                            httplib::to_string(res.error()),
                        true);
        if (res->status != 200)
            throw Error(Errc::provider_error,
                        "embedding endpoint returned status " + std::to_string(res->status),
                        res->status >= 500);
        EmbeddingVector v;
        try {
            auto json = nlohmann::json::parse(res->body);
            v.values = json.at("data").at(0).at("embedding").get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::provider_error,
                        std::string("malformed embedding response: ") + e.what());
        }
        if (v.dimension() != opts_.dimension)
            throw Error(Errc::dimension_mismatch,
                        "embedding endpoint returned dimension " + std::to_string(v.dimension()) +
                            ", configured " + std::to_string(opts_.dimension));
        return v;
    }

    std::size_t dimension() const override { return opts_.dimension; }

private:
    Options opts_;
};

} // namespace cticred
