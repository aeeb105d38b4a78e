#pragma once

#include <stdexcept>
#include <string>

namespace cticred {

// Error taxonomy shared by every module. Each failure carries a code plus a
// human-readable message; provider errors additionally mark whether a retry
// could help (transient) so the client retry loop can tell them apart.
enum class Errc {
    empty_input,
    empty_after_cleaning,
    no_sentences,
    embedding_failure,
    dimension_mismatch,
    zero_vector,
    empty_text,
    empty_tokenization,
    index_out_of_range,
    too_few_sentences,
    empty_claim,
    provider_error,
    budget_exceeded,
    unparseable_outcome,
    out_of_range,
    parse_error,
    unknown_label,
    length_mismatch,
    empty_index,
    config_error,
    io_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::empty_input: return "EmptyInput";
        case Errc::empty_after_cleaning: return "EmptyAfterCleaning";
        case Errc::no_sentences: return "NoSentences";
        case Errc::embedding_failure: return "EmbeddingFailure";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::zero_vector: return "ZeroVector";
        case Errc::empty_text: return "EmptyText";
        case Errc::empty_tokenization: return "EmptyTokenization";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::too_few_sentences: return "TooFewSentences";
        case Errc::empty_claim: return "EmptyClaim";
        case Errc::provider_error: return "ProviderError";
        case Errc::budget_exceeded: return "BudgetExceeded";
        case Errc::unparseable_outcome: return "UnparseableOutcome";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::parse_error: return "ParseError";
        case Errc::unknown_label: return "UnknownLabel";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::empty_index: return "EmptyIndex";
        case Errc::config_error: return "ConfigError";
        case Errc::io_error: return "IoError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, bool transient = false)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          transient_(transient) {}

    Errc code() const noexcept { return code_; }
    bool transient() const noexcept { return transient_; }

private:
    Errc code_;
    bool transient_;
};

} // namespace cticred
