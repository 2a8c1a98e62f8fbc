// Three-valued, certificate-carrying answers to semi-decidable questions.
#ifndef SEGALKIT_VERDICT_HPP
#define SEGALKIT_VERDICT_HPP

#include <json.hpp>
#include <string>

namespace sk {

enum class Truth { Yes, No, Unknown };

inline const char* to_string(Truth t) {
    switch (t) {
        case Truth::Yes: return "yes";
        case Truth::No: return "no";
        default: return "unknown";
    }
}

struct Verdict {
    Truth state = Truth::Unknown;
    std::string kind;               // certificate kind, e.g. "isomorphism"
    nlohmann::json certificate;     // re-verifiable witness data
    nlohmann::json budgets;         // budgets used / exhausted

    bool yes() const { return state == Truth::Yes; }
    bool no() const { return state == Truth::No; }

    static Verdict make_yes(std::string kind, nlohmann::json cert = {}) {
        return {Truth::Yes, std::move(kind), std::move(cert), {}};
    }
    static Verdict make_no(std::string kind, nlohmann::json cert = {}) {
        return {Truth::No, std::move(kind), std::move(cert), {}};
    }
    static Verdict make_unknown(std::string kind, nlohmann::json budgets = {}) {
        return {Truth::Unknown, std::move(kind), {}, std::move(budgets)};
    }

    nlohmann::json to_json() const {
        return {{"state", to_string(state)},
                {"certificate_kind", kind},
                {"certificate_payload", certificate},
                {"budgets_used", budgets}};
    }
};

}  // namespace sk

#endif
