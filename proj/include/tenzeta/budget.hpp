#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tenzeta {

/// Raised when an enumeration would exceed its configured cap. Never silently
/// truncates: the caller either raises the budget or takes another path.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what_kind, long long needed, long long cap)
        : std::runtime_error("budget exceeded: " + what_kind + " needs " + std::to_string(needed) +
                             " but the cap is " + std::to_string(cap)),
          kind(what_kind),
          needed(needed),
          cap(cap) {}
    std::string kind;
    long long needed;
    long long cap;
};

/// Enumeration caps. TENZETA_BUDGET, when set, overrides both enumeration caps.
struct Budget {
    long long anticode_cap = 1'000'000;        // anticodes enumerated per family table
    long long subspace_cap = 20'000'000;       // j-subspaces enumerated per anticode (direct W path)
    long long rank_search_cap = 50'000'000;    // candidate combinations in bounded rank search

    static Budget from_env() {
        Budget b;
        if (const char* s = std::getenv("TENZETA_BUDGET")) {
            char* end = nullptr;
            long long v = std::strtoll(s, &end, 10);
            if (end && *end == '\0' && v > 0) {
                b.anticode_cap = v;
                b.subspace_cap = v;
            } else {
                throw std::invalid_argument("TENZETA_BUDGET must be a positive integer");
            }
        }
        return b;
    }
};

}  // namespace tenzeta
