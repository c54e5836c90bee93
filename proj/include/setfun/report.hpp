#pragma once

// Verification report shared by every checker: a count of checked items, a
// summary block, and one witness object per violation.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>

namespace setfun {

using json = nlohmann::json;

struct Report {
    std::string name;
    std::uint64_t pairs_checked = 0;
    json summary = json::object();
    json violations = json::array();

    explicit Report(std::string report_name = {})
        : name(std::move(report_name))
    {
    }

    [[nodiscard]] bool passed() const noexcept { return violations.empty(); }

    void add_violation(json witness) { violations.push_back(std::move(witness)); }

    /// Folds another report's violations in under a tag.
    void absorb(const Report& other, const std::string& tag)
    {
        pairs_checked += other.pairs_checked;
        for (const auto& v : other.violations) {
            violations.push_back(json{{"source", tag}, {"witness", v}});
        }
    }

    [[nodiscard]] json to_json() const
    {
        return json{{"report", name},
                    {"pairs_checked", pairs_checked},
                    {"passed", passed()},
                    {"summary", summary},
                    {"violations", violations}};
    }

    [[nodiscard]] std::string to_text() const
    {
        std::ostringstream os;
        os << name << ": " << (passed() ? "PASS" : "FAIL") << "\n";
        os << "  pairs_checked: " << pairs_checked << "\n";
        for (const auto& [key, value] : summary.items()) {
            os << "  " << key << ": " << value.dump() << "\n";
        }
        os << "  violations: " << violations.size() << "\n";
        for (const auto& v : violations) {
            os << "    - " << v.dump() << "\n";
        }
        return os.str();
    }
};

} // namespace setfun
