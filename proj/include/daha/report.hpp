#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "daha/truncated.hpp"

namespace daha {

// One verified identity: both sides as truncated values, the residual, and
// the pass verdict |residual.value| <= residual.tail + tolerance.
struct IdentityReport {
    std::string identity;
    std::string params;
    TruncatedValue lhs;
    TruncatedValue rhs;
    TruncatedValue residual;
    Rational tolerance{0};
    bool pass = false;

    static IdentityReport make(std::string name, std::string params_echo,
                               const TruncatedValue& lhs, const TruncatedValue& rhs,
                               const Rational& tolerance = Rational(0)) {
        IdentityReport r;
        r.identity = std::move(name);
        r.params = std::move(params_echo);
        r.lhs = lhs;
        r.rhs = rhs;
        r.residual = lhs - rhs;
        r.tolerance = tolerance;
        r.pass = rat_abs(r.residual.value) <= r.residual.tail + tolerance;
        return r;
    }
};

inline nlohmann::json to_json(const TruncatedValue& t) {
    nlohmann::json cut = nlohmann::json::object();
    for (auto& [k, v] : t.cutoffs) cut[k] = v;
    return {{"value", rat_str(t.value)},
            {"value_approx", rat_approx_str(t.value)},
            {"tail", rat_str(t.tail)},
            {"cutoffs", cut}};
}

inline nlohmann::json to_json(const IdentityReport& r) {
    return {{"identity", r.identity},
            {"params", r.params},
            {"lhs", to_json(r.lhs)},
            {"rhs", to_json(r.rhs)},
            {"residual", to_json(r.residual)},
            {"tail_budget", rat_str(r.residual.tail)},
            {"tolerance", rat_str(r.tolerance)},
            {"pass", r.pass}};
}

inline nlohmann::json suite_json(const std::string& suite, const std::vector<IdentityReport>& reports) {
    size_t np = 0;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        if (r.pass) ++np;
        arr.push_back(to_json(r));
    }
    return {{"suite", suite},
            {"n_pass", np},
            {"n_fail", reports.size() - np},
            {"reports", arr}};
}

} // namespace daha
