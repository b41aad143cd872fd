#include "qbailey/report.hpp"

#include <json.hpp>

namespace qb {

namespace {

const char* status_str(VerifyStatus s) {
    switch (s) {
    case VerifyStatus::match: return "match";
    case VerifyStatus::mismatch: return "mismatch";
    default: return "error";
    }
}

std::int64_t term_count(const QSeries& s) {
    return static_cast<std::int64_t>(s.poly().coeffs().size());
}

} // namespace

IdentityReport compare_series(std::string name, std::map<std::string, std::string> params,
                              const QSeries& lhs, const QSeries& rhs) {
    IdentityReport r;
    r.name = std::move(name);
    r.params = std::move(params);
    r.lhs_terms = term_count(lhs);
    r.rhs_terms = term_count(rhs);
    Exponent T = min(lhs.truncation_order(), rhs.truncation_order());
    QSeries diff = lhs - rhs;
    if (diff.is_zero()) {
        r.status = VerifyStatus::match;
        r.verified_order = T;
    } else {
        Exponent v = diff.poly().valuation();
        r.status = VerifyStatus::mismatch;
        r.verified_order = Exponent::from_half(v.half_units() - 1);
        r.first_mismatch = Mismatch{v, lhs.coeff(v), rhs.coeff(v)};
    }
    return r;
}

std::string report_text(const IdentityReport& r) {
    std::string s = r.name;
    if (!r.params.empty()) {
        s += " [";
        bool first = true;
        for (auto& [k, v] : r.params) {
            if (!first) s += " ";
            s += k + "=" + v;
            first = false;
        }
        s += "]";
    }
    s += ": ";
    s += status_str(r.status);
    if (r.status == VerifyStatus::match) {
        s += " to q^" + r.verified_order.str();
    } else if (r.status == VerifyStatus::mismatch && r.first_mismatch) {
        s += " at q^" + r.first_mismatch->exp.str() + " (lhs " + rat_str(r.first_mismatch->lhs) +
             ", rhs " + rat_str(r.first_mismatch->rhs) + ")";
    } else if (!r.message.empty()) {
        s += ": " + r.message;
    }
    return s;
}

std::string report_json(const IdentityReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["params"] = nlohmann::ordered_json::object();
    for (auto& [k, v] : r.params) j["params"][k] = v;
    j["status"] = status_str(r.status);
    j["verified_order"] = r.verified_order.str_halves();
    if (r.first_mismatch) {
        j["first_mismatch"] = {{"exp", r.first_mismatch->exp.str_halves()},
                               {"lhs", rat_str(r.first_mismatch->lhs)},
                               {"rhs", rat_str(r.first_mismatch->rhs)}};
    } else {
        j["first_mismatch"] = nullptr;
    }
    j["terms"] = {{"lhs", r.lhs_terms}, {"rhs", r.rhs_terms}};
    j["millis"] = r.millis;
    if (!r.message.empty()) j["message"] = r.message;
    return j.dump();
}

} // namespace qb
