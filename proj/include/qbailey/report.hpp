#pragma once

#include "qbailey/qseries.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qb {

enum class VerifyStatus { match, mismatch, error };

struct Mismatch {
    Exponent exp;
    Rational lhs, rhs;
};

/// Outcome of verifying one identity: exact agreement order, the first
/// disagreeing coefficient if any, and run metadata.
struct IdentityReport {
    std::string name;
    std::map<std::string, std::string> params;
    VerifyStatus status = VerifyStatus::error;
    Exponent verified_order;
    std::optional<Mismatch> first_mismatch;
    std::int64_t lhs_terms = 0, rhs_terms = 0;
    std::int64_t millis = 0;
    std::string message; // non-empty only for status == error

    bool ok() const { return status == VerifyStatus::match; }
};

/// Exact coefficient comparison up to the common truncation order.
IdentityReport compare_series(std::string name, std::map<std::string, std::string> params,
                              const QSeries& lhs, const QSeries& rhs);

std::string report_text(const IdentityReport& r);
/// Canonical JSON: {name, params{}, status, verified_order, first_mismatch|null,
/// terms{lhs, rhs}, millis}; rationals as "p/q" strings, exponents as "h/2".
std::string report_json(const IdentityReport& r);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t millis() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace qb
