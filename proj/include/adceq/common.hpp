#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace adceq {

/// Input violates a precondition (non-finite value, empty list, out-of-range
/// parameter). Thrown before any computation starts.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A parameter combination is individually valid but degenerate for the
/// requested operation (e.g. zero signal power where a ratio needs it).
class degenerate_input : public invalid_input {
public:
    using invalid_input::invalid_input;
};

/// A search failed because no parameter choice satisfies the constraint.
/// Carries the best value reached so callers can report how far off it was.
class no_solution : public std::runtime_error {
public:
    no_solution(const std::string& what, double best_db)
        : std::runtime_error(what), best_achievable_db(best_db) {}
    double best_achievable_db;
};

/// A linear system is numerically rank-deficient.
class rank_deficient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency violated (indicates a bug, not bad input).
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;

/// Power ratio to decibels.
inline double to_db(double linear) { return 10.0 * std::log10(linear); }

/// Decibels to power ratio.
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

inline void require(bool cond, const char* msg) {
    if (!cond) throw invalid_input(msg);
}

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw invalid_input(std::string(name) + " must be finite");
}

}  // namespace adceq
