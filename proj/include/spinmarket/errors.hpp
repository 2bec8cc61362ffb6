#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spinmarket {

// Invalid or inconsistent scenario parameters. Carries the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Unusable external input: unreadable files, malformed tables, degenerate series.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A statistic was requested on input that cannot support it.
class StatsError : public DataError {
public:
    using DataError::DataError;
};

// Broken internal invariant. Not recoverable; the run must abort.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace spinmarket
