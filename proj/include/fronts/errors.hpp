#pragma once

#include <stdexcept>
#include <string>

namespace fronts {

// Error classes map onto CLI exit codes: usage 1, data/parse 2, numeric 3.

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& msg, size_t byte_offset)
        : DataError(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}
    explicit ParseError(const std::string& msg) : DataError(msg), offset_(0) {}

    size_t byte_offset() const { return offset_; }

private:
    size_t offset_;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fronts
