#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lpp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidWindow : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : Error(what + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

}  // namespace lpp
