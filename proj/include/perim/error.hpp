#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace perim {

// Raised when an argument lies outside an operation's domain: a malformed
// partition, a modulus below its minimum, a map precondition that fails.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}

    // 1-based part index that triggered the failure, when one exists.
    domain_error(const std::string& what, std::size_t index)
        : std::invalid_argument(what + " (at part " + std::to_string(index) + ")"), index_(index) {}

    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    std::optional<std::size_t> index_;
};

// Exhaustive enumeration requested beyond the configured size cap.
class cap_exceeded : public std::runtime_error {
public:
    cap_exceeded(int size, int cap)
        : std::runtime_error("size " + std::to_string(size) + " exceeds exhaustion cap " + std::to_string(cap)),
          size_(size), cap_(cap) {}

    int size() const noexcept { return size_; }
    int cap() const noexcept { return cap_; }

private:
    int size_;
    int cap_;
};

}  // namespace perim
