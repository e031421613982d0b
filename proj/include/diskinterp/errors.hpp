#pragma once

#include <stdexcept>
#include <string>

namespace diskinterp {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a domain constraint (point outside the disk, duplicate
/// points, bad parameter range). The caller supplied something invalid.
class domain_error : public error {
public:
    using error::error;
};

/// Computation broke down numerically on otherwise valid input.
class numerical_error : public error {
public:
    using error::error;
};

class invalid_point : public domain_error {
public:
    invalid_point(std::size_t index, const std::string& what)
        : domain_error("point " + std::to_string(index) + ": " + what), index_(index) {}
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class boundary_guard_error : public domain_error {
public:
    using domain_error::domain_error;
};

class empty_grid_error : public domain_error {
public:
    using domain_error::domain_error;
};

class packing_failure : public domain_error {
public:
    using domain_error::domain_error;
};

class zero_collision : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class degenerate_sequence : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class bracket_failure : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class recursion_breakdown : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class degenerate_fit : public numerical_error {
public:
    using numerical_error::numerical_error;
};

}  // namespace diskinterp
