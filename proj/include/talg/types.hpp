#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace talg {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;
/// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

/// Malformed input or a violated precondition. Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A search or enumeration hit its configured budget. Maps to exit code 3.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked theorem statement failed on a valid instance. This always
/// indicates a bug in this library. Maps to exit code 4.
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// n^k, throwing BudgetExceeded when the result would pass `limit`.
std::uint64_t checked_power(std::uint64_t n, std::uint64_t k,
                            std::uint64_t limit = UINT64_MAX);

/// Mixed-radix encoding, most significant coordinate first.
std::uint64_t encode_tuple(std::span<const Element> t, std::span<const std::uint32_t> sizes);
std::uint64_t encode_tuple(std::span<const Element> t, std::uint32_t n);
Tuple decode_tuple(std::uint64_t code, std::span<const std::uint32_t> sizes);
Tuple decode_tuple(std::uint64_t code, std::uint32_t n, std::size_t arity);

/// Advances `t` to the next tuple in lexicographic order over {0..n-1}.
/// Returns false after the last tuple (t is reset to all zeros).
bool next_tuple(Tuple& t, std::uint32_t n);

ElementSet make_set(std::vector<Element> v);
bool set_contains(const ElementSet& s, Element e);
bool is_subset(const ElementSet& a, const ElementSet& b);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
ElementSet full_set(std::uint32_t n);

/// Left cyclic shift: (a0,...,a_{k-1}) -> (a1,...,a_{k-1},a0).
Tuple cyclic_shift(std::span<const Element> t);

bool is_prime(std::uint32_t p);
std::uint32_t smallest_prime_above(std::uint32_t n);

std::string to_string(std::span<const Element> t);

} // namespace talg
