#include "talg/types.hpp"

#include <algorithm>

namespace talg {

std::uint64_t checked_power(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (n != 0 && r > limit / n) {
            throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(k) +
                                 " exceeds the limit " + std::to_string(limit));
        }
        r *= n;
    }
    if (r > limit) {
        throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(k) +
                             " exceeds the limit " + std::to_string(limit));
    }
    return r;
}

std::uint64_t encode_tuple(std::span<const Element> t, std::span<const std::uint32_t> sizes) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < t.size(); ++i) code = code * sizes[i] + t[i];
    return code;
}

std::uint64_t encode_tuple(std::span<const Element> t, std::uint32_t n) {
    std::uint64_t code = 0;
    for (Element e : t) code = code * n + e;
    return code;
}

Tuple decode_tuple(std::uint64_t code, std::span<const std::uint32_t> sizes) {
    Tuple t(sizes.size());
    for (std::size_t i = sizes.size(); i-- > 0;) {
        t[i] = static_cast<Element>(code % sizes[i]);
        code /= sizes[i];
    }
    return t;
}

Tuple decode_tuple(std::uint64_t code, std::uint32_t n, std::size_t arity) {
    Tuple t(arity);
    for (std::size_t i = arity; i-- > 0;) {
        t[i] = static_cast<Element>(code % n);
        code /= n;
    }
    return t;
}

bool next_tuple(Tuple& t, std::uint32_t n) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < n) return true;
        t[i] = 0;
    }
    return false;
}

ElementSet make_set(std::vector<Element> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool set_contains(const ElementSet& s, Element e) {
    return std::binary_search(s.begin(), s.end(), e);
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    ElementSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

ElementSet full_set(std::uint32_t n) {
    ElementSet r(n);
    for (Element i = 0; i < n; ++i) r[i] = i;
    return r;
}

Tuple cyclic_shift(std::span<const Element> t) {
    Tuple r(t.begin(), t.end());
    if (!r.empty()) std::rotate(r.begin(), r.begin() + 1, r.end());
    return r;
}

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t smallest_prime_above(std::uint32_t n) {
    std::uint32_t p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

std::string to_string(std::span<const Element> t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

} // namespace talg
