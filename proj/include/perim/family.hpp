#pragma once

// Named families of compositions and perimeter-indexed partitions, with
// exhaustive membership, counting and enumeration.
//
// Every family is a filter over the compositions of a fixed substrate size:
// n for most kinds, n + m - 1 for the Munagi/Huang B sides and n + 1 for
// FIB_GT1. Partition families are filtered through pi, so the canonical order
// of a partition family is the rank order of the pi preimages.

#include <algorithm>
#include <array>
#include <iterator>
#include <numeric>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "perim/core.hpp"
#include "perim/error.hpp"
#include "perim/parallel.hpp"

namespace perim {

enum class FamilyKind {
    part_not_div_m,    // h: parts not divisible by m
    part_repeat_lt_m,  // g: every value repeats fewer than m times
    comp_star,         // every suffix sum 1 + sum (c_j - 1) not divisible by m
    comp_not_div_m,
    comp_capped,       // parts <= m, last part < m
    part_gap_lt_m,     // gaps < m and smallest part < m
    comp_residue_r,
    comp_alphabet_r,
    munagi_a,
    munagi_b,
    huang_a,
    huang_b,
    ft1,
    ft2,
    prop_lhs,
    prop_rhs,
    fib_odd,
    fib_12,
    fib_gt1,
};

struct FamilyTraits {
    FamilyKind kind;
    std::string_view name;
    Sort sort;
    int min_m;  // 0 when the family takes no modulus
    bool uses_k;
    int min_k;
    bool uses_residues;
    std::string_view description;
};

inline constexpr std::array<FamilyTraits, 19> kFamilyTraits{{
    {FamilyKind::part_not_div_m, "h", Sort::partition, 2, false, 0, false,
     "partitions of perimeter n with no part divisible by m"},
    {FamilyKind::part_repeat_lt_m, "g", Sort::partition, 2, false, 0, false,
     "partitions of perimeter n with parts repeating fewer than m times"},
    {FamilyKind::comp_star, "star", Sort::composition, 2, false, 0, false,
     "compositions of n whose suffix sums 1 + sum(c_j - 1) avoid 0 mod m"},
    {FamilyKind::comp_not_div_m, "comp-not-div", Sort::composition, 2, false, 0, false,
     "compositions of n with no part divisible by m"},
    {FamilyKind::comp_capped, "capped", Sort::composition, 2, false, 0, false,
     "compositions of n with parts at most m and last part below m"},
    {FamilyKind::part_gap_lt_m, "gap", Sort::partition, 2, false, 0, false,
     "partitions of perimeter n with gaps below m and smallest part below m"},
    {FamilyKind::comp_residue_r, "lemma-residue", Sort::composition, 2, false, 0, true,
     "compositions of n with every part congruent to some r in R mod m"},
    {FamilyKind::comp_alphabet_r, "lemma-alphabet", Sort::composition, 2, false, 0, true,
     "compositions of n with parts in R or equal to m, last part in R"},
    {FamilyKind::munagi_a, "munagi-a", Sort::composition, 1, false, 0, false,
     "compositions of n with parts congruent to 1 mod m"},
    {FamilyKind::munagi_b, "munagi-b", Sort::composition, 1, false, 0, false,
     "compositions of n + m - 1 with parts at least m"},
    {FamilyKind::huang_a, "huang-a", Sort::composition, 1, true, 0, false,
     "compositions of n with exactly k parts not congruent to 1 mod m, each above m"},
    {FamilyKind::huang_b, "huang-b", Sort::composition, 1, true, 0, false,
     "compositions of n + m - 1 with exactly k parts below m, each preceded by a part >= m "
     "and followed by the last part or a part > m"},
    {FamilyKind::ft1, "ft1", Sort::partition, 1, true, 0, false,
     "partitions of perimeter n split into k congruence blocks mod m + 1"},
    {FamilyKind::ft2, "ft2", Sort::partition, 1, true, 0, false,
     "partitions of perimeter n with gaps >= m except for exactly k isolated gaps below m"},
    {FamilyKind::prop_lhs, "prop-lhs", Sort::composition, 2, true, 1, false,
     "compositions of n with k parts, all at most m, last part below m"},
    {FamilyKind::prop_rhs, "prop-rhs", Sort::composition, 2, true, 1, false,
     "compositions of n with n - k + 1 parts and no run of m - 1 ones before the last part"},
    {FamilyKind::fib_odd, "fib-odd", Sort::composition, 0, false, 0, false, "compositions of n with odd parts"},
    {FamilyKind::fib_12, "fib-12", Sort::composition, 0, false, 0, false,
     "compositions of n with parts 1 and 2, last part 1"},
    {FamilyKind::fib_gt1, "fib-gt1", Sort::composition, 0, false, 0, false,
     "compositions of n + 1 with parts greater than 1"},
}};

inline const FamilyTraits& traits(FamilyKind kind) {
    for (const auto& t : kFamilyTraits)
        if (t.kind == kind) return t;
    throw domain_error("unknown family kind");
}

inline std::optional<FamilyKind> family_kind_from_name(std::string_view name) {
    for (const auto& t : kFamilyTraits)
        if (t.name == name) return t.kind;
    return std::nullopt;
}

struct FamilySpec {
    FamilyKind kind = FamilyKind::part_not_div_m;
    std::optional<int> n;
    std::optional<int> m;
    std::optional<int> k;
    std::vector<int> residues;  // R, ascending

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

inline FamilySpec make_family(FamilyKind kind, int n, std::optional<int> m = std::nullopt,
                              std::optional<int> k = std::nullopt, std::vector<int> residues = {}) {
    return FamilySpec{kind, n, m, k, std::move(residues)};
}

// Throws domain_error unless every parameter the kind needs is present and in
// range, and no parameter the kind ignores is set.
inline void validate(const FamilySpec& spec) {
    const FamilyTraits& t = traits(spec.kind);
    const std::string name(t.name);
    if (!spec.n) throw domain_error(name + ": missing n");
    if (*spec.n < 1) throw domain_error(name + ": n must be >= 1");
    if (t.min_m > 0) {
        if (!spec.m) throw domain_error(name + ": missing m");
        if (*spec.m < t.min_m) throw domain_error(name + ": m must be >= " + std::to_string(t.min_m));
    } else if (spec.m) {
        throw domain_error(name + ": takes no m");
    }
    if (t.uses_k) {
        if (!spec.k) throw domain_error(name + ": missing k");
        if (*spec.k < t.min_k) throw domain_error(name + ": k must be >= " + std::to_string(t.min_k));
    } else if (spec.k) {
        throw domain_error(name + ": takes no k");
    }
    if (t.uses_residues) {
        if (spec.residues.empty()) throw domain_error(name + ": R must be nonempty");
        for (std::size_t i = 0; i < spec.residues.size(); ++i) {
            const int r = spec.residues[i];
            if (r < 1 || r > *spec.m - 1)
                throw domain_error(name + ": residue " + std::to_string(r) + " outside 1.." + std::to_string(*spec.m - 1));
            if (i > 0 && r <= spec.residues[i - 1]) throw domain_error(name + ": R must be strictly ascending");
        }
    } else if (!spec.residues.empty()) {
        throw domain_error(name + ": takes no R");
    }
}

// Size of the compositions a family is filtered from.
inline int substrate_size(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::munagi_b:
        case FamilyKind::huang_b:
            return *spec.n + *spec.m - 1;
        case FamilyKind::fib_gt1:
            return *spec.n + 1;
        default:
            return *spec.n;
    }
}

inline Sort family_sort(const FamilySpec& spec) { return traits(spec.kind).sort; }

// ---------------------------------------------------------------------------
// Canonical text form: kind[:key=value,...], keys in the order n, m, k, R.
// R takes every following bare integer: "lemma-residue:n=10,m=4,R=1,3".

inline std::string to_string(const FamilySpec& spec) {
    std::string out(traits(spec.kind).name);
    char sep = ':';
    auto field = [&](const char* key, const std::string& value) {
        out += sep;
        out += key;
        out += '=';
        out += value;
        sep = ',';
    };
    if (spec.n) field("n", std::to_string(*spec.n));
    if (spec.m) field("m", std::to_string(*spec.m));
    if (spec.k) field("k", std::to_string(*spec.k));
    if (!spec.residues.empty()) field("R", detail::join_parts(spec.residues));
    return out;
}

namespace detail {

inline int parse_int(std::string_view text, std::string_view what) {
    if (text.empty()) throw domain_error("empty value for " + std::string(what));
    int value = 0;
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-') {
        negative = true;
        i = 1;
        if (text.size() == 1) throw domain_error("bad integer for " + std::string(what) + ": " + std::string(text));
    }
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch < '0' || ch > '9' || value > 100'000'000)
            throw domain_error("bad integer for " + std::string(what) + ": " + std::string(text));
        value = value * 10 + (ch - '0');
    }
    return negative ? -value : value;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

// Parses the text form. Keys absent from the text keep their value in `base`,
// which lets a caller supply n, m, k or R separately. Does not validate.
inline FamilySpec parse_family_spec(std::string_view text, FamilySpec base = {}) {
    const std::size_t colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const auto kind = family_kind_from_name(name);
    if (!kind) throw domain_error("unknown family '" + std::string(name) + "'");
    FamilySpec spec = std::move(base);
    spec.kind = *kind;
    if (colon == std::string_view::npos) return spec;

    bool in_residues = false;
    bool residues_seen = false;
    for (std::string_view token : detail::split(text.substr(colon + 1), ',')) {
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos) {
            if (!in_residues) throw domain_error("expected key=value in family spec, got '" + std::string(token) + "'");
            spec.residues.push_back(detail::parse_int(token, "R"));
            continue;
        }
        const std::string_view key = token.substr(0, eq);
        const std::string_view value = token.substr(eq + 1);
        in_residues = false;
        if (key == "n") {
            spec.n = detail::parse_int(value, key);
        } else if (key == "m") {
            spec.m = detail::parse_int(value, key);
        } else if (key == "k") {
            spec.k = detail::parse_int(value, key);
        } else if (key == "R") {
            if (residues_seen) throw domain_error("R given twice");
            residues_seen = true;
            in_residues = true;
            spec.residues.clear();
            spec.residues.push_back(detail::parse_int(value, key));
        } else {
            throw domain_error("unknown family parameter '" + std::string(key) + "'");
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Membership predicates over raw parts. `parts` are partition parts for the
// partition kinds and composition parts otherwise; the caller guarantees the
// sort and the substrate size.

class FamilyPredicate {
public:
    explicit FamilyPredicate(const FamilySpec& spec) : spec_(spec) {
        validate(spec_);
        n_ = *spec_.n;
        m_ = spec_.m.value_or(0);
        k_ = spec_.k.value_or(0);
        if (!spec_.residues.empty()) {
            in_residues_.assign(static_cast<std::size_t>(m_), false);
            for (int r : spec_.residues) in_residues_[static_cast<std::size_t>(r)] = true;
        }
    }

    const FamilySpec& spec() const noexcept { return spec_; }

    bool operator()(std::span<const Part> p) const {
        switch (spec_.kind) {
            case FamilyKind::part_not_div_m:
            case FamilyKind::comp_not_div_m:
                return std::none_of(p.begin(), p.end(), [&](Part x) { return x % m_ == 0; });
            case FamilyKind::part_repeat_lt_m:
                return repeats_below(p, m_);
            case FamilyKind::comp_star:
                return star(p);
            case FamilyKind::comp_capped:
                return p.back() < m_ && std::all_of(p.begin(), p.end(), [&](Part x) { return x <= m_; });
            case FamilyKind::part_gap_lt_m:
                return gap_below(p);
            case FamilyKind::comp_residue_r:
                return std::all_of(p.begin(), p.end(), [&](Part x) { return residue_ok(x % m_); });
            case FamilyKind::comp_alphabet_r:
                return alphabet(p.back()) &&
                       std::all_of(p.begin(), p.end(), [&](Part x) { return x == m_ || alphabet(x); });
            case FamilyKind::munagi_a:
                return std::all_of(p.begin(), p.end(), [&](Part x) { return x % m_ == 1 % m_; });
            case FamilyKind::munagi_b:
                return std::all_of(p.begin(), p.end(), [&](Part x) { return x >= m_; });
            case FamilyKind::huang_a:
                return huang_a(p);
            case FamilyKind::huang_b:
                return huang_b(p);
            case FamilyKind::ft1:
                return ft1(p);
            case FamilyKind::ft2:
                return ft2(p);
            case FamilyKind::prop_lhs:
                return static_cast<int>(p.size()) == k_ && p.back() < m_ &&
                       std::all_of(p.begin(), p.end(), [&](Part x) { return x <= m_; });
            case FamilyKind::prop_rhs:
                return static_cast<int>(p.size()) == n_ - k_ + 1 && ones_runs_short(p);
            case FamilyKind::fib_odd:
                return std::all_of(p.begin(), p.end(), [](Part x) { return x % 2 == 1; });
            case FamilyKind::fib_12:
                return p.back() == 1 && std::all_of(p.begin(), p.end(), [](Part x) { return x == 1 || x == 2; });
            case FamilyKind::fib_gt1:
                return std::all_of(p.begin(), p.end(), [](Part x) { return x > 1; });
        }
        return false;
    }

private:
    bool residue_ok(int r) const { return r > 0 && in_residues_[static_cast<std::size_t>(r)]; }
    bool alphabet(Part x) const { return x < m_ && residue_ok(x); }

    static bool repeats_below(std::span<const Part> p, int m) {
        int run = 1;
        for (std::size_t i = 1; i < p.size(); ++i) {
            run = p[i] == p[i - 1] ? run + 1 : 1;
            if (run >= m) return false;
        }
        return true;
    }

    bool star(std::span<const Part> c) const {
        Part running = 1;
        for (std::size_t i = c.size(); i-- > 0;) {
            running += c[i] - 1;
            if (running % m_ == 0) return false;
        }
        return true;
    }

    bool gap_below(std::span<const Part> p) const {
        if (p.back() >= m_) return false;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (p[i] - p[i + 1] >= m_) return false;
        return true;
    }

    bool huang_a(std::span<const Part> c) const {
        int exceptional = 0;
        for (Part x : c) {
            if (x % m_ == 1 % m_) continue;
            if (x <= m_) return false;
            ++exceptional;
        }
        return exceptional == k_;
    }

    // A small part (< m) needs a part >= m before it and a successor that is
    // either the final part or a part > m; a small final part is excluded.
    bool huang_b(std::span<const Part> c) const {
        const std::size_t len = c.size();
        int small = 0;
        for (std::size_t i = 0; i < len; ++i) {
            if (c[i] >= m_) continue;
            if (i == 0 || c[i - 1] < m_) return false;
            if (i + 1 == len) return false;
            if (i + 2 != len && c[i + 1] <= m_) return false;
            ++small;
        }
        return small == k_;
    }

    // Block boundaries mod M = m + 1: every i < l with lambda_i, lambda_{i+1}
    // in different classes, plus l itself when lambda_l is not 1 mod M. Each
    // boundary needs gap > m (or lambda_l > m + 1), and there are exactly k.
    bool ft1(std::span<const Part> p) const {
        const int modulus = m_ + 1;
        int boundaries = 0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            const int gap = p[i] - p[i + 1];
            if (gap % modulus == 0) continue;
            if (gap <= m_) return false;
            ++boundaries;
        }
        if (p.back() % modulus != 1 % modulus) {
            if (p.back() <= modulus) return false;
            ++boundaries;
        }
        return boundaries == k_;
    }

    // Gap i (between lambda_i and lambda_{i+1}, 1-based) below m is an
    // exception; it needs i >= 2 with gap i-1 >= m, and gap i+1 > m unless
    // lambda_{i+1} is the last part.
    bool ft2(std::span<const Part> p) const {
        const std::size_t gaps = p.size() - 1;
        auto gap = [&](std::size_t i) { return p[i] - p[i + 1]; };  // 0-based
        int exceptions = 0;
        for (std::size_t i = 0; i < gaps; ++i) {
            if (gap(i) >= m_) continue;
            if (i == 0 || gap(i - 1) < m_) return false;
            if (i + 1 < gaps && gap(i + 1) <= m_) return false;
            ++exceptions;
        }
        return exceptions == k_;
    }

    // No run of m - 1 consecutive ones among parts 1 .. l-1.
    bool ones_runs_short(std::span<const Part> c) const {
        int run = 0;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            run = c[i] == 1 ? run + 1 : 0;
            if (run >= m_ - 1) return false;
        }
        return true;
    }

    FamilySpec spec_;
    int n_ = 0;
    int m_ = 0;
    int k_ = 0;
    std::vector<bool> in_residues_;
};

// True iff `object` belongs to the family, size or perimeter included.
inline bool member(const FamilySpec& spec, const Object& object) {
    const FamilyPredicate accepts(spec);
    const Sort expected = family_sort(spec);
    if (sort_of(object) != expected)
        throw domain_error(std::string(traits(spec.kind).name) + " is a family of " + sort_name(expected) + "s, got a " +
                           sort_name(sort_of(object)));
    const std::span<const Part> parts = parts_of(object);
    const int size = expected == Sort::partition ? kernel::perimeter(parts) : std::accumulate(parts.begin(), parts.end(), 0);
    return size == substrate_size(spec) && accepts(parts);
}

// ---------------------------------------------------------------------------

inline constexpr int kDefaultCap = 30;

struct EnumerationOptions {
    int cap = kDefaultCap;
    int workers = 1;
};

inline void check_cap(int size, int cap) {
    if (size > cap || size > kMaxRankableSize) throw cap_exceeded(size, std::min(cap, kMaxRankableSize));
}

// Visits members with substrate rank in [first, last), in rank order. The
// visitor gets the member's parts (partition parts for partition families)
// and the substrate rank.
template <typename Visitor>
void for_each_member(const FamilyPredicate& accepts, std::uint64_t first, std::uint64_t last, Visitor&& visit) {
    const FamilySpec& spec = accepts.spec();
    const bool partitions = family_sort(spec) == Sort::partition;
    std::vector<Part> image;
    for_each_composition(substrate_size(spec), first, last, [&](std::span<const Part> comp, std::uint64_t index) {
        if (partitions) {
            kernel::pi(comp, image);
            if (accepts(image)) visit(std::span<const Part>(image), index);
        } else if (accepts(comp)) {
            visit(comp, index);
        }
    });
}

inline std::uint64_t count_family(const FamilySpec& spec, const EnumerationOptions& options = {}) {
    const FamilyPredicate accepts(spec);
    const int size = substrate_size(spec);
    check_cap(size, options.cap);
    const auto partial = run_sharded(composition_count(size), options.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t count = 0;
        for_each_member(accepts, lo, hi, [&](std::span<const Part>, std::uint64_t) { ++count; });
        return count;
    });
    std::uint64_t total = 0;
    for (std::uint64_t c : partial) total += c;
    return total;
}

// A member together with its canonical rank.
struct RankedObject {
    CompositionIndex rank;
    Object object;
};

inline std::vector<RankedObject> enumerate_family_ranked(const FamilySpec& spec, const EnumerationOptions& options = {}) {
    const FamilyPredicate accepts(spec);
    const int size = substrate_size(spec);
    check_cap(size, options.cap);
    const Sort sort = family_sort(spec);
    auto shards = run_sharded(composition_count(size), options.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<RankedObject> out;
        for_each_member(accepts, lo, hi, [&](std::span<const Part> parts, std::uint64_t index) {
            out.push_back({{size, index}, make_object(sort, {parts.begin(), parts.end()})});
        });
        return out;
    });
    std::vector<RankedObject> all;
    for (auto& shard : shards) std::move(shard.begin(), shard.end(), std::back_inserter(all));
    return all;
}

inline std::vector<Object> enumerate_family(const FamilySpec& spec, const EnumerationOptions& options = {}) {
    std::vector<Object> out;
    for (auto& ranked : enumerate_family_ranked(spec, options)) out.push_back(std::move(ranked.object));
    return out;
}

}  // namespace perim
