#pragma once

// Partitions, compositions, m-modular diagrams and the perimeter bijection.
//
// Every object here is nonempty with positive parts. Partitions are stored
// largest part first, so parts()[0] is the largest part and parts().back()
// the smallest. The perimeter of a partition is largest part + length - 1,
// and pi() carries a composition of n onto a partition of perimeter n.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "perim/error.hpp"

namespace perim {

using Part = int;

// 2^(n-1) must fit in the 64-bit rank.
inline constexpr int kMaxRankableSize = 64;

namespace detail {

inline std::string join_parts(std::span<const Part> parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts[i]);
    }
    return out;
}

inline void require_positive(std::span<const Part> parts, const char* what) {
    if (parts.empty()) throw domain_error(std::string(what) + " must be nonempty");
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i] < 1) throw domain_error(std::string(what) + " parts must be positive", i + 1);
}

}  // namespace detail

class Composition {
public:
    explicit Composition(std::vector<Part> parts) : parts_(std::move(parts)) {
        detail::require_positive(parts_, "composition");
    }
    Composition(std::initializer_list<Part> parts) : Composition(std::vector<Part>(parts)) {}

    const std::vector<Part>& parts() const noexcept { return parts_; }
    std::span<const Part> view() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    int size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    Part operator[](std::size_t i) const { return parts_[i]; }
    Part back() const { return parts_.back(); }
    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }

    std::string to_string() const { return detail::join_parts(parts_); }

    friend bool operator==(const Composition&, const Composition&) = default;
    friend auto operator<=>(const Composition&, const Composition&) = default;

private:
    std::vector<Part> parts_;
};

class Partition {
public:
    explicit Partition(std::vector<Part> parts) : parts_(std::move(parts)) {
        detail::require_positive(parts_, "partition");
        for (std::size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i] > parts_[i - 1]) throw domain_error("partition parts must be weakly decreasing", i + 1);
    }
    Partition(std::initializer_list<Part> parts) : Partition(std::vector<Part>(parts)) {}

    const std::vector<Part>& parts() const noexcept { return parts_; }
    std::span<const Part> view() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    int size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    Part largest() const { return parts_.front(); }
    Part smallest() const { return parts_.back(); }
    Part operator[](std::size_t i) const { return parts_[i]; }
    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }

    std::string to_string() const { return detail::join_parts(parts_); }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<Part> parts_;
};

// Position of a composition in the canonical order of all compositions of n.
// Bit i of index (i = 0 .. n-2) is set iff a part boundary sits after unit i+1.
struct CompositionIndex {
    int n = 1;
    std::uint64_t index = 0;

    friend bool operator==(const CompositionIndex&, const CompositionIndex&) = default;
    friend auto operator<=>(const CompositionIndex&, const CompositionIndex&) = default;
};

// Rows of digits (m, ..., m, r) with 1 <= r <= m, row i summing to part i.
struct MModularDiagram {
    int modulus = 2;
    std::vector<std::vector<Part>> rows;

    friend bool operator==(const MModularDiagram&, const MModularDiagram&) = default;
};

inline std::uint64_t composition_count(int n) {
    if (n < 1 || n > kMaxRankableSize) throw domain_error("composition size out of range: " + std::to_string(n));
    return std::uint64_t{1} << (n - 1);
}

// ---------------------------------------------------------------------------
// Span kernels. These write into caller buffers so that exhaustive sweeps can
// run without allocating per object; the value-type API below wraps them.

namespace kernel {

// out receives the parts of composition `index` of n (resized as needed).
inline void unrank(int n, std::uint64_t index, std::vector<Part>& out) {
    out.clear();
    Part run = 1;
    for (int bit = 0; bit < n - 1; ++bit) {
        if ((index >> bit) & 1U) {
            out.push_back(run);
            run = 1;
        } else {
            ++run;
        }
    }
    out.push_back(run);
}

inline std::uint64_t rank(std::span<const Part> parts) {
    std::uint64_t index = 0;
    int position = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        position += parts[i];
        index |= std::uint64_t{1} << (position - 1);
    }
    return index;
}

// lambda_i = 1 + sum_{j >= i} (c_j - 1)
inline void pi(std::span<const Part> comp, std::vector<Part>& out) {
    out.resize(comp.size());
    Part running = 1;
    for (std::size_t i = comp.size(); i-- > 0;) {
        running += comp[i] - 1;
        out[i] = running;
    }
}

// c_i = lambda_i - lambda_{i+1} + 1, last part copied.
inline void pi_inverse(std::span<const Part> part, std::vector<Part>& out) {
    out.resize(part.size());
    for (std::size_t i = 0; i + 1 < part.size(); ++i) out[i] = part[i] - part[i + 1] + 1;
    out.back() = part.back();
}

inline void conjugate(std::span<const Part> part, std::vector<Part>& out) {
    out.assign(static_cast<std::size_t>(part.front()), 0);
    // Column c has as many cells as there are parts > c.
    std::size_t rows = part.size();
    for (Part col = 0; col < part.front(); ++col) {
        while (rows > 0 && part[rows - 1] <= col) --rows;
        out[static_cast<std::size_t>(col)] = static_cast<Part>(rows);
    }
}

inline int perimeter(std::span<const Part> part) {
    return part.front() + static_cast<int>(part.size()) - 1;
}

}  // namespace kernel

// ---------------------------------------------------------------------------

inline int perimeter(const Partition& p) { return kernel::perimeter(p.view()); }

inline Partition conjugate(const Partition& p) {
    std::vector<Part> out;
    kernel::conjugate(p.view(), out);
    return Partition(std::move(out));
}

inline Partition pi(const Composition& c) {
    std::vector<Part> out;
    kernel::pi(c.view(), out);
    return Partition(std::move(out));
}

inline Composition pi_inverse(const Partition& p) {
    std::vector<Part> out;
    kernel::pi_inverse(p.view(), out);
    return Composition(std::move(out));
}

inline MModularDiagram m_modular(const Composition& c, int m) {
    if (m < 2) throw domain_error("invalid modulus " + std::to_string(m) + ": m-modular diagrams need m >= 2");
    MModularDiagram diagram{m, {}};
    diagram.rows.reserve(c.length());
    for (Part part : c) {
        const Part full = (part - 1) / m;
        std::vector<Part> row(static_cast<std::size_t>(full), m);
        row.push_back(part - full * m);
        diagram.rows.push_back(std::move(row));
    }
    return diagram;
}

inline Composition unrank_composition(int n, std::uint64_t index) {
    const std::uint64_t count = composition_count(n);
    if (index >= count)
        throw domain_error("index " + std::to_string(index) + " out of range for compositions of " + std::to_string(n) +
                           " (expected < " + std::to_string(count) + ")");
    std::vector<Part> parts;
    kernel::unrank(n, index, parts);
    return Composition(std::move(parts));
}

inline CompositionIndex rank_composition(const Composition& c) {
    const int n = c.size();
    composition_count(n);
    return {n, kernel::rank(c.view())};
}

// Canonical rank of a partition: the rank of its pi preimage.
inline CompositionIndex rank_partition(const Partition& p) {
    std::vector<Part> comp;
    kernel::pi_inverse(p.view(), comp);
    const int n = perimeter(p);
    composition_count(n);
    return {n, kernel::rank(comp)};
}

// Visits every composition of n with rank in [first, last) in rank order.
// The callback receives a view into a reused buffer together with the rank.
template <typename Visitor>
void for_each_composition(int n, std::uint64_t first, std::uint64_t last, Visitor&& visit) {
    std::vector<Part> buffer;
    buffer.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t index = first; index < last; ++index) {
        kernel::unrank(n, index, buffer);
        visit(std::span<const Part>(buffer), index);
    }
}

template <typename Visitor>
void for_each_composition(int n, Visitor&& visit) {
    for_each_composition(n, 0, composition_count(n), std::forward<Visitor>(visit));
}

// Lazy, rank-ordered view of all compositions of n.
class CompositionRange {
public:
    class iterator {
    public:
        using value_type = Composition;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(int n, std::uint64_t index) : n_(n), index_(index) {}

        Composition operator*() const { return unrank_composition(n_, index_); }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++index_;
            return copy;
        }
        friend bool operator==(const iterator&, const iterator&) = default;

    private:
        int n_ = 1;
        std::uint64_t index_ = 0;
    };

    explicit CompositionRange(int n) : n_(n), count_(composition_count(n)) {}

    iterator begin() const { return {n_, 0}; }
    iterator end() const { return {n_, count_}; }
    std::uint64_t size() const noexcept { return count_; }

private:
    int n_;
    std::uint64_t count_;
};

inline CompositionRange compositions(int n) { return CompositionRange(n); }

inline std::vector<Composition> enumerate_compositions(int n) {
    std::vector<Composition> out;
    out.reserve(static_cast<std::size_t>(composition_count(n)));
    for (Composition c : compositions(n)) out.push_back(std::move(c));
    return out;
}

// Partitions of perimeter n, ordered by the rank of their pi preimage.
inline std::vector<Partition> enumerate_perimeter_partitions(int n) {
    std::vector<Partition> out;
    out.reserve(static_cast<std::size_t>(composition_count(n)));
    for (const Composition& c : compositions(n)) out.push_back(pi(c));
    return out;
}

// ---------------------------------------------------------------------------
// Either kind of object, for code that handles both (maps, reports, the CLI).

enum class Sort { composition, partition };

using Object = std::variant<Composition, Partition>;

inline const char* sort_name(Sort sort) { return sort == Sort::composition ? "composition" : "partition"; }

inline Sort sort_of(const Object& object) {
    return std::holds_alternative<Composition>(object) ? Sort::composition : Sort::partition;
}

inline std::span<const Part> parts_of(const Object& object) {
    return std::visit([](const auto& o) { return o.view(); }, object);
}

inline std::string to_string(const Object& object) { return detail::join_parts(parts_of(object)); }

// Compositions rank directly; partitions rank through their pi preimage.
inline CompositionIndex rank_of(const Object& object) {
    if (const auto* c = std::get_if<Composition>(&object)) return rank_composition(*c);
    return rank_partition(std::get<Partition>(object));
}

inline Object make_object(Sort sort, std::vector<Part> parts) {
    if (sort == Sort::composition) return Composition(std::move(parts));
    return Partition(std::move(parts));
}

}  // namespace perim
