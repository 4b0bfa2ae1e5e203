#pragma once

// Constructive maps between the families: the residue rotation and its
// inverse, the injection phi with its step trace and inverse on the image,
// the transport maps onto the two Fu-Tang families, and the two Fibonacci
// chain maps.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "perim/core.hpp"
#include "perim/error.hpp"
#include "perim/family.hpp"

namespace perim {

namespace detail {

inline void require_modulus(int m, int min, const char* op) {
    if (m < min)
        throw domain_error(std::string(op) + ": invalid modulus " + std::to_string(m) + " (need m >= " +
                           std::to_string(min) + ")");
}

inline std::vector<bool> residue_mask(int m, const std::vector<int>& residues, const char* op) {
    require_modulus(m, 2, op);
    if (residues.empty()) throw domain_error(std::string(op) + ": R must be nonempty");
    std::vector<bool> mask(static_cast<std::size_t>(m), false);
    int prev = 0;
    for (int r : residues) {
        if (r < 1 || r > m - 1)
            throw domain_error(std::string(op) + ": residue " + std::to_string(r) + " outside 1.." + std::to_string(m - 1));
        if (r <= prev) throw domain_error(std::string(op) + ": R must be strictly ascending");
        prev = r;
        mask[static_cast<std::size_t>(r)] = true;
    }
    return mask;
}

}  // namespace detail

// Each part q*m + r (r in R) becomes the run m, ..., m, r with q copies of m.
inline Composition rotate_residues(const Composition& c, int m, const std::vector<int>& residues) {
    const auto in_r = detail::residue_mask(m, residues, "rotate");
    std::vector<Part> out;
    for (std::size_t i = 0; i < c.length(); ++i) {
        const Part part = c[i];
        const int r = part % m;
        if (!in_r[static_cast<std::size_t>(r)])
            throw domain_error("rotate: part " + std::to_string(part) + " has residue " + std::to_string(r) +
                                   " outside R mod " + std::to_string(m),
                               i + 1);
        out.insert(out.end(), static_cast<std::size_t>(part / m), m);
        out.push_back(r);
    }
    return Composition(std::move(out));
}

// Reading upward from the last part, each digit from R closes a group with
// the run of m's directly above it.
inline Composition unrotate_residues(const Composition& c, int m, const std::vector<int>& residues) {
    const auto in_r = detail::residue_mask(m, residues, "unrotate");
    for (std::size_t i = 0; i < c.length(); ++i) {
        const Part part = c[i];
        if (part != m && (part > m || !in_r[static_cast<std::size_t>(part)]))
            throw domain_error("unrotate: part " + std::to_string(part) + " is neither m nor in R", i + 1);
    }
    if (c.back() == m) throw domain_error("unrotate: last part must lie in R, not equal m", c.length());

    std::vector<Part> out;
    Part pending = 0;
    for (Part part : c) {
        pending += part;
        if (part != m) {
            out.push_back(pending);
            pending = 0;
        }
    }
    return Composition(std::move(out));
}

// ---------------------------------------------------------------------------
// phi: compositions with the suffix-sum property into compositions with no
// part divisible by m.

enum class PhiBranch { preserve, split };

struct PhiStep {
    std::size_t index = 0;  // 1-based part index in the source
    Part part = 0;
    Part j_before = 0;
    Part j_after = 0;  // equals lambda_index of pi(source)
    PhiBranch branch = PhiBranch::preserve;
    std::optional<int> remainder;  // j_after mod m, split steps only
    std::vector<Part> emitted;     // top-down as they appear in the output

    friend bool operator==(const PhiStep&, const PhiStep&) = default;
};

// Steps in processing order, i.e. from the last part upward.
struct PhiTrace {
    std::vector<PhiStep> steps;

    std::size_t split_count() const {
        return static_cast<std::size_t>(
            std::count_if(steps.begin(), steps.end(), [](const PhiStep& s) { return s.branch == PhiBranch::split; }));
    }
};

struct PhiResult {
    Composition image;
    PhiTrace trace;
};

inline PhiResult phi_traced(const Composition& c, int m) {
    detail::require_modulus(m, 2, "phi");
    PhiTrace trace;
    trace.steps.reserve(c.length());
    std::vector<Part> reversed;  // built bottom-up, flipped at the end
    reversed.reserve(2 * c.length());
    Part j = 1;
    for (std::size_t i = c.length(); i-- > 0;) {
        PhiStep step;
        step.index = i + 1;
        step.part = c[i];
        step.j_before = j;
        j += c[i] - 1;
        step.j_after = j;
        if (j % m == 0)
            throw domain_error("phi: suffix sum " + std::to_string(j) + " is divisible by " + std::to_string(m), i + 1);
        if (c[i] % m != 0) {
            step.emitted = {c[i]};
            reversed.push_back(c[i]);
        } else {
            const int r = j % m;
            step.branch = PhiBranch::split;
            step.remainder = r;
            step.emitted = {c[i] - (m - r), m - r};
            reversed.push_back(m - r);
            reversed.push_back(c[i] - (m - r));
        }
        trace.steps.push_back(std::move(step));
    }
    std::reverse(reversed.begin(), reversed.end());
    return {Composition(std::move(reversed)), std::move(trace)};
}

inline Composition phi(const Composition& c, int m) { return phi_traced(c, m).image; }

// Walks d from its last part with j += d_i - 1; a step with j = 0 mod m marks
// the lower half of a split, which merges with the part above it (j then
// absorbs that part in full). The candidate is returned only if phi maps it
// back onto d.
inline std::optional<Composition> phi_preimage(const Composition& d, int m) {
    detail::require_modulus(m, 2, "phi-preimage");
    for (std::size_t i = 0; i < d.length(); ++i)
        if (d[i] % m == 0)
            throw domain_error("phi-preimage: part " + std::to_string(d[i]) + " is divisible by " + std::to_string(m) +
                                   ", so d is outside the codomain",
                               i + 1);

    std::vector<Part> reversed;
    Part j = 1;
    std::size_t i = d.length();
    while (i > 0) {
        --i;
        j += d[i] - 1;
        if (j % m != 0) {
            reversed.push_back(d[i]);
            continue;
        }
        if (i == 0) return std::nullopt;
        --i;
        j += d[i];
        reversed.push_back(d[i] + d[i + 1]);
    }
    std::reverse(reversed.begin(), reversed.end());
    Composition candidate(std::move(reversed));

    if (!member(make_family(FamilyKind::comp_star, candidate.size(), m), candidate)) return std::nullopt;
    if (phi(candidate, m) != d) return std::nullopt;
    return candidate;
}

// (m-1, 2, 1, ..., 1) with n - m - 1 ones: not divisible by m anywhere, yet
// never an image of phi when n > m > 2.
inline Composition strict_witness(int n, int m) {
    if (!(n > m && m > 2))
        throw domain_error("strict witness needs n > m > 2, got n=" + std::to_string(n) + ", m=" + std::to_string(m));
    std::vector<Part> parts{m - 1, 2};
    parts.insert(parts.end(), static_cast<std::size_t>(n - m - 1), 1);
    return Composition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Transport onto the Fu-Tang families (modulus m + 1 on the composition side).

inline Partition ft1_map(const Composition& c, int m, int k) {
    detail::require_modulus(m, 1, "ft1");
    if (!member(make_family(FamilyKind::huang_a, c.size(), m + 1, k), c))
        throw domain_error("ft1: " + c.to_string() + " is not in huang-a with modulus " + std::to_string(m + 1) +
                           ", k=" + std::to_string(k));
    return pi(c);
}

inline Composition ft1_unmap(const Partition& p) { return pi_inverse(p); }

// Removes m from the final part, then applies pi.
inline Partition ft2_map(const Composition& c, int m, int k) {
    detail::require_modulus(m, 1, "ft2");
    if (c.back() <= m)
        throw domain_error("ft2: final part " + std::to_string(c.back()) + " must exceed m=" + std::to_string(m),
                           c.length());
    const int n = c.size() - m;
    if (!member(make_family(FamilyKind::huang_b, n, m + 1, k), c))
        throw domain_error("ft2: " + c.to_string() + " is not in huang-b with modulus " + std::to_string(m + 1) +
                           ", k=" + std::to_string(k));
    std::vector<Part> reduced = c.parts();
    reduced.back() -= m;
    return pi(Composition(std::move(reduced)));
}

inline Composition ft2_unmap(const Partition& p, int m) {
    detail::require_modulus(m, 1, "ft2-unmap");
    std::vector<Part> comp = pi_inverse(p).parts();
    comp.back() += m;
    return Composition(std::move(comp));
}

// ---------------------------------------------------------------------------
// Fibonacci chain: odd parts -> parts in {1,2} ending in 1 -> parts > 1 of n+1.

inline Composition fib_chain_12_from_odd(const Composition& c) {
    for (std::size_t i = 0; i < c.length(); ++i)
        if (c[i] % 2 == 0) throw domain_error("fib12: part " + std::to_string(c[i]) + " is even", i + 1);
    return rotate_residues(c, 2, {1});
}

inline Composition fib_chain_odd_from_12(const Composition& c) { return unrotate_residues(c, 2, {1}); }

// Through the perimeter world (pi, conjugate, pi inverse), which lands on
// compositions of n where only the last part may be 1; then the last part
// grows by one.
inline Composition fib_chain_gt1_from_12(const Composition& c) {
    for (std::size_t i = 0; i < c.length(); ++i)
        if (c[i] != 1 && c[i] != 2) throw domain_error("fib-gt1: parts must be 1 or 2", i + 1);
    if (c.back() != 1) throw domain_error("fib-gt1: last part must be 1", c.length());
    std::vector<Part> out = pi_inverse(conjugate(pi(c))).parts();
    out.back() += 1;
    return Composition(std::move(out));
}

inline Composition fib_chain_12_from_gt1(const Composition& c) {
    for (std::size_t i = 0; i < c.length(); ++i)
        if (c[i] < 2) throw domain_error("fib-12 inverse: parts must exceed 1", i + 1);
    std::vector<Part> shrunk = c.parts();
    shrunk.back() -= 1;
    return pi_inverse(conjugate(pi(Composition(std::move(shrunk)))));
}

// ---------------------------------------------------------------------------
// Uniform dispatch, used by the map checker and the CLI.

enum class MapId { pi, pi_inverse, conjugate, rotate, unrotate, phi, phi_preimage, ft1, ft2, fib12, fib_gt1 };

struct MapTraits {
    MapId id;
    std::string_view name;
    Sort input;
    Sort output;
    int min_m;  // 0: takes no modulus
    bool uses_k;
    bool uses_residues;
};

inline constexpr std::array<MapTraits, 11> kMapTraits{{
    {MapId::pi, "pi", Sort::composition, Sort::partition, 0, false, false},
    {MapId::pi_inverse, "pi-inverse", Sort::partition, Sort::composition, 0, false, false},
    {MapId::conjugate, "conjugate", Sort::partition, Sort::partition, 0, false, false},
    {MapId::rotate, "rotate", Sort::composition, Sort::composition, 2, false, true},
    {MapId::unrotate, "unrotate", Sort::composition, Sort::composition, 2, false, true},
    {MapId::phi, "phi", Sort::composition, Sort::composition, 2, false, false},
    {MapId::phi_preimage, "phi-preimage", Sort::composition, Sort::composition, 2, false, false},
    {MapId::ft1, "ft1", Sort::composition, Sort::partition, 1, true, false},
    {MapId::ft2, "ft2", Sort::composition, Sort::partition, 1, true, false},
    {MapId::fib12, "fib12", Sort::composition, Sort::composition, 0, false, false},
    {MapId::fib_gt1, "fib-gt1", Sort::composition, Sort::composition, 0, false, false},
}};

inline const MapTraits& traits(MapId id) {
    for (const auto& t : kMapTraits)
        if (t.id == id) return t;
    throw domain_error("unknown map");
}

inline std::optional<MapId> map_id_from_name(std::string_view name) {
    for (const auto& t : kMapTraits)
        if (t.name == name) return t.id;
    return std::nullopt;
}

struct MapSpec {
    MapId id = MapId::pi;
    int m = 0;
    int k = 0;
    std::vector<int> residues;
};

inline std::string to_string(const MapSpec& spec) {
    const MapTraits& t = traits(spec.id);
    std::string out(t.name);
    if (t.min_m > 0) out += ":m=" + std::to_string(spec.m);
    if (t.uses_k) out += ",k=" + std::to_string(spec.k);
    if (t.uses_residues) out += ",R=" + detail::join_parts(spec.residues);
    return out;
}

// Applies the map. Returns nullopt only for phi-preimage on a non-image;
// any other precondition failure throws domain_error.
inline std::optional<Object> apply_map(const MapSpec& spec, const Object& input) {
    const MapTraits& t = traits(spec.id);
    if (sort_of(input) != t.input)
        throw domain_error(std::string(t.name) + " takes a " + sort_name(t.input) + ", got a " +
                           sort_name(sort_of(input)));
    switch (spec.id) {
        case MapId::pi:
            return pi(std::get<Composition>(input));
        case MapId::pi_inverse:
            return pi_inverse(std::get<Partition>(input));
        case MapId::conjugate:
            return conjugate(std::get<Partition>(input));
        case MapId::rotate:
            return rotate_residues(std::get<Composition>(input), spec.m, spec.residues);
        case MapId::unrotate:
            return unrotate_residues(std::get<Composition>(input), spec.m, spec.residues);
        case MapId::phi:
            return phi(std::get<Composition>(input), spec.m);
        case MapId::phi_preimage: {
            auto pre = phi_preimage(std::get<Composition>(input), spec.m);
            if (!pre) return std::nullopt;
            return Object(std::move(*pre));
        }
        case MapId::ft1:
            return ft1_map(std::get<Composition>(input), spec.m, spec.k);
        case MapId::ft2:
            return ft2_map(std::get<Composition>(input), spec.m, spec.k);
        case MapId::fib12:
            return fib_chain_12_from_odd(std::get<Composition>(input));
        case MapId::fib_gt1:
            return fib_chain_gt1_from_12(std::get<Composition>(input));
    }
    return std::nullopt;
}

}  // namespace perim
