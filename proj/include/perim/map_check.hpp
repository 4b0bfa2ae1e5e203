#pragma once

// Exhaustive checking of a map between two families: image containment,
// collisions, and codomain members the map never reaches.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iterator>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "perim/bijections.hpp"
#include "perim/core.hpp"
#include "perim/family.hpp"
#include "perim/parallel.hpp"

namespace perim {

// Sort plus canonical rank; unique per object.
struct ObjectKey {
    Sort sort = Sort::composition;
    CompositionIndex rank;

    friend bool operator==(const ObjectKey&, const ObjectKey&) = default;
    friend auto operator<=>(const ObjectKey&, const ObjectKey&) = default;
};

inline ObjectKey key_of(const Object& object) { return {sort_of(object), rank_of(object)}; }

inline Object object_at(const ObjectKey& key) {
    Composition c = unrank_composition(key.rank.n, key.rank.index);
    if (key.sort == Sort::composition) return c;
    return pi(c);
}

struct MapFailure {
    Object input;
    std::string reason;
};

// Two domain members with the same image.
struct Collision {
    Object first;
    Object second;
    Object image;
};

struct MapReport {
    std::string map;
    std::string domain;
    std::string codomain;
    std::uint64_t domain_size = 0;
    std::uint64_t image_size = 0;  // distinct images
    std::uint64_t codomain_size = 0;
    bool injective = true;         // collisions empty
    bool surjective = true;        // missing empty
    bool image_in_codomain = true; // strays empty
    std::vector<Object> missing;   // codomain members never hit, rank order
    std::vector<Collision> collisions;
    std::vector<Object> strays;    // images outside the codomain
    std::vector<MapFailure> failures;

    bool total() const noexcept { return failures.empty(); }
    bool is_injection() const noexcept { return total() && injective && image_in_codomain; }
    bool is_bijection() const noexcept { return is_injection() && surjective; }
};

struct MapCheckOptions {
    int cap = kDefaultCap;
    int workers = 1;
};

namespace detail {

struct ImageEntry {
    ObjectKey image;
    std::uint64_t source;  // domain substrate rank
};

struct DomainShard {
    std::vector<ImageEntry> images;
    std::vector<std::pair<std::uint64_t, std::string>> failures;
    std::uint64_t visited = 0;
};

inline std::vector<ObjectKey> family_keys(const FamilySpec& spec, const MapCheckOptions& options) {
    const FamilyPredicate accepts(spec);
    const int size = substrate_size(spec);
    check_cap(size, options.cap);
    const Sort sort = family_sort(spec);
    auto shards = run_sharded(composition_count(size), options.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<ObjectKey> keys;
        for_each_member(accepts, lo, hi,
                        [&](std::span<const Part>, std::uint64_t index) { keys.push_back({sort, {size, index}}); });
        return keys;
    });
    std::vector<ObjectKey> all;
    for (auto& shard : shards) all.insert(all.end(), shard.begin(), shard.end());
    return all;
}

}  // namespace detail

// Applies `fn` (Object -> optional<Object>) to every member of `domain` and
// compares the image with `codomain`. A member the map rejects becomes a
// failure entry; it never aborts the check. Output is independent of
// options.workers.
template <typename Fn>
MapReport check_map_fn(std::string name, Fn&& fn, const FamilySpec& domain, const FamilySpec& codomain,
                       const MapCheckOptions& options = {}) {
    MapReport report;
    report.map = std::move(name);
    report.domain = to_string(domain);
    report.codomain = to_string(codomain);

    const FamilyPredicate accepts(domain);
    const int size = substrate_size(domain);
    check_cap(size, options.cap);
    check_cap(substrate_size(codomain), options.cap);
    const Sort domain_sort = family_sort(domain);

    auto shards = run_sharded(composition_count(size), options.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        detail::DomainShard shard;
        for_each_member(accepts, lo, hi, [&](std::span<const Part> parts, std::uint64_t index) {
            ++shard.visited;
            const Object input = make_object(domain_sort, {parts.begin(), parts.end()});
            try {
                std::optional<Object> image = fn(input);
                if (!image) {
                    shard.failures.emplace_back(index, "not in the image");
                    return;
                }
                shard.images.push_back({key_of(*image), index});
            } catch (const std::exception& e) {
                shard.failures.emplace_back(index, e.what());
            }
        });
        return shard;
    });

    std::vector<detail::ImageEntry> images;
    for (auto& shard : shards) {
        report.domain_size += shard.visited;
        images.insert(images.end(), shard.images.begin(), shard.images.end());
        for (auto& [index, reason] : shard.failures)
            report.failures.push_back({object_at({domain_sort, {size, index}}), std::move(reason)});
    }
    std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) {
        return std::tie(a.image, a.source) < std::tie(b.image, b.source);
    });

    std::vector<ObjectKey> distinct;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (i > 0 && images[i].image == images[i - 1].image) {
            std::size_t first = i - 1;
            while (first > 0 && images[first - 1].image == images[i].image) --first;
            report.collisions.push_back({object_at({domain_sort, {size, images[first].source}}),
                                         object_at({domain_sort, {size, images[i].source}}),
                                         object_at(images[i].image)});
            continue;
        }
        distinct.push_back(images[i].image);
    }
    report.image_size = distinct.size();

    const std::vector<ObjectKey> target = detail::family_keys(codomain, options);
    report.codomain_size = target.size();

    std::vector<ObjectKey> missing;
    std::set_difference(target.begin(), target.end(), distinct.begin(), distinct.end(), std::back_inserter(missing));
    std::vector<ObjectKey> strays;
    std::set_difference(distinct.begin(), distinct.end(), target.begin(), target.end(), std::back_inserter(strays));
    for (const auto& key : missing) report.missing.push_back(object_at(key));
    for (const auto& key : strays) report.strays.push_back(object_at(key));

    report.injective = report.collisions.empty();
    report.surjective = report.missing.empty();
    report.image_in_codomain = report.strays.empty();
    return report;
}

inline MapReport check_map(const MapSpec& map, const FamilySpec& domain, const FamilySpec& codomain,
                           const MapCheckOptions& options = {}) {
    return check_map_fn(
        to_string(map), [&](const Object& input) { return apply_map(map, input); }, domain, codomain, options);
}

}  // namespace perim
