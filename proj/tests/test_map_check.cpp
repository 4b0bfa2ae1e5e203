#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "perim/map_check.hpp"

using namespace perim;

TEST(MapCheck, PhiMissesOneAtFourThree) {
    const auto r = check_map({MapId::phi, 3, 0, {}}, make_family(FamilyKind::comp_star, 4, 3),
                             make_family(FamilyKind::comp_not_div_m, 4, 3));
    EXPECT_EQ(r.domain_size, 5u);
    EXPECT_EQ(r.codomain_size, 6u);
    EXPECT_EQ(r.image_size, 5u);
    EXPECT_TRUE(r.is_injection());
    EXPECT_FALSE(r.is_bijection());
    ASSERT_EQ(r.missing.size(), 1u);
    EXPECT_EQ(std::get<Composition>(r.missing[0]), (Composition{2, 2}));
    EXPECT_EQ(r.map, "phi:m=3");
    EXPECT_EQ(r.domain, "star:n=4,m=3");
}

TEST(MapCheck, ChainStepsAreBijections) {
    for (int n = 1; n <= 10; ++n)
        for (int m = 2; m <= 5; ++m) {
            std::vector<int> all;
            for (int r = 1; r < m; ++r) all.push_back(r);
            EXPECT_TRUE(check_map({MapId::pi_inverse, 0, 0, {}}, make_family(FamilyKind::part_not_div_m, n, m),
                                  make_family(FamilyKind::comp_star, n, m))
                            .is_bijection());
            EXPECT_TRUE(check_map({MapId::rotate, m, 0, all}, make_family(FamilyKind::comp_not_div_m, n, m),
                                  make_family(FamilyKind::comp_capped, n, m))
                            .is_bijection());
            EXPECT_TRUE(check_map({MapId::pi, 0, 0, {}}, make_family(FamilyKind::comp_capped, n, m),
                                  make_family(FamilyKind::part_gap_lt_m, n, m))
                            .is_bijection());
            EXPECT_TRUE(check_map({MapId::conjugate, 0, 0, {}}, make_family(FamilyKind::part_gap_lt_m, n, m),
                                  make_family(FamilyKind::part_repeat_lt_m, n, m))
                            .is_bijection());
        }
}

TEST(MapCheck, ReportsStraysAndFailures) {
    // conjugation does not keep h inside h
    const auto strays = check_map({MapId::conjugate, 0, 0, {}}, make_family(FamilyKind::part_not_div_m, 5, 2),
                                  make_family(FamilyKind::part_not_div_m, 5, 2));
    EXPECT_FALSE(strays.image_in_codomain);
    EXPECT_FALSE(strays.strays.empty());

    // phi is undefined off the star family
    const auto fails = check_map({MapId::phi, 3, 0, {}}, make_family(FamilyKind::comp_not_div_m, 5, 3),
                                 make_family(FamilyKind::comp_not_div_m, 5, 3));
    EXPECT_FALSE(fails.total());
    EXPECT_FALSE(fails.is_bijection());
    EXPECT_FALSE(fails.failures.empty());
}

TEST(MapCheck, Collisions) {
    // sorting is lossy on compositions with the same multiset of parts
    auto sorted = [](const Object& o) -> std::optional<Object> {
        auto parts = std::get<Composition>(o).parts();
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Object(Partition(parts));
    };
    const auto r = check_map_fn("sort", sorted, make_family(FamilyKind::fib_odd, 5),
                                make_family(FamilyKind::fib_odd, 5));
    EXPECT_FALSE(r.injective);
    EXPECT_EQ(r.collisions.size(), 2u);  // 3,1,1 / 1,3,1 / 1,1,3 share an image
    EXPECT_FALSE(r.image_in_codomain);   // partitions land outside a composition family
}

TEST(MapCheck, WorkerCountInvariant) {
    const MapSpec map{MapId::phi, 4, 0, {}};
    const auto a = check_map(map, make_family(FamilyKind::comp_star, 14, 4),
                             make_family(FamilyKind::comp_not_div_m, 14, 4), {kDefaultCap, 1});
    const auto b = check_map(map, make_family(FamilyKind::comp_star, 14, 4),
                             make_family(FamilyKind::comp_not_div_m, 14, 4), {kDefaultCap, 4});
    EXPECT_EQ(a.domain_size, b.domain_size);
    EXPECT_EQ(a.missing, b.missing);
    EXPECT_EQ(a.image_size, b.image_size);
}
