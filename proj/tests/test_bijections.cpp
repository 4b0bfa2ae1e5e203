#include <gtest/gtest.h>

#include "oracle.hpp"
#include "perim/bijections.hpp"
#include "perim/family.hpp"

using namespace perim;

TEST(Rotate, WorkedExample) {
    const Composition c{7, 9, 1, 7, 3};
    const Composition d{4, 3, 4, 4, 1, 1, 4, 3, 3};
    EXPECT_EQ(rotate_residues(c, 4, {1, 3}), d);
    EXPECT_EQ(unrotate_residues(d, 4, {1, 3}), c);
}

TEST(Rotate, Errors) {
    EXPECT_THROW(rotate_residues(Composition{2}, 4, {1, 3}), domain_error);  // 2 not in R
    EXPECT_THROW(rotate_residues(Composition{1}, 4, {}), domain_error);
    EXPECT_THROW(rotate_residues(Composition{1}, 4, {4}), domain_error);
    EXPECT_THROW(rotate_residues(Composition{1}, 1, {1}), domain_error);
    EXPECT_THROW(unrotate_residues(Composition{1, 4}, 4, {1}), domain_error);  // last part m
}

TEST(Phi, WorkedExample) {
    const Composition c{6, 2, 4, 3, 2};
    const Composition d{4, 2, 2, 4, 1, 2, 2};
    EXPECT_EQ(phi(c, 3), d);
    const auto back = phi_preimage(d, 3);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, c);
}

TEST(Phi, TraceSteps) {
    const auto result = phi_traced(Composition{6, 2, 4, 3, 2}, 3);
    const auto& steps = result.trace.steps;
    ASSERT_EQ(steps.size(), 5u);
    EXPECT_EQ(result.trace.split_count(), 2u);
    // bottom part first
    EXPECT_EQ(steps[0].index, 5u);
    EXPECT_EQ(steps[0].j_before, 1);
    EXPECT_EQ(steps[0].j_after, 2);
    EXPECT_EQ(steps[0].branch, PhiBranch::preserve);
    EXPECT_EQ(steps[1].part, 3);
    EXPECT_EQ(steps[1].branch, PhiBranch::split);
    ASSERT_TRUE(steps[1].remainder.has_value());
    EXPECT_EQ(*steps[1].remainder, 1);
    EXPECT_EQ(steps[1].emitted, (std::vector<Part>{1, 2}));
    EXPECT_EQ(steps[4].emitted, (std::vector<Part>{4, 2}));
    EXPECT_EQ(steps[4].j_after, 13);
}

TEST(Phi, RejectsNonStar) {
    // suffix sums 1+(1)=2, 2+(2)=4 ... (3) alone gives j = 3
    try {
        phi(Composition{3}, 3);
        FAIL();
    } catch (const domain_error& e) {
        ASSERT_TRUE(e.index().has_value());
        EXPECT_EQ(*e.index(), 1u);
    }
    EXPECT_THROW(phi(Composition{1}, 1), domain_error);
}

TEST(Phi, PreimageOfNonImage) {
    EXPECT_FALSE(phi_preimage(Composition{2, 2}, 3).has_value());
    EXPECT_THROW(phi_preimage(Composition{3, 1}, 3), domain_error);
}

TEST(Phi, IdentityAtTwo) {
    for (int n = 1; n <= 12; ++n)
        for (const auto& c : enumerate_family(make_family(FamilyKind::comp_star, n, 2))) {
            const auto& comp = std::get<Composition>(c);
            EXPECT_EQ(phi(comp, 2), comp);
            EXPECT_EQ(phi_traced(comp, 2).trace.split_count(), 0u);
        }
}

TEST(StrictWitness, ShapeAndDomain) {
    EXPECT_EQ(strict_witness(4, 3), (Composition{2, 2}));
    EXPECT_EQ(strict_witness(7, 4), (Composition{3, 2, 1, 1}));
    EXPECT_THROW(strict_witness(3, 3), domain_error);
    EXPECT_THROW(strict_witness(5, 2), domain_error);
}

TEST(FuTangMaps, RoundTripsAndTargets) {
    for (int n = 1; n <= 10; ++n)
        for (int m = 1; m <= 3; ++m)
            for (int k = 0; k <= 3; ++k) {
                const auto ft1 = make_family(FamilyKind::ft1, n, m, k);
                const auto ft2 = make_family(FamilyKind::ft2, n, m, k);
                for (const auto& obj : enumerate_family(make_family(FamilyKind::huang_a, n, m + 1, k))) {
                    const auto& c = std::get<Composition>(obj);
                    const Partition p = ft1_map(c, m, k);
                    EXPECT_TRUE(member(ft1, p)) << c.to_string();
                    EXPECT_EQ(ft1_unmap(p), c);
                }
                for (const auto& obj : enumerate_family(make_family(FamilyKind::huang_b, n, m + 1, k))) {
                    const auto& c = std::get<Composition>(obj);
                    const Partition p = ft2_map(c, m, k);
                    EXPECT_TRUE(member(ft2, p)) << c.to_string();
                    EXPECT_EQ(ft2_unmap(p, m), c);
                }
            }
}

TEST(FuTangMaps, Errors) {
    EXPECT_THROW(ft1_map(Composition{2}, 1, 0), domain_error);  // 2 is not 1 mod 2
    EXPECT_THROW(ft2_map(Composition{1, 1}, 1, 0), domain_error);
}

TEST(FibonacciMaps, RoundTrips) {
    for (int n = 1; n <= 14; ++n) {
        for (const auto& obj : enumerate_family(make_family(FamilyKind::fib_odd, n))) {
            const auto& c = std::get<Composition>(obj);
            const auto d = fib_chain_12_from_odd(c);
            EXPECT_TRUE(member(make_family(FamilyKind::fib_12, n), d));
            EXPECT_EQ(fib_chain_odd_from_12(d), c);
        }
        for (const auto& obj : enumerate_family(make_family(FamilyKind::fib_12, n))) {
            const auto& c = std::get<Composition>(obj);
            const auto d = fib_chain_gt1_from_12(c);
            EXPECT_TRUE(member(make_family(FamilyKind::fib_gt1, n), d));
            EXPECT_EQ(fib_chain_12_from_gt1(d), c);
        }
    }
}

TEST(MapDispatch, NamesAndSorts) {
    for (const auto& t : kMapTraits) {
        const auto id = map_id_from_name(t.name);
        ASSERT_TRUE(id.has_value()) << t.name;
        EXPECT_EQ(*id, t.id);
    }
    EXPECT_FALSE(map_id_from_name("psi").has_value());
    EXPECT_EQ(to_string(MapSpec{MapId::rotate, 4, 0, {1, 3}}), "rotate:m=4,R=1,3");
    EXPECT_EQ(to_string(MapSpec{MapId::ft1, 1, 2, {}}), "ft1:m=1,k=2");

    const auto out = apply_map({MapId::phi, 3, 0, {}}, Composition{6, 2, 4, 3, 2});
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(std::get<Composition>(*out), (Composition{4, 2, 2, 4, 1, 2, 2}));
    EXPECT_FALSE(apply_map({MapId::phi_preimage, 3, 0, {}}, Composition{2, 2}).has_value());
    EXPECT_THROW(apply_map({MapId::pi, 0, 0, {}}, Partition{2, 1}), domain_error);
    EXPECT_EQ(std::get<Partition>(*apply_map({MapId::conjugate, 0, 0, {}}, Partition{5, 3, 1, 1})),
              (Partition{4, 2, 2, 1, 1}));
}
