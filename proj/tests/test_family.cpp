#include <gtest/gtest.h>

#include <functional>

#include "oracle.hpp"
#include "perim/family.hpp"

using namespace perim;

namespace {

oracle::Set library_set(const FamilySpec& spec, int workers = 1) {
    oracle::Set out;
    for (const auto& obj : enumerate_family(spec, {kDefaultCap, workers})) {
        const auto parts = parts_of(obj);
        out.insert({parts.begin(), parts.end()});
    }
    return out;
}

oracle::Set comps(int n, const std::function<bool(const oracle::Parts&)>& pred) {
    return oracle::filter(oracle::compositions(n), pred);
}

oracle::Set parts(int n, const std::function<bool(const oracle::Parts&)>& pred) {
    return oracle::filter(oracle::perimeter_partitions(n), pred);
}

}  // namespace

TEST(FamilyOracle, MainChainFamilies) {
    for (int n = 1; n <= 12; ++n) {
        for (int m = 2; m <= 6; ++m) {
            SCOPED_TRACE(testing::Message() << "n=" << n << " m=" << m);
            EXPECT_EQ(library_set(make_family(FamilyKind::part_not_div_m, n, m)),
                      parts(n, [&](auto& p) { return oracle::h(p, m); }));
            EXPECT_EQ(library_set(make_family(FamilyKind::part_repeat_lt_m, n, m)),
                      parts(n, [&](auto& p) { return oracle::g(p, m); }));
            EXPECT_EQ(library_set(make_family(FamilyKind::part_gap_lt_m, n, m)),
                      parts(n, [&](auto& p) { return oracle::gap(p, m); }));
            EXPECT_EQ(library_set(make_family(FamilyKind::comp_star, n, m)),
                      comps(n, [&](auto& c) { return oracle::star(c, m); }));
            EXPECT_EQ(library_set(make_family(FamilyKind::comp_not_div_m, n, m)),
                      comps(n, [&](auto& c) { return oracle::comp_not_div(c, m); }));
            EXPECT_EQ(library_set(make_family(FamilyKind::comp_capped, n, m)),
                      comps(n, [&](auto& c) { return oracle::capped(c, m); }));
        }
    }
}

TEST(FamilyOracle, LemmaFamilies) {
    for (int n = 1; n <= 11; ++n) {
        for (int m = 2; m <= 5; ++m) {
            for (unsigned mask = 1; mask < (1u << (m - 1)); ++mask) {
                std::vector<int> r;
                for (int x = 1; x < m; ++x)
                    if (mask >> (x - 1) & 1u) r.push_back(x);
                SCOPED_TRACE(testing::Message() << "n=" << n << " m=" << m << " mask=" << mask);
                EXPECT_EQ(library_set(make_family(FamilyKind::comp_residue_r, n, m, std::nullopt, r)),
                          comps(n, [&](auto& c) { return oracle::lemma_residue(c, m, r); }));
                EXPECT_EQ(library_set(make_family(FamilyKind::comp_alphabet_r, n, m, std::nullopt, r)),
                          comps(n, [&](auto& c) { return oracle::lemma_alphabet(c, m, r); }));
            }
        }
    }
}

TEST(FamilyOracle, CompositionTheoremFamilies) {
    for (int n = 1; n <= 10; ++n) {
        for (int m = 1; m <= 4; ++m) {
            SCOPED_TRACE(testing::Message() << "n=" << n << " m=" << m);
            EXPECT_EQ(library_set(make_family(FamilyKind::munagi_a, n, m)),
                      comps(n, [&](auto& c) { return oracle::munagi_a(c, m); }));
            EXPECT_EQ(library_set(make_family(FamilyKind::munagi_b, n, m)),
                      comps(n + m - 1, [&](auto& c) { return oracle::munagi_b(c, m); }));
            for (int k = 0; k <= 3; ++k) {
                EXPECT_EQ(library_set(make_family(FamilyKind::huang_a, n, m, k)),
                          comps(n, [&](auto& c) { return oracle::huang_a(c, m, k); }));
                EXPECT_EQ(library_set(make_family(FamilyKind::huang_b, n, m, k)),
                          comps(n + m - 1, [&](auto& c) { return oracle::huang_b(c, m, k); }));
            }
        }
    }
}

// The partition families read literally from their descriptions.
TEST(FamilyOracle, RefinedPerimeterFamilies) {
    for (int n = 1; n <= 12; ++n) {
        for (int m = 1; m <= 3; ++m) {
            for (int k = 0; k <= 4; ++k) {
                SCOPED_TRACE(testing::Message() << "n=" << n << " m=" << m << " k=" << k);
                EXPECT_EQ(library_set(make_family(FamilyKind::ft1, n, m, k)),
                          parts(n, [&](auto& p) { return oracle::ft1(p, m, k); }));
                EXPECT_EQ(library_set(make_family(FamilyKind::ft2, n, m, k)),
                          parts(n, [&](auto& p) { return oracle::ft2(p, m, k); }));
            }
        }
    }
}

TEST(FamilyOracle, PropositionAndFibonacci) {
    for (int n = 1; n <= 12; ++n) {
        for (int m = 2; m <= 4; ++m) {
            for (int k = 1; k <= n; ++k) {
                SCOPED_TRACE(testing::Message() << "n=" << n << " m=" << m << " k=" << k);
                EXPECT_EQ(library_set(make_family(FamilyKind::prop_lhs, n, m, k)),
                          comps(n, [&](auto& c) { return oracle::prop_lhs(c, m, k); }));
                EXPECT_EQ(library_set(make_family(FamilyKind::prop_rhs, n, m, k)),
                          comps(n, [&](auto& c) { return oracle::prop_rhs(c, m, k); }));
            }
        }
        EXPECT_EQ(library_set(make_family(FamilyKind::fib_odd, n)), comps(n, oracle::fib_odd));
        EXPECT_EQ(library_set(make_family(FamilyKind::fib_12, n)), comps(n, oracle::fib_12));
        EXPECT_EQ(library_set(make_family(FamilyKind::fib_gt1, n)), comps(n + 1, oracle::fib_gt1));
    }
}

TEST(Family, SpotCounts) {
    EXPECT_EQ(count_family(make_family(FamilyKind::part_not_div_m, 4, 2)), 3u);
    EXPECT_EQ(count_family(make_family(FamilyKind::part_repeat_lt_m, 4, 2)), 3u);
    EXPECT_EQ(count_family(make_family(FamilyKind::part_not_div_m, 4, 3)), 5u);
    EXPECT_EQ(count_family(make_family(FamilyKind::part_repeat_lt_m, 4, 3)), 6u);
    EXPECT_EQ(count_family(make_family(FamilyKind::ft1, 7, 1, 1)), 8u);
    EXPECT_EQ(count_family(make_family(FamilyKind::ft2, 7, 1, 1)), 8u);
    EXPECT_EQ(count_family(make_family(FamilyKind::prop_lhs, 3, 2, 2)), 1u);
    EXPECT_EQ(count_family(make_family(FamilyKind::prop_rhs, 3, 2, 2)), 1u);
}

TEST(Family, Ft1SevenOneOne) {
    const oracle::Set want{{6, 1}, {6, 6}, {6, 3}, {6, 4}, {4, 1, 1, 1}, {4, 4, 1, 1}, {4, 4, 4, 1}, {4, 4, 4, 4}};
    EXPECT_EQ(library_set(make_family(FamilyKind::ft1, 7, 1, 1)), want);
}

// the eight ft2 members at n=7, m=1, k=1
TEST(Family, Ft2SevenOneOne) {
    const oracle::Set want{{4, 3, 3, 1}, {5, 1, 1}, {4, 3, 1, 1}, {5, 4, 4},
                           {5, 3, 3},    {4, 2, 1, 1}, {5, 2, 2}, {4, 3, 2, 2}};
    EXPECT_EQ(library_set(make_family(FamilyKind::ft2, 7, 1, 1)), want);
}

TEST(Family, WorkersDoNotChangeResults) {
    const auto spec = make_family(FamilyKind::part_repeat_lt_m, 16, 3);
    const auto one = enumerate_family_ranked(spec, {kDefaultCap, 1});
    const auto four = enumerate_family_ranked(spec, {kDefaultCap, 4});
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].rank, four[i].rank);
        EXPECT_EQ(one[i].object, four[i].object);
        if (i) EXPECT_LT(one[i - 1].rank.index, one[i].rank.index);
    }
    EXPECT_EQ(count_family(spec, {kDefaultCap, 3}), one.size());
}

TEST(Family, Membership) {
    const auto h = make_family(FamilyKind::part_not_div_m, 4, 3);
    EXPECT_TRUE(member(h, Partition{2, 2, 1}));
    EXPECT_FALSE(member(h, Partition{3, 1}));
    EXPECT_FALSE(member(h, Partition{2, 2}));  // perimeter 3
    EXPECT_THROW(member(h, Composition{2, 2}), domain_error);
    const auto b = make_family(FamilyKind::munagi_b, 3, 2);
    EXPECT_TRUE(member(b, Composition{2, 2}));
}

TEST(FamilySpecText, RoundTrip) {
    for (const char* text : {"h:n=12,m=3", "ft1:n=7,m=1,k=1", "lemma-residue:n=10,m=4,R=1,3", "fib-odd:n=5"}) {
        const auto spec = parse_family_spec(text);
        EXPECT_NO_THROW(validate(spec)) << text;
        EXPECT_EQ(to_string(spec), text);
    }
    const auto spec = parse_family_spec("g", FamilySpec{FamilyKind::fib_odd, 5, 2, std::nullopt, {}});
    EXPECT_EQ(to_string(spec), "g:n=5,m=2");
}

TEST(FamilySpecText, Rejects) {
    EXPECT_THROW(parse_family_spec("nope:n=3"), domain_error);
    EXPECT_THROW(parse_family_spec("h:n=3,q=2"), domain_error);
    EXPECT_THROW(parse_family_spec("h:n=x"), domain_error);
    EXPECT_THROW(parse_family_spec("h:3"), domain_error);
    EXPECT_THROW(validate(parse_family_spec("h:n=3")), domain_error);           // m missing
    EXPECT_THROW(validate(parse_family_spec("h:n=3,m=1")), domain_error);       // m too small
    EXPECT_THROW(validate(parse_family_spec("fib-odd:n=3,m=2")), domain_error); // m unused
    EXPECT_THROW(validate(parse_family_spec("ft1:n=3,m=1")), domain_error);     // k missing
    EXPECT_THROW(validate(parse_family_spec("lemma-residue:n=5,m=4,R=3,1")), domain_error);
    EXPECT_THROW(validate(parse_family_spec("lemma-residue:n=5,m=4,R=4")), domain_error);
    EXPECT_THROW(validate(parse_family_spec("lemma-residue:n=5,m=4")), domain_error);
    EXPECT_THROW(validate(parse_family_spec("h:n=0,m=2")), domain_error);
}

TEST(Family, CapEnforced) {
    EXPECT_THROW(count_family(make_family(FamilyKind::fib_odd, 12), {10, 1}), cap_exceeded);
    EXPECT_THROW(count_family(make_family(FamilyKind::fib_gt1, 10), {10, 1}), cap_exceeded);  // substrate n+1
    EXPECT_NO_THROW(count_family(make_family(FamilyKind::fib_odd, 10), {10, 1}));
}
