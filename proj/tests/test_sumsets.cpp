#include <atomlen/sumsets.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace atomlen;

namespace {

void expect_hall_pair(Int m, const Vec& d, const HallPair& p) {
    ASSERT_EQ(static_cast<Int>(p.a.size()), m);
    ASSERT_EQ(static_cast<Int>(p.b.size()), m);
    Vec sa(p.a), sb(p.b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    for (Int i = 0; i < m; ++i) {
        EXPECT_EQ(sa[i], i);
        EXPECT_EQ(sb[i], i);
        EXPECT_EQ(mod(p.b[i] - p.a[i] - d[i], m), 0);
    }
}

// all signed permutations of (1..n) reduced mod p
std::set<Vec> signed_orbit(Int n, Int p) {
    std::set<Vec> out;
    Vec perm(n);
    for (Int i = 0; i < n; ++i) perm[i] = i + 1;
    do {
        for (Int mask = 0; mask < (Int{1} << n); ++mask) {
            Vec v(n);
            for (Int i = 0; i < n; ++i) v[i] = mod((mask >> i & 1) ? -perm[i] : perm[i], p);
            out.insert(v);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

TEST(Hall, WorkedExample) {
    auto p = hall_decompose(4, {3, 0, 2, 3});
    EXPECT_EQ(p.a, (Vec{0, 1, 2, 3}));
    EXPECT_EQ(p.b, (Vec{3, 1, 0, 2}));
}

TEST(Hall, ZeroVectorGivesIdentity) {
    auto p = hall_decompose(6, Vec(6, 0));
    EXPECT_EQ(p.a, p.b);
}

TEST(Hall, Errors) {
    EXPECT_THROW(hall_decompose(4, {1, 0, 0, 0}), Error);
    EXPECT_THROW(hall_decompose(4, {0, 0, 0}), Error);
    try {
        hall_decompose(3, {1, 1, 0});
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadSum);
    }
}

TEST(Hall, RandomZeroSum) {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 300; ++it) {
        Int m = 1 + it % 12;
        std::uniform_int_distribution<Int> dist(0, m - 1);
        Vec d(m);
        for (Int i = 0; i + 1 < m; ++i) d[i] = dist(rng);
        d[m - 1] = mod(-sum(Vec(d.begin(), d.end() - 1)), m);
        expect_hall_pair(m, d, hall_decompose(m, d));
    }
}

TEST(Sets, Basics) {
    EXPECT_EQ(difference_set({{0, 0}}, 3), (std::set<Vec>{{0, 0}}));
    auto o = build_orbit(Family::A, 2);
    EXPECT_EQ(o.elements, (std::vector<Vec>{{0, 1}, {1, 0}}));
}

TEST(Sets, SignChangeInvariance) {
    for (Int n = 2; n <= 5; ++n) {
        auto o = build_orbit(Family::A, n);
        EXPECT_EQ(sumset(o.elements, n), difference_set(o.elements, n)) << n;
    }
}

TEST(Orbit, Cardinalities) {
    for (Int n = 1; n <= 6; ++n) {
        auto o = build_orbit(Family::A, n);
        EXPECT_EQ(static_cast<Int>(o.elements.size()), factorial(n));
        for (const auto& v : o.elements) EXPECT_EQ(mod(sum(v), n), mod(n * (n + 1) / 2, n));
    }
    EXPECT_EQ(build_orbit(Family::C, 2).elements.size(), 8u);
    for (Int n : {2, 3, 5}) {
        auto o = build_orbit(Family::C, n);
        std::set<Vec> got(o.elements.begin(), o.elements.end());
        EXPECT_EQ(got, signed_orbit(n, 2 * n + 1)) << n;
    }
}

TEST(Orbit, ModFourOverride) {
    auto o = build_orbit(Family::C, 2, 4);
    EXPECT_EQ(o.elements, (std::vector<Vec>{{1, 2}, {2, 1}, {2, 3}, {3, 2}}));
}

TEST(Sumset, TypeA) {
    for (Int n = 2; n <= 6; ++n) {
        auto c = verify_sumset_equality(Family::A, n);
        EXPECT_TRUE(c.equal) << n;
        Int h = 1;
        for (Int i = 1; i < n; ++i) h *= n;
        EXPECT_EQ(c.expected_size, h);
    }
}

TEST(Sumset, TypeC) {
    EXPECT_TRUE(verify_sumset_equality(Family::C, 2).equal);
    EXPECT_TRUE(verify_sumset_equality(Family::C, 3).equal);
    auto c = verify_sumset_equality(Family::C, 2, 4);
    EXPECT_FALSE(c.equal);
    EXPECT_NE(std::find(c.missing.begin(), c.missing.end(), Vec{1, 0}), c.missing.end());
}

TEST(CWitness, Basics) {
    auto p = c_difference_witness(3, {0, 0, 0});
    EXPECT_EQ(p.w1, p.w2);
    EXPECT_THROW(c_difference_witness(4, {0, 0, 0, 0}), Error);
    p = c_difference_witness(3, {1, 1, 1});
    for (Int i = 0; i < 3; ++i) EXPECT_EQ(mod(p.w1[i] - p.w2[i], 7), 1);
}

TEST(CWitness, RandomTargets) {
    std::mt19937_64 rng(31);
    for (Int n : {2, 3, 5}) {
        Int p = 2 * n + 1;
        auto orbit = signed_orbit(n, p);
        std::uniform_int_distribution<Int> dist(0, p - 1);
        for (int it = 0; it < 100; ++it) {
            Vec a(n);
            for (Int& v : a) v = dist(rng);
            auto w = c_difference_witness(n, a);
            EXPECT_TRUE(orbit.count(reduce(w.w1, p)));
            EXPECT_TRUE(orbit.count(reduce(w.w2, p)));
            for (Int i = 0; i < n; ++i) EXPECT_EQ(mod(w.w1[i] - w.w2[i] - a[i], p), 0);
        }
    }
}
