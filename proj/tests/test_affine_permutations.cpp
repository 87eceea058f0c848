#include <atomlen/affine_permutation.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace atomlen;

namespace {

// sum of heights j - i over affine inversions (i <= n, i < j, w(i) > w(j))
Int inversion_height_sum(const AffinePermutation& w) {
    const Int n = w.n();
    Int lo = 0, hi = 0;
    for (Int i = 1; i <= n; ++i) {
        lo = std::min(lo, w(i) - i);
        hi = std::max(hi, w(i) - i);
    }
    Int total = 0;
    for (Int i = 1; i <= n; ++i)
        for (Int j = i + 1; j <= i + (hi - lo) + 1; ++j)
            if (w(i) > w(j)) total += j - i;
    return total;
}

Int half_sq_displacement(const AffinePermutation& w) {
    Int s = 0;
    for (Int i = 1; i <= w.n(); ++i) s += (w(i) - i) * (w(i) - i);
    return s / 2;
}

AffinePermutation random_element(std::mt19937_64& rng, Int n, Int spread) {
    std::uniform_int_distribution<Int> coord(-spread, spread);
    Vec x(n);
    Int s = 0;
    for (Int i = 0; i + 1 < n; ++i) s += x[i] = coord(rng);
    x[n - 1] = -s;
    FinitePermutation p = FinitePermutation::identity(static_cast<int>(n));
    std::shuffle(p.images.begin(), p.images.end(), rng);
    return recompose(x, p);
}

} // namespace

TEST(MakeAffine, AcceptsValidWindows) {
    EXPECT_TRUE(make_affine(3, {1, 2, 3}).is_identity());
    EXPECT_EQ(make_affine(2, {3, 0}).window(), (Vec{3, 0}));
}

TEST(MakeAffine, RejectsBadWindows) {
    auto code = [](Int n, Vec w) {
        try {
            make_affine(n, w);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::Invariant;
    };
    EXPECT_EQ(code(2, {2, 2}), Errc::ResidueClash);
    EXPECT_EQ(code(2, {1, 4}), Errc::BadSum);
    EXPECT_EQ(code(3, {1, 2}), Errc::BadLength);
}

TEST(Apply, PeriodicExtension) {
    auto id = AffinePermutation::identity(3);
    EXPECT_EQ(apply(id, 7), 7);
    auto w = make_affine(2, {3, 0});
    EXPECT_EQ(apply(w, 3), 5);
    EXPECT_EQ(apply(w, 0), -2);
    EXPECT_EQ(apply(w, -7), w(1) - 8);
}

TEST(Apply, BijectiveOnARange) {
    auto w = make_affine(4, {6, -3, 4, 3});
    std::set<Int> img;
    for (Int i = -40; i < 40; ++i) img.insert(w(i));
    EXPECT_EQ(img.size(), 80u);
}

TEST(Group, ComposeAndInverse) {
    auto w = make_affine(2, {3, 0});
    auto id = AffinePermutation::identity(2);
    EXPECT_EQ(compose(id, w).window(), w.window());
    EXPECT_TRUE(inverse(id).is_identity());
    EXPECT_TRUE(compose(w, inverse(w)).is_identity());
    EXPECT_THROW(compose(w, AffinePermutation::identity(3)), Error);

    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        Int n = 2 + it % 5;
        auto u = random_element(rng, n, 3), v = random_element(rng, n, 3);
        auto uv = compose(u, v);
        for (Int i = -2 * n; i <= 2 * n; ++i) EXPECT_EQ(uv(i), u(v(i)));
        EXPECT_TRUE(compose(inverse(u), u).is_identity());
    }
}

TEST(Decompose, SmallCases) {
    auto d = decompose(AffinePermutation::identity(4));
    EXPECT_EQ(d.x, Vec(4, 0));
    EXPECT_TRUE(d.wbar.is_identity());

    // w(i) = wbar(i) + n y_i with wbar = id, y = (1,-1)
    d = decompose(make_affine(2, {3, 0}));
    EXPECT_EQ(d.x, (Vec{1, -1}));
    EXPECT_EQ(d.y, (Vec{1, -1}));
    EXPECT_TRUE(d.wbar.is_identity());

    auto t = translation({1, 0, 0, -1});
    EXPECT_EQ(t.window(), (Vec{5, 2, 3, 0}));
    d = decompose(t);
    EXPECT_EQ(d.x, (Vec{1, 0, 0, -1}));
    EXPECT_TRUE(d.wbar.is_identity());
}

TEST(Decompose, RoundTrip) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 500; ++it) {
        Int n = 2 + it % 6;
        auto w = random_element(rng, n, 4);
        auto d = decompose(w);
        EXPECT_EQ(recompose(d.x, d.wbar).window(), w.window());
        EXPECT_EQ(sum(d.x), 0);
        // w = wbar . t_y
        for (Int i = 1; i <= n; ++i) EXPECT_EQ(w(i), d.wbar(static_cast<int>(i)) + n * d.y[i - 1]);
    }
}

TEST(Entropy, KnownValues) {
    EXPECT_EQ(entropy(AffinePermutation::identity(5)), 0);
    EXPECT_EQ(entropy(make_affine(3, {2, 1, 3})), 1);
    EXPECT_EQ(entropy(make_affine(2, {3, 0})), 4);
    EXPECT_EQ(atomic_length_rho(AffinePermutation::identity(5)), 0);
    EXPECT_EQ(atomic_length_rho(make_affine(2, {3, 0})), 4);
}

TEST(Entropy, MatchesInversionHeights) {
    for (Int n = 2; n <= 4; ++n)
        for_each_bounded(n, 8, [&](const AffinePermutation& w) {
            Int h = inversion_height_sum(w);
            EXPECT_EQ(entropy(w), h) << to_csv(w.window());
            EXPECT_EQ(atomic_length_rho(w), h) << to_csv(w.window());
        });
}

TEST(Entropy, SampledProperties) {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 1000; ++it) {
        Int n = 2 + it % 6;
        auto w = random_element(rng, n, 3);
        EXPECT_EQ(entropy(w), half_sq_displacement(w));
        EXPECT_EQ(entropy(w), entropy(inverse(w)));
        EXPECT_EQ(entropy(w) == 0, w.is_identity());
    }
}

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate_bounded(2, 0).size(), 2u);
    EXPECT_EQ(enumerate_bounded(3, 2).size(), 42u);
    std::set<Vec> seen;
    for (const auto& w : enumerate_bounded(4, 6)) EXPECT_TRUE(seen.insert(w.window()).second);
}

TEST(Enumerate, OrderIsByNormThenLex) {
    auto xs = zero_sum_vectors(3, 6);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        Int a = norm2(xs[i - 1]), b = norm2(xs[i]);
        EXPECT_TRUE(a < b || (a == b && xs[i - 1] < xs[i]));
    }
}

TEST(Enumerate, EntropyImageCoversInitialSegment) {
    std::vector<char> hit(201, 0);
    for_each_bounded(5, 60, [&](const AffinePermutation& w) {
        Int e = entropy(w);
        if (e <= 200) hit[e] = 1;
    });
    for (Int k = 0; k <= 200; ++k) EXPECT_TRUE(hit[k]) << k;
}
