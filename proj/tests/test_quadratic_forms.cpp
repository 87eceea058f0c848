#include <atomlen/affine_permutation.hpp>
#include <atomlen/quadratic_forms.hpp>

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace atomlen;

namespace {

// every integer vector of length n in [-R, R]^n, lexicographic
template <class Fn>
void for_each_box(Int n, Int R, Fn&& fn) {
    Vec x(n, -R);
    for (;;) {
        fn(x);
        Int i = n - 1;
        while (i >= 0 && x[i] == R) x[i--] = -R;
        if (i < 0) return;
        ++x[i];
    }
}

Vec random_window(std::mt19937_64& rng, Int n) {
    std::uniform_int_distribution<Int> coord(-3, 3);
    Vec x(n);
    Int s = 0;
    for (Int i = 0; i + 1 < n; ++i) s += x[i] = coord(rng);
    x[n - 1] = -s;
    FinitePermutation p = FinitePermutation::identity(static_cast<int>(n));
    std::shuffle(p.images.begin(), p.images.end(), rng);
    return recompose(x, p).window();
}

// q(x) = sum_{i <= j} x_i x_j computed term by term
Int q_terms(const Vec& x) {
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i; j < x.size(); ++j) s += x[i] * x[j];
    return s;
}

} // namespace

TEST(Forms, KnownValues) {
    EXPECT_EQ(eval_P({1, 2, 3, 4}), 0);
    EXPECT_EQ(eval_P({3, 0}), 4);
    EXPECT_EQ(eval_P({2, 1, 3}), 1);
    EXPECT_EQ(eval_Q({0, 0, 0}), Rational(0));
    EXPECT_EQ(eval_q({5}), 25);
    EXPECT_EQ(eval_q({1, 1}), 3);
    EXPECT_EQ(eval_q({}), 0);
}

TEST(Forms, QMatchesTermExpansion) {
    for_each_box(3, 3, [](const Vec& x) { EXPECT_EQ(eval_q(x), q_terms(x)); });
}

TEST(Maps, Examples) {
    EXPECT_EQ(map_C({1, 2, 3}), Vec(3, 0));
    EXPECT_EQ(map_C({3, 0}), (Vec{2, -2}));
    EXPECT_EQ(eval_Q({2, -2}), Rational(4));
    EXPECT_EQ(map_pr({2, -2}), (Vec{2}));
    EXPECT_EQ(eval_q({2}), 4);
    EXPECT_THROW(map_C({2, 2}), Error);
    EXPECT_THROW(map_pr({1, 1}), Error);
}

TEST(Maps, DiagramCommutes) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 2000; ++it) {
        Int n = 2 + it % 6;
        Vec y = random_window(rng, n);
        Vec x = map_C(y);
        Vec z = map_pr(x);
        Int p = eval_P(y);
        EXPECT_EQ(eval_Q(x), Rational(p));
        EXPECT_EQ(eval_q(z), p);
        EXPECT_EQ(map_C_inv(x), y);
        EXPECT_EQ(map_pr_inv(z), x);
    }
}

TEST(Domains, Examples) {
    EXPECT_TRUE(member({DomainKind::Delta_n, 3}, {0, 0, 0}));
    EXPECT_TRUE(member({DomainKind::Delta_n, 2}, {1, -1}));
    EXPECT_FALSE(member({DomainKind::D_n, 2}, {2, 2}));
    EXPECT_TRUE(member({DomainKind::D_n, 2}, {3, 0}));
    EXPECT_FALSE(member({DomainKind::Q_n, 3}, {1, 0, 0}));
}

// X_n must be exactly the projection of Delta_n
TEST(Domains, XnIsProjectionOfDelta) {
    for (Int n = 2; n <= 5; ++n)
        for_each_box(n - 1, 4, [&](const Vec& v) {
            Vec full(v);
            full.push_back(-sum(v));
            EXPECT_EQ(member({DomainKind::X_n, n}, v), member({DomainKind::Delta_n, n}, full)) << to_csv(v);
        });
}

TEST(Represent, Basics) {
    auto job = job_Q_delta(5, 30);
    auto x = represent(job.space, Rational(0));
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, Vec(5, 0));
    EXPECT_FALSE(represent(job.space, Rational(1, 3)));
}

TEST(Represent, S290WithinRadiusEight) {
    auto r = q_checklist_scan(5, S290(), 8, "S290", {1});
    EXPECT_EQ(r.entries.size(), 29u);
    EXPECT_TRUE(r.all_witness());
    for (const auto& e : r.entries) EXPECT_EQ(Rational(q_terms(e.witness)), e.k);
}

TEST(Represent, S15IsSubsetOfS290) {
    for (Int v : S15()) EXPECT_NE(std::find(S290().begin(), S290().end(), v), S290().end());
}

// the scan witness is the lexicographically smallest vector in the box
TEST(Scan, WitnessesMatchBruteForce) {
    for (Int n = 3; n <= 5; ++n) {
        const Int R = 4, N = 30;
        std::map<Int, Vec> first;
        for_each_box(n, R, [&](const Vec& x) {
            if (!member({DomainKind::Delta_n, n}, x)) return;
            Rational q = eval_Q(x);
            if (q.denominator() != 1 || q.numerator() > N) return;
            first.emplace(q.numerator(), x);
        });
        auto r = universality_scan_Q_delta(n, N, R, {2});
        for (const auto& e : r.entries) {
            auto it = first.find(e.k.numerator());
            if (it == first.end()) {
                EXPECT_NE(e.status, Status::Witness) << "n=" << n << " k=" << e.k;
            } else {
                ASSERT_EQ(e.status, Status::Witness) << "n=" << n << " k=" << e.k;
                EXPECT_EQ(e.witness, it->second);
            }
        }
    }
}

TEST(Scan, RhoMatchesQDelta) {
    auto rho = universality_scan_rho(5, 60, 12, {1});
    auto q = universality_scan_Q_delta(5, 60, 12, {1});
    for (std::size_t i = 0; i < rho.entries.size(); ++i) {
        EXPECT_EQ(rho.entries[i].status, q.entries[i].status);
        if (rho.entries[i].status == Status::Witness) {
            EXPECT_EQ(Rational(eval_P(rho.entries[i].witness)), rho.entries[i].k);
        }
    }
}

TEST(Scan, SmallRankNotUniversal) {
    auto r3 = universality_scan_Q_delta(3, 150, 20);
    for (const auto& e : r3.entries)
        if (e.k.numerator() % 3 == 2) {
            EXPECT_EQ(e.status, Status::ModularObstruction);
            EXPECT_EQ(e.modulus, 3);
            EXPECT_EQ(e.residue, 2);
        }
    auto r4 = universality_scan_Q_delta(4, 150, 20);
    ASSERT_NE(r4.at(14), nullptr);
    EXPECT_EQ(r4.at(14)->status, Status::ModularObstruction);
    auto r2 = universality_scan_Q_delta(2, 150, 20);
    EXPECT_FALSE(r2.all_witness());
}

TEST(Scan, FreeQTwoVariables) {
    std::set<Int> values;
    for_each_box(2, 12, [&](const Vec& x) { values.insert(q_terms(x)); });
    auto r = universality_scan_q_free(3, 40, 6, {1});
    for (const auto& e : r.entries) {
        Int k = e.k.numerator();
        EXPECT_EQ(e.status == Status::Witness, values.count(k) == 1) << k;
        if (k % 3 == 2) {
            EXPECT_EQ(e.status, Status::ModularObstruction);
            EXPECT_EQ(e.modulus, 3);
        }
    }
}

TEST(Obstruction, AttainedClasses) {
    EXPECT_EQ(attained_classes(q_model(2), 3), (std::set<Int>{0, 1}));
    EXPECT_EQ(attained_classes(q_model(3), 1), (std::set<Int>{0}));

    auto c32 = attained_classes(q_model(3), 32);
    std::set<Int> miss32;
    for (Int r = 0; r < 32; ++r)
        if (!c32.count(r)) miss32.insert(r);
    EXPECT_EQ(miss32, (std::set<Int>{14, 30}));

    auto c128 = attained_classes(q_model(3), 128);
    std::set<Int> miss128;
    for (Int r = 0; r < 128; ++r)
        if (!c128.count(r)) miss128.insert(r);
    EXPECT_EQ(miss128, (std::set<Int>{14, 30, 46, 56, 62, 78, 94, 110, 120, 126}));
}

TEST(Obstruction, MonotoneUnderDivisibility) {
    auto c64 = attained_classes(q_model(3), 64);
    for (Int d : {2, 4, 8, 16, 32}) {
        std::set<Int> reduced;
        for (Int r : c64) reduced.insert(r % d);
        EXPECT_EQ(reduced, attained_classes(q_model(3), d)) << d;
    }
}

TEST(Obstruction, FourVariablesAttainEverything) {
    for (Int m : {2, 3, 4, 5, 8, 16}) EXPECT_EQ(attained_classes(q_model(4), m).size(), static_cast<std::size_t>(m));
}

TEST(Report, ThreadCountDoesNotChangeOutput) {
    auto a = universality_scan_Q_delta(4, 80, 15, {1});
    auto b = universality_scan_Q_delta(4, 80, 15, {4});
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].status, b.entries[i].status);
        EXPECT_EQ(a.entries[i].witness, b.entries[i].witness);
        EXPECT_EQ(a.entries[i].modulus, b.entries[i].modulus);
    }
}
