#pragma once

#include "common.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace atomlen {

// permutation of {1..n}; images[i-1] = sigma(i)
struct FinitePermutation {
    std::vector<int> images;

    static FinitePermutation identity(int n) {
        FinitePermutation p;
        p.images.resize(n);
        std::iota(p.images.begin(), p.images.end(), 1);
        return p;
    }
    int n() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i - 1]; }

    FinitePermutation inverse() const {
        FinitePermutation p;
        p.images.resize(images.size());
        for (int i = 1; i <= n(); ++i) p.images[images[i - 1] - 1] = i;
        return p;
    }
    // (sigma . v)_{sigma(i)} = v_i
    Vec act(const Vec& v) const {
        Vec out(v.size());
        for (int i = 1; i <= n(); ++i) out[images[i - 1] - 1] = v[i - 1];
        return out;
    }
    bool is_identity() const {
        for (int i = 0; i < n(); ++i)
            if (images[i] != i + 1) return false;
        return true;
    }
    friend bool operator==(const FinitePermutation&, const FinitePermutation&) = default;
};

class AffinePermutation {
public:
    AffinePermutation() = default;

    static AffinePermutation make(Int n, Vec window) {
        require(n >= 1, Errc::BadLength, "n must be positive");
        require(static_cast<Int>(window.size()) == n, Errc::BadLength,
                "window has length " + std::to_string(window.size()) + ", expected " + std::to_string(n));
        std::vector<char> seen(n, 0);
        for (Int v : window) {
            Int r = mod(v, n);
            require(!seen[r], Errc::ResidueClash, "two window entries congruent mod " + std::to_string(n));
            seen[r] = 1;
        }
        require(sum(window) == n * (n + 1) / 2, Errc::BadSum,
                "window sum " + std::to_string(sum(window)) + " != " + std::to_string(n * (n + 1) / 2));
        AffinePermutation w;
        w.n_ = n;
        w.window_ = std::move(window);
        return w;
    }

    static AffinePermutation identity(Int n) {
        Vec w(n);
        std::iota(w.begin(), w.end(), Int{1});
        return make(n, std::move(w));
    }

    Int n() const { return n_; }
    const Vec& window() const { return window_; }

    // w(i + kn) = w(i) + kn
    Int operator()(Int i) const {
        Int k = floor_div(i - 1, n_);
        Int r = i - k * n_;
        return add(window_[r - 1], mul(k, n_));
    }

    bool is_identity() const {
        for (Int i = 0; i < n_; ++i)
            if (window_[i] != i + 1) return false;
        return true;
    }

    friend bool operator==(const AffinePermutation&, const AffinePermutation&) = default;

private:
    Int n_ = 0;
    Vec window_;
};

inline AffinePermutation make_affine(Int n, Vec window) { return AffinePermutation::make(n, std::move(window)); }

inline Int apply(const AffinePermutation& w, Int i) { return w(i); }

inline AffinePermutation compose(const AffinePermutation& u, const AffinePermutation& v) {
    require(u.n() == v.n(), Errc::RankMismatch, "compose: ranks differ");
    Vec w(u.n());
    for (Int i = 1; i <= u.n(); ++i) w[i - 1] = u(v(i));
    return make_affine(u.n(), std::move(w));
}

inline AffinePermutation inverse(const AffinePermutation& w) {
    Int n = w.n();
    Vec inv(n);
    for (Int i = 1; i <= n; ++i) {
        Int v = w(i);
        Int k = floor_div(v - 1, n);
        inv[v - k * n - 1] = i - k * n;
    }
    return make_affine(n, std::move(inv));
}

struct Decomposition {
    Vec x;                  // w = t_x . wbar
    FinitePermutation wbar;
    Vec y;                  // w = wbar . t_y, x = wbar(y)
};

inline Decomposition decompose(const AffinePermutation& w) {
    Int n = w.n();
    Decomposition d;
    d.wbar.images.resize(n);
    d.y.resize(n);
    for (Int i = 1; i <= n; ++i) {
        Int v = w(i);
        Int r = mod(v - 1, n) + 1;
        d.wbar.images[i - 1] = static_cast<int>(r);
        d.y[i - 1] = (v - r) / n;
    }
    d.x = d.wbar.act(d.y);
    return d;
}

// t_x . wbar, with t_x(i) = i + n x_i
inline AffinePermutation recompose(const Vec& x, const FinitePermutation& wbar) {
    Int n = static_cast<Int>(x.size());
    require(wbar.n() == n, Errc::RankMismatch, "recompose: ranks differ");
    Vec w(n);
    for (Int i = 1; i <= n; ++i) {
        Int j = wbar(static_cast<int>(i));
        w[i - 1] = add(j, mul(n, x[j - 1]));
    }
    return make_affine(n, std::move(w));
}

inline AffinePermutation translation(const Vec& x) {
    return recompose(x, FinitePermutation::identity(static_cast<int>(x.size())));
}

inline Int entropy(const AffinePermutation& w) {
    Int s = 0;
    for (Int i = 1; i <= w.n(); ++i) {
        Int d = sub(w(i), i);
        s = add(s, mul(d, d));
    }
    return exact_div(s, 2, "entropy: odd sum of squared displacements");
}

// 1/2 sum w_i^2 - sum i w_i + n(n+1)(2n+1)/12
inline Int atomic_length_rho(const AffinePermutation& w) {
    Int n = w.n();
    Wide acc = 0;
    for (Int i = 1; i <= n; ++i) {
        Wide v = w(i);
        acc += 6 * v * v - 12 * static_cast<Wide>(i) * v;
    }
    acc += static_cast<Wide>(n) * (n + 1) * (2 * n + 1);
    Int total = narrow(acc);
    return exact_div(total, 12, "atomic_length_rho: non-integral value");
}

// zero-sum vectors of length n with squared norm <= max_norm,
// ordered by norm then lexicographically
inline std::vector<Vec> zero_sum_vectors(Int n, Int max_norm) {
    std::vector<Vec> out;
    Vec cur(n, 0);
    Int bound = 0;
    while ((bound + 1) * (bound + 1) <= max_norm) ++bound;
    std::function<void(Int, Int, Int)> rec = [&](Int i, Int s, Int nrm) {
        if (i == n - 1) {
            Int last = -s;
            if (nrm + last * last <= max_norm) {
                cur[i] = last;
                out.push_back(cur);
            }
            return;
        }
        for (Int v = -bound; v <= bound; ++v) {
            if (nrm + v * v > max_norm) continue;
            cur[i] = v;
            rec(i + 1, s + v, nrm + v * v);
        }
    };
    if (n == 0) return out;
    rec(0, 0, 0);
    std::stable_sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return norm2(a) < norm2(b); });
    return out;
}

inline std::vector<FinitePermutation> all_permutations(int n) {
    std::vector<FinitePermutation> out;
    FinitePermutation p = FinitePermutation::identity(n);
    do out.push_back(p);
    while (std::next_permutation(p.images.begin(), p.images.end()));
    return out;
}

// every t_x . wbar with |x|^2 <= max_norm; x outer (norm, lex), wbar inner (lex)
template <class Fn>
void for_each_bounded(Int n, Int max_norm, Fn&& fn) {
    require(n >= 2, Errc::BadLength, "enumerate_bounded needs n >= 2");
    auto perms = all_permutations(static_cast<int>(n));
    for (const Vec& x : zero_sum_vectors(n, max_norm))
        for (const auto& p : perms) fn(recompose(x, p));
}

inline std::vector<AffinePermutation> enumerate_bounded(Int n, Int max_norm) {
    std::vector<AffinePermutation> out;
    for_each_bounded(n, max_norm, [&](const AffinePermutation& w) { out.push_back(w); });
    return out;
}

} // namespace atomlen
