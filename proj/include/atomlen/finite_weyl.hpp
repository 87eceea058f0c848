#pragma once

#include "common.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

namespace atomlen {

enum class Series { A, B, C, D };

inline char series_char(Series s) { return "ABCD"[static_cast<int>(s)]; }

inline Series parse_series(const std::string& s) {
    if (s == "A") return Series::A;
    if (s == "B") return Series::B;
    if (s == "C") return Series::C;
    if (s == "D") return Series::D;
    throw Error(Errc::BadInput, "unknown finite type '" + s + "'");
}

struct FiniteType {
    Series series;
    Int n;
    // ambient dimension of the epsilon realization
    Int dim() const { return series == Series::A ? n + 1 : n; }
};

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

// w(e_i) = sign_i e_{perm(i)}
struct SignedPermutation {
    FiniteType type;
    std::vector<int> perm;   // 1-based images
    std::vector<int> sign;   // +1 / -1

    RVec act(const RVec& v) const {
        RVec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[perm[i] - 1] = v[i] * sign[i];
        return out;
    }
    bool is_identity() const {
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != static_cast<int>(i) + 1 || sign[i] != 1) return false;
        return true;
    }
    friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
        return a.perm == b.perm && a.sign == b.sign;
    }
};

inline void check_type(const FiniteType& t) {
    require(t.n >= 1, Errc::BadInput, "rank must be positive");
    if (t.series == Series::D) require(t.n >= 2, Errc::BadInput, "type D needs n >= 2");
}

inline void check_ell(const FiniteType& t, Int ell) {
    check_type(t);
    Int lo = t.series == Series::D ? 2 : 1;
    require(ell >= lo && ell <= t.n, Errc::BadEll,
            "ell must lie in [" + std::to_string(lo) + ", " + std::to_string(t.n) + "]");
}

// simple roots as epsilon vectors (columns of the change of basis)
inline RMat simple_roots(const FiniteType& t) {
    check_type(t);
    const Int n = t.n, d = t.dim();
    RMat roots(n, RVec(d, 0));
    for (Int i = 0; i + 1 < n; ++i) roots[i][i] = 1, roots[i][i + 1] = -1;
    switch (t.series) {
    case Series::A: roots[n - 1][n - 1] = 1, roots[n - 1][n] = -1; break;
    case Series::B: roots[n - 1][n - 1] = 1; break;
    case Series::C: roots[n - 1][n - 1] = 2; break;
    case Series::D:
        roots[n - 1] = RVec(d, 0);
        roots[n - 1][n - 2] = 1, roots[n - 1][n - 1] = 1;
        break;
    }
    return roots;
}

inline RMat invert(RMat m) {
    const std::size_t n = m.size();
    RMat inv(n, RVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == Rational(0)) ++p;
        require(p < n, Errc::Invariant, "singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational f = m[c][c];
        for (std::size_t j = 0; j < n; ++j) m[c][j] /= f, inv[c][j] /= f;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == Rational(0)) continue;
            Rational g = m[r][c];
            for (std::size_t j = 0; j < n; ++j) m[r][j] -= g * m[c][j], inv[r][j] -= g * inv[c][j];
        }
    }
    return inv;
}

class RootSystem {
public:
    explicit RootSystem(FiniteType t) : type_(t), roots_(simple_roots(t)) {
        const Int n = t.n;
        RMat square(n, RVec(n));
        for (Int r = 0; r < n; ++r)
            for (Int c = 0; c < n; ++c) square[r][c] = roots_[c][r];
        inv_ = invert(square);
    }

    const FiniteType& type() const { return type_; }

    // exact coordinates on the simple roots; throws if v is outside their span
    RVec to_roots(const RVec& v) const {
        const Int n = type_.n, d = type_.dim();
        RVec c(n, 0);
        for (Int r = 0; r < n; ++r)
            for (Int k = 0; k < n; ++k) c[r] += inv_[r][k] * v[k];
        for (Int k = 0; k < d; ++k) {
            Rational back = 0;
            for (Int r = 0; r < n; ++r) back += c[r] * roots_[r][k];
            if (back != v[k]) throw Error(Errc::Invariant, "vector is not in the root span");
        }
        return c;
    }

    RVec from_roots(const RVec& c) const {
        RVec v(type_.dim(), 0);
        for (Int r = 0; r < type_.n; ++r)
            for (Int k = 0; k < type_.dim(); ++k) v[k] += c[r] * roots_[r][k];
        return v;
    }

private:
    FiniteType type_;
    RMat roots_;
    RMat inv_;
};

inline Rational height(const RVec& roots_coords) {
    Rational h = 0;
    for (const auto& c : roots_coords) h += c;
    return h;
}

// fundamental weight omega_i in epsilon coordinates
inline RVec omega_epsilon(const FiniteType& t, Int i) {
    check_type(t);
    require(i >= 1 && i <= t.n, Errc::BadIndex, "weight index out of range");
    const Int n = t.n, d = t.dim();
    RVec v(d, 0);
    switch (t.series) {
    case Series::A:
        for (Int k = 0; k < d; ++k) v[k] = Rational(k < i ? 1 : 0) - Rational(i, n + 1);
        break;
    case Series::B:
        for (Int k = 0; k < i; ++k) v[k] = i == n ? Rational(1, 2) : Rational(1);
        break;
    case Series::C:
        for (Int k = 0; k < i; ++k) v[k] = 1;
        break;
    case Series::D:
        if (i <= n - 2) {
            for (Int k = 0; k < i; ++k) v[k] = 1;
        } else {
            for (Int k = 0; k < n; ++k) v[k] = Rational(1, 2);
            if (i == n - 1) v[n - 1] = Rational(-1, 2);
        }
        break;
    }
    return v;
}

// omega_i on the simple roots from the closed expansions
inline RVec omega_in_roots(const FiniteType& t, Int i) {
    check_type(t);
    require(i >= 1 && i <= t.n, Errc::BadIndex, "weight index out of range");
    const Int n = t.n;
    RVec c(n, 0);
    switch (t.series) {
    case Series::A:
        for (Int j = 1; j <= n; ++j)
            c[j - 1] = j <= i ? Rational(j * (n - i + 1), n + 1) : Rational(i * (n - j + 1), n + 1);
        break;
    case Series::B:
        for (Int j = 1; j <= n; ++j) c[j - 1] = i == n ? Rational(j, 2) : Rational(std::min(i, j));
        break;
    case Series::C:
        for (Int j = 1; j <= n; ++j) c[j - 1] = std::min(i, j);
        c[n - 1] = Rational(i, 2);
        break;
    case Series::D:
        if (i < n - 1) {
            for (Int j = 1; j <= n - 2; ++j) c[j - 1] = std::min(i, j);
            c[n - 2] = c[n - 1] = Rational(i, 2);
        } else {
            for (Int j = 1; j <= n - 2; ++j) c[j - 1] = Rational(j, 2);
            c[n - 2] = Rational(i == n - 1 ? n : n - 2, 4);
            c[n - 1] = Rational(i == n - 1 ? n - 2 : n, 4);
        }
        break;
    }
    return c;
}

// rho_l = omega_n + ... + omega_{n-l+1}
inline RVec rho_truncated(const FiniteType& t, Int ell) {
    check_ell(t, ell);
    RVec v(t.dim(), 0);
    for (Int i = t.n - ell + 1; i <= t.n; ++i) {
        RVec w = omega_epsilon(t, i);
        for (Int k = 0; k < t.dim(); ++k) v[k] += w[k];
    }
    return v;
}

inline SignedPermutation identity_element(const FiniteType& t) {
    SignedPermutation w{t, std::vector<int>(t.dim()), std::vector<int>(t.dim(), 1)};
    std::iota(w.perm.begin(), w.perm.end(), 1);
    return w;
}

inline SignedPermutation w0_action(const FiniteType& t) {
    check_type(t);
    SignedPermutation w = identity_element(t);
    const int d = static_cast<int>(t.dim());
    switch (t.series) {
    case Series::A:
        for (int i = 0; i < d; ++i) w.perm[i] = d - i;
        break;
    case Series::B:
    case Series::C:
        std::fill(w.sign.begin(), w.sign.end(), -1);
        break;
    case Series::D:
        std::fill(w.sign.begin(), w.sign.end(), -1);
        if (t.n % 2 == 1) w.sign[d - 1] = 1;
        break;
    }
    return w;
}

inline Int group_order(const FiniteType& t) {
    Int f = 1;
    for (Int i = 2; i <= t.dim(); ++i) f = mul(f, i);
    if (t.series == Series::B || t.series == Series::C) f = mul(f, Int{1} << t.n);
    if (t.series == Series::D) f = mul(f, Int{1} << (t.n - 1));
    return f;
}

template <class Fn>
void for_each_element(const FiniteType& t, Fn&& fn) {
    check_type(t);
    Int budget = enumeration_budget(1'000'000);
    require(group_order(t) <= budget, Errc::BudgetExceeded,
            "|W| = " + std::to_string(group_order(t)) + " exceeds the enumeration budget");
    SignedPermutation w = identity_element(t);
    const int d = static_cast<int>(t.dim());
    do {
        if (t.series == Series::A) {
            fn(w);
            continue;
        }
        for (Int mask = 0; mask < (Int{1} << d); ++mask) {
            if (t.series == Series::D && __builtin_popcountll(static_cast<unsigned long long>(mask)) % 2) continue;
            for (int i = 0; i < d; ++i) w.sign[i] = (mask >> i) & 1 ? -1 : 1;
            fn(w);
        }
    } while (std::next_permutation(w.perm.begin(), w.perm.end()));
}

inline std::vector<RVec> positive_roots(const FiniteType& t) {
    const Int n = t.n, d = t.dim();
    std::vector<RVec> out;
    auto e = [&](Int i, Int j, int si, int sj) {
        RVec v(d, 0);
        v[i] += si;
        if (j >= 0) v[j] += sj;
        out.push_back(v);
    };
    for (Int i = 0; i < d; ++i)
        for (Int j = i + 1; j < d; ++j) {
            e(i, j, 1, -1);
            if (t.series != Series::A) e(i, j, 1, 1);
        }
    if (t.series == Series::B)
        for (Int i = 0; i < n; ++i) e(i, -1, 1, 0);
    if (t.series == Series::C)
        for (Int i = 0; i < n; ++i) e(i, -1, 2, 0);
    return out;
}

// Coxeter length = number of positive roots sent to negative roots
inline Int coxeter_length(const SignedPermutation& w, const RootSystem& rs) {
    Int c = 0;
    for (const RVec& r : positive_roots(rs.type())) {
        RVec img = w.act(r);
        RVec coords = rs.to_roots(img);
        if (height(coords) < Rational(0)) ++c;
    }
    return c;
}

// ht(rho_l - w rho_l)
inline Int atomic_length_finite(const RootSystem& rs, Int ell, const SignedPermutation& w) {
    const FiniteType& t = rs.type();
    RVec rho = rho_truncated(t, ell);
    RVec img = w.act(rho);
    RVec diff(t.dim());
    for (Int k = 0; k < t.dim(); ++k) diff[k] = rho[k] - img[k];
    Rational h = height(rs.to_roots(diff));
    require(h.denominator() == 1 && h >= Rational(0), Errc::Invariant, "atomic length is not a nonnegative integer");
    return h.numerator();
}

inline Int atomic_length_finite(const FiniteType& t, Int ell, const SignedPermutation& w) {
    return atomic_length_finite(RootSystem(t), ell, w);
}

inline Int b_bound(const FiniteType& t, Int ell) {
    check_ell(t, ell);
    const Int n = t.n, l = ell;
    switch (t.series) {
    case Series::A: return exact_div(l * (l + 1) * (3 * n - 2 * l + 2), 6);
    case Series::B: return exact_div(3 * n * (n + 1) * (2 * l - 1) - 2 * l * (l * l - 1), 6);
    case Series::C: return exact_div((6 * n * n - 1) * l - l * l * (2 * l - 3), 6);
    case Series::D: return exact_div((l - 1) * (3 * n * n - 3 * n - l * (l - 2)), 3);
    }
    return 0;
}

// interval iff n != 2, or n = 2 with ell in {1, 3}
inline bool saturation_predicted(const FiniteType& t, Int ell) { return t.n != 2 || ell == 1 || ell == 3; }

struct SaturationResult {
    FiniteType type;
    Int ell = 0;
    Int b = 0;
    Int image_min = 0;
    Int image_max = 0;
    bool is_interval = false;
    bool predicted = false;
    Int elements = 0;
    std::vector<Int> image;
    std::vector<Int> missing;   // gaps in [0, b]
};

inline SaturationResult saturation_check(const FiniteType& t, Int ell, unsigned threads = default_threads()) {
    check_ell(t, ell);
    RootSystem rs(t);
    std::vector<SignedPermutation> elems;
    for_each_element(t, [&](const SignedPermutation& w) { elems.push_back(w); });
    std::vector<Int> values(elems.size());
    parallel_for(elems.size(), threads, [&](std::size_t i) { values[i] = atomic_length_finite(rs, ell, elems[i]); });
    std::set<Int> img(values.begin(), values.end());

    SaturationResult r;
    r.type = t;
    r.ell = ell;
    r.b = b_bound(t, ell);
    r.elements = static_cast<Int>(elems.size());
    r.image.assign(img.begin(), img.end());
    r.image_min = *img.begin();
    r.image_max = *img.rbegin();
    for (Int k = 0; k <= r.b; ++k)
        if (!img.count(k)) r.missing.push_back(k);
    r.is_interval = r.image_min == 0 && r.image_max == r.b && r.missing.empty();
    r.predicted = saturation_predicted(t, ell);
    return r;
}

inline Int brute_force_max(const FiniteType& t, Int ell) {
    RootSystem rs(t);
    Int best = 0;
    for_each_element(t, [&](const SignedPermutation& w) { best = std::max(best, atomic_length_finite(rs, ell, w)); });
    return best;
}

} // namespace atomlen
