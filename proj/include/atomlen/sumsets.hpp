#pragma once

#include "common.hpp"

#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <unordered_set>

namespace atomlen {

// vectors over Z/mZ packed as base-m integers
class ModCodec {
public:
    ModCodec(Int m, Int len) : m_(m), len_(len) {
        Wide size = 1;
        for (Int i = 0; i < len; ++i) {
            size *= m;
            require(size < (Wide{1} << 62), Errc::BudgetExceeded, "group too large to encode");
        }
        size_ = static_cast<Int>(size);
    }
    Int encode(const Vec& v) const {
        Int c = 0;
        for (Int i = len_ - 1; i >= 0; --i) c = c * m_ + mod(v[i], m_);
        return c;
    }
    Vec decode(Int c) const {
        Vec v(len_);
        for (Int i = 0; i < len_; ++i) v[i] = c % m_, c /= m_;
        return v;
    }
    Int group_size() const { return size_; }

private:
    Int m_, len_, size_ = 0;
};

inline Vec reduce(const Vec& v, Int m) {
    Vec r(v);
    for (Int& x : r) x = mod(x, m);
    return r;
}

// ---------------------------------------------------------------- Hall decomposition

struct HallPair {
    Vec a, b;
};

// a enumerates Z/mZ, b is a permutation of Z/mZ, b_i - a_i = d_i
inline HallPair hall_decompose(Int m, const Vec& d_in) {
    require(m >= 1, Errc::BadInput, "modulus must be positive");
    require(static_cast<Int>(d_in.size()) == m, Errc::BadLength, "d must have length m");
    Vec d = reduce(d_in, m);
    require(mod(sum(d), m) == 0, Errc::BadSum, "sum of d is not 0 mod m");

    Vec a(m, -1), b(m, -1);
    std::vector<char> used_a(m, 0), used_b(m, 0);

    auto options = [&](Int i) {
        Int c = 0;
        for (Int v = 0; v < m; ++v)
            if (!used_a[v] && !used_b[mod(v + d[i], m)]) ++c;
        return c;
    };

    std::function<bool(Int)> rec = [&](Int placed) -> bool {
        if (placed == m) return true;
        // most constrained position, lowest index on ties
        Int best = -1, best_c = m + 1;
        for (Int i = 0; i < m; ++i) {
            if (a[i] >= 0) continue;
            Int c = options(i);
            if (c == 0) return false;
            if (c < best_c) best = i, best_c = c;
        }
        for (Int v = 0; v < m; ++v) {
            Int w = mod(v + d[best], m);
            if (used_a[v] || used_b[w]) continue;
            a[best] = v, b[best] = w;
            used_a[v] = used_b[w] = 1;
            if (rec(placed + 1)) return true;
            used_a[v] = used_b[w] = 0;
            a[best] = b[best] = -1;
        }
        return false;
    };
    if (!rec(0)) throw Error(Errc::SearchFailed, "no Hall decomposition found");

    for (Int i = 0; i < m; ++i)
        if (mod(b[i] - a[i], m) != d[i]) throw Error(Errc::Invariant, "hall_decompose: wrong difference");
    return {a, b};
}

// ---------------------------------------------------------------- orbits and sumsets

enum class Family { A, C };

inline const char* family_name(Family f) { return f == Family::A ? "A" : "C"; }

struct OrbitSet {
    Family family = Family::A;
    Int n = 0;
    Int modulus = 0;
    std::vector<Vec> elements;   // sorted
};

inline Int default_modulus(Family f, Int n) { return f == Family::A ? n : 2 * n + 1; }

inline Int factorial(Int n) {
    Int f = 1;
    for (Int i = 2; i <= n; ++i) f = mul(f, i);
    return f;
}

// closure of (1..n) mod m under adjacent swaps (and the last sign flip for C)
inline OrbitSet build_orbit(Family f, Int n, std::optional<Int> modulus = std::nullopt) {
    require(n >= 1, Errc::BadInput, "n must be positive");
    Int m = modulus.value_or(default_modulus(f, n));
    require(m >= 1, Errc::BadInput, "modulus must be positive");
    Vec start(n);
    for (Int i = 0; i < n; ++i) start[i] = mod(i + 1, m);
    std::set<Vec> seen{start};
    std::deque<Vec> queue{start};
    while (!queue.empty()) {
        Vec v = queue.front();
        queue.pop_front();
        auto push = [&](Vec w) {
            if (seen.insert(w).second) queue.push_back(std::move(w));
        };
        for (Int i = 0; i + 1 < n; ++i) {
            Vec w = v;
            std::swap(w[i], w[i + 1]);
            push(std::move(w));
        }
        if (f == Family::C) {
            Vec w = v;
            w[n - 1] = mod(-w[n - 1], m);
            push(std::move(w));
        }
    }
    OrbitSet o{f, n, m, std::vector<Vec>(seen.begin(), seen.end())};
    if (!modulus || *modulus == default_modulus(f, n)) {
        Int expected = factorial(n);
        if (f == Family::C) expected = mul(expected, Int{1} << n);
        if (static_cast<Int>(o.elements.size()) != expected)
            throw Error(Errc::Invariant, "orbit has unexpected cardinality");
    }
    return o;
}

inline std::set<Vec> combine(const std::vector<Vec>& A, Int m, bool difference) {
    Int cap = enumeration_budget(100'000'000);
    Wide pairs = static_cast<Wide>(A.size()) * A.size();
    require(pairs <= cap, Errc::BudgetExceeded, "sumset needs " + std::to_string(static_cast<Int>(pairs)) + " pairs");
    std::set<Vec> out;
    if (A.empty()) return out;
    Int len = static_cast<Int>(A.front().size());
    ModCodec codec(m, len);
    std::unordered_set<Int> codes;
    Vec tmp(len);
    for (const Vec& u : A)
        for (const Vec& v : A) {
            for (Int i = 0; i < len; ++i) tmp[i] = difference ? u[i] - v[i] : u[i] + v[i];
            codes.insert(codec.encode(tmp));
        }
    for (Int c : codes) out.insert(codec.decode(c));
    return out;
}

inline std::set<Vec> difference_set(const std::vector<Vec>& A, Int m) { return combine(A, m, true); }
inline std::set<Vec> sumset(const std::vector<Vec>& A, Int m) { return combine(A, m, false); }

struct SumsetCertificate {
    Family family = Family::A;
    Int n = 0;
    Int modulus = 0;
    bool equal = false;
    Int expected_size = 0;
    Int found_size = 0;
    std::vector<Vec> missing;
};

// A: O - O equals the zero-sum subgroup; C: O - O equals the whole group
inline SumsetCertificate verify_sumset_equality(Family f, Int n, std::optional<Int> modulus = std::nullopt) {
    OrbitSet o = build_orbit(f, n, modulus);
    auto diff = difference_set(o.elements, o.modulus);
    ModCodec codec(o.modulus, n);
    SumsetCertificate cert;
    cert.family = f;
    cert.n = n;
    cert.modulus = o.modulus;
    for (Int c = 0; c < codec.group_size(); ++c) {
        Vec v = codec.decode(c);
        if (f == Family::A && mod(sum(v), o.modulus) != 0) continue;
        ++cert.expected_size;
        if (!diff.count(v)) cert.missing.push_back(v);
    }
    cert.found_size = static_cast<Int>(diff.size());
    cert.equal = cert.missing.empty() && cert.found_size == cert.expected_size;
    return cert;
}

// ---------------------------------------------------------------- type C witnesses

struct DifferencePair {
    Vec w1, w2;
};

// entries of an orbit element: nonzero and pairwise distinct up to sign
inline bool in_C_orbit(const Vec& v, Int n, Int p) {
    if (static_cast<Int>(v.size()) != n) return false;
    std::vector<char> seen(p, 0);
    for (Int x : v) {
        Int r = mod(x, p);
        if (r == 0 || seen[r]) return false;
        seen[r] = seen[mod(-r, p)] = 1;
    }
    return true;
}

inline DifferencePair c_difference_witness(Int n, const Vec& a_in) {
    Int p = 2 * n + 1;
    require(is_prime(p), Errc::NotPrime, "2n+1 = " + std::to_string(p) + " is not prime");
    require(static_cast<Int>(a_in.size()) == n, Errc::BadLength, "target must have length n");
    Vec a = reduce(a_in, p);
    Vec x(n, 0);
    std::vector<char> used_x(p, 0), used_y(p, 0);   // classes up to sign
    std::function<bool(Int)> rec = [&](Int i) -> bool {
        if (i == n) return true;
        for (Int v = 1; v < p; ++v) {
            Int y = mod(v - a[i], p);
            if (y == 0 || used_x[v] || used_y[y]) continue;
            x[i] = v;
            used_x[v] = used_x[p - v] = 1;
            used_y[y] = used_y[p - y] = 1;
            if (rec(i + 1)) return true;
            used_x[v] = used_x[p - v] = 0;
            used_y[y] = used_y[p - y] = 0;
        }
        return false;
    };
    if (!rec(0)) throw Error(Errc::SearchFailed, "no difference witness found");
    Vec y(n);
    for (Int i = 0; i < n; ++i) y[i] = mod(x[i] - a[i], p);
    if (!in_C_orbit(x, n, p) || !in_C_orbit(y, n, p)) throw Error(Errc::Invariant, "witness outside the orbit");
    return {x, y};
}

} // namespace atomlen
