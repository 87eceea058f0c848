#pragma once

#include "affine_permutation.hpp"
#include "common.hpp"
#include "finite_weyl.hpp"
#include "quadratic_forms.hpp"

namespace atomlen {

// ---------------------------------------------------------------- type C inside A_{2n}

struct TypeCAffineElement {
    Int n = 0;
    Vec reduced;   // w(1), ..., w(n)
};

// full window of rank 2n+1: w(2n+1-i) = 2n+1-w(i), w(2n+1) = 2n+1
inline AffinePermutation lift_to_A(const TypeCAffineElement& e) {
    const Int n = e.n, N = 2 * n + 1;
    require(static_cast<Int>(e.reduced.size()) == n, Errc::BadLength, "reduced window must have length n");
    for (Int v : e.reduced)
        require(mod(v, N) != 0, Errc::MirrorViolation, "w(i) = 0 mod 2n+1 collides with the fixed point");
    Vec full(N);
    for (Int i = 1; i <= n; ++i) {
        full[i - 1] = e.reduced[i - 1];
        full[N - i - 1] = N - e.reduced[i - 1];
    }
    full[N - 1] = N;
    try {
        return make_affine(N, std::move(full));
    } catch (const Error& err) {
        throw Error(Errc::MirrorViolation, err.what());
    }
}

inline bool member_DeltaC(Int n, const Vec& x) {
    if (static_cast<Int>(x.size()) != n) return false;
    const Int p = 2 * n + 1;
    for (Int i = 1; i <= n; ++i) {
        Int a = mod(x[i - 1] + i, p);
        if (a == 0) return false;
        for (Int j = i + 1; j <= n; ++j) {
            Int b = mod(x[j - 1] + j, p);
            if (a == b || a == mod(-b, p)) return false;
        }
    }
    return true;
}

inline TypeCAffineElement element_of_DeltaC(Int n, const Vec& x) {
    require(member_DeltaC(n, x), Errc::DomainViolation, "x is not in Delta_n^C");
    TypeCAffineElement e{n, x};
    for (Int i = 0; i < n; ++i) e.reduced[i] += i + 1;
    return e;
}

inline Int entropy_C(Int n, const Vec& x) {
    require(member_DeltaC(n, x), Errc::DomainViolation, "x is not in Delta_n^C");
    return norm2(x);
}

inline ScanJob job_deltaC(Int n, Int R) {
    ScanJob j;
    auto& sp = j.space;
    const Int p = 2 * n + 1;
    sp.dim = static_cast<int>(n);
    sp.A = 1;
    sp.B = filled(n, 0);
    sp.scale = 1;
    sp.lo = filled(n, -R);
    sp.hi = filled(n, R);
    sp.accept = [p](const Vec& x, int len) {
        Int a = mod(x[len - 1] + len, p);
        if (a == 0) return false;
        for (int j = 1; j < len; ++j) {
            Int b = mod(x[j - 1] + j, p);
            if (a == b || a == mod(-b, p)) return false;
        }
        return true;
    };
    j.reevaluate = [n](const Vec& x) { return Rational(entropy_C(n, x)); };
    return j;
}

inline UniversalityReport scan_deltaC(Int n, Int N, Int R, const ScanOptions& opt = {}) {
    require(n >= 1, Errc::BadInput, "n must be positive");
    UniversalityReport meta;
    meta.form = "sum x_i^2";
    meta.domain = "Delta_n^C";
    meta.n = n;
    meta.max_k = N;
    meta.radius = R;
    return run_scan(job_deltaC(n, R), integer_targets(N), meta, opt);
}

// ---------------------------------------------------------------- lattices of the classical affine types

enum class AffineType { B1, C1, D1, A2n_1, A2n, D2 };

inline const std::vector<AffineType>& all_affine_types() {
    static const std::vector<AffineType> t{AffineType::B1, AffineType::C1, AffineType::D1,
                                           AffineType::A2n_1, AffineType::A2n, AffineType::D2};
    return t;
}

inline std::string affine_name(AffineType t) {
    switch (t) {
    case AffineType::B1: return "B1";
    case AffineType::C1: return "C1";
    case AffineType::D1: return "D1";
    case AffineType::A2n_1: return "A2n-1";
    case AffineType::A2n: return "A2n";
    case AffineType::D2: return "D2";
    }
    return "?";
}

inline AffineType parse_affine_type(const std::string& s) {
    for (AffineType t : all_affine_types())
        if (affine_name(t) == s) return t;
    throw Error(Errc::BadInput, "unknown affine type '" + s + "' (expected B1, C1, D1, A2n-1, A2n or D2)");
}

enum class LatticeKind { EvenSum, Even, Full };   // Z_0^n, (2Z)^n, Z^n

struct AffineLatticeSpec {
    AffineType type;
    Int n;
    Series finite;     // underlying finite type
    LatticeKind lattice;
    Int denom;         // half_norm = |x|_2^2 / denom
    Int h;             // Coxeter number
};

inline AffineLatticeSpec lattice_spec(AffineType t, Int n) {
    switch (t) {
    case AffineType::B1: return {t, n, Series::B, LatticeKind::EvenSum, 2, 2 * n};
    case AffineType::C1: return {t, n, Series::C, LatticeKind::Even, 4, 2 * n};
    case AffineType::D1: return {t, n, Series::D, LatticeKind::EvenSum, 2, 2 * n - 2};
    case AffineType::A2n_1: return {t, n, Series::C, LatticeKind::EvenSum, 2, 2 * n - 1};
    case AffineType::A2n: return {t, n, Series::C, LatticeKind::Full, 2, 2 * n + 1};
    case AffineType::D2: return {t, n, Series::B, LatticeKind::Full, 1, n + 1};
    }
    throw Error(Errc::BadInput, "unknown affine type");
}

inline bool lattice_member(const AffineLatticeSpec& s, const Vec& x) {
    if (static_cast<Int>(x.size()) != s.n) return false;
    switch (s.lattice) {
    case LatticeKind::EvenSum: return mod(sum(x), 2) == 0;
    case LatticeKind::Even:
        for (Int v : x)
            if (mod(v, 2)) return false;
        return true;
    case LatticeKind::Full: return true;
    }
    return false;
}

inline Rational half_norm(const AffineLatticeSpec& s, const Vec& x) {
    require(static_cast<Int>(x.size()) == s.n, Errc::BadLength, "vector length differs from n");
    return Rational(norm2(x), s.denom);
}

inline ScanJob job_lattice(const AffineLatticeSpec& s, Int R) {
    ScanJob j;
    auto& sp = j.space;
    sp.dim = static_cast<int>(s.n);
    sp.A = 1;
    sp.B = filled(s.n, 0);
    sp.scale = s.denom;
    sp.lo = filled(s.n, -R);
    sp.hi = filled(s.n, R);
    if (s.lattice == LatticeKind::Even) sp.accept = [](const Vec& x, int len) { return mod(x[len - 1], 2) == 0; };
    if (s.lattice == LatticeKind::EvenSum) sp.complete = [](const Vec& x) { return mod(sum(x), 2) == 0; };
    j.reevaluate = [s](const Vec& x) {
        if (!lattice_member(s, x)) throw Error(Errc::Invariant, "witness outside the lattice");
        return half_norm(s, x);
    };
    return j;
}

inline UniversalityReport norm_universality_scan(const AffineLatticeSpec& s, Int N, Int R, const ScanOptions& opt = {}) {
    require(s.n >= 1, Errc::BadInput, "n must be positive");
    UniversalityReport meta;
    meta.form = "half_norm";
    meta.domain = "M(" + affine_name(s.type) + ")";
    meta.n = s.n;
    meta.max_k = N;
    meta.radius = R;
    meta.half_grid = s.type == AffineType::A2n;
    auto targets = meta.half_grid ? half_targets(N) : integer_targets(N);
    return run_scan(job_lattice(s, R), targets, meta, opt);
}

// ---------------------------------------------------------------- large rank

// max of the finite atomic length of rho^vee in rank m
inline Int finite_range_bound(Series s, Int m) {
    if (m <= 0) return 0;
    if (s == Series::D) return exact_div(m * (m - 1) * (2 * m - 1), 3);
    return exact_div(m * (m + 1) * (4 * m - 1), 6);
}

// b_{n-4} as used for the interval union; A2n uses half of the value
inline Rational b_n_minus_4(AffineType t, Int n) {
    AffineLatticeSpec s = lattice_spec(t, n);
    Rational b = finite_range_bound(s.finite, n - 4);
    return t == AffineType::A2n ? b / 2 : b;
}

// spacing of the interval starts h^2 k: k runs over N, or over N/2 for A2n
inline Rational interval_step(AffineType t, Int n) {
    Int h = lattice_spec(t, n).h;
    Rational h2 = h * h;
    return t == AffineType::A2n ? h2 / 2 : h2;
}

inline bool threshold_condition(AffineType t, Int n) { return n >= 4 && b_n_minus_4(t, n) >= interval_step(t, n); }

struct ThresholdResult {
    AffineType type;
    Int n0 = 0;
    Int check_range = 0;
    bool monotone = false;   // condition holds on [n0, check_range] and fails below n0
};

inline ThresholdResult large_rank_threshold(AffineType t, Int check_range = 40) {
    ThresholdResult r{t};
    r.check_range = check_range;
    for (Int n = 4; n <= 10'000; ++n)
        if (threshold_condition(t, n)) {
            r.n0 = n;
            break;
        }
    require(r.n0 > 0, Errc::SearchFailed, "no threshold found");
    r.monotone = true;
    for (Int n = 4; n <= std::max(check_range, r.n0); ++n)
        if (threshold_condition(t, n) != (n >= r.n0)) r.monotone = false;
    return r;
}

// L(w) = L_fin(wbar) + h^2 * half_norm(x) for wbar fixing x
inline Rational slice_atomic_length(const AffineLatticeSpec& s, Int finite_value, const Vec& x) {
    return Rational(finite_value) + Rational(s.h * s.h) * half_norm(s, x);
}

// the union of [step*k, step*k + b] covers [0, step*K]
inline bool interval_cover_holds(AffineType t, Int n, Int K = 50) {
    Rational step = interval_step(t, n), b = b_n_minus_4(t, n);
    Rational covered = b;   // right end of the covered prefix
    for (Int k = 1; k <= K; ++k) {
        Rational start = step * k;
        Rational grid = t == AffineType::A2n ? Rational(1, 2) : Rational(1);
        if (start > covered + grid) return false;
        covered = std::max(covered, start + b);
    }
    return true;
}

} // namespace atomlen
