#pragma once

#include "common.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>

namespace atomlen {

// ---------------------------------------------------------------- forms P, Q, q

// 1/2 sum y_i^2 - sum i y_i + n(n+1)(2n+1)/12
inline Int eval_P(const Vec& y) {
    Int n = static_cast<Int>(y.size());
    Wide acc = static_cast<Wide>(n) * (n + 1) * (2 * n + 1);
    for (Int i = 1; i <= n; ++i) {
        Wide v = y[i - 1];
        acc += 6 * v * v - 12 * static_cast<Wide>(i) * v;
    }
    return exact_div(narrow(acc), 12, "eval_P: value is not an integer");
}

inline Rational eval_Q(const Vec& x) { return Rational(norm2(x), 2); }

// sum x_i^2 + sum_{i<j} x_i x_j = 1/2 (|x|^2 + (sum x)^2)
inline Int eval_q(const Vec& x) {
    Wide s = 0, n2 = 0;
    for (Int v : x) {
        s += v;
        n2 += static_cast<Wide>(v) * v;
    }
    Wide t = n2 + s * s;
    return narrow(t / 2);
}

// ---------------------------------------------------------------- domains

enum class DomainKind { D_n, Delta_n, X_n, Q_n, Z };

struct ConstrainedDomain {
    DomainKind kind;
    Int n;
};

inline bool distinct_residues(const Vec& v, Int m, const Vec& shift = {}) {
    std::vector<char> seen(m, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int r = mod(v[i] + (shift.empty() ? 0 : shift[i]), m);
        if (seen[r]) return false;
        seen[r] = 1;
    }
    return true;
}

inline Vec index_shift(Int n) {
    Vec s(n);
    for (Int i = 0; i < n; ++i) s[i] = i + 1;
    return s;
}

inline bool member(const ConstrainedDomain& d, const Vec& v) {
    Int n = d.n;
    switch (d.kind) {
    case DomainKind::D_n:
        return static_cast<Int>(v.size()) == n && distinct_residues(v, n) && sum(v) == n * (n + 1) / 2;
    case DomainKind::Delta_n:
        return static_cast<Int>(v.size()) == n && sum(v) == 0 && distinct_residues(v, n, index_shift(n));
    case DomainKind::X_n: {
        if (static_cast<Int>(v.size()) != n - 1) return false;
        if (!distinct_residues(v, n, index_shift(n - 1))) return false;
        // T_i = x_1 + ... + 2 x_i + ... + x_{n-1}; T_i != n - i mod n, i = 1..n-1
        Int s = sum(v);
        for (Int i = 1; i <= n - 1; ++i)
            if (mod(s + v[i - 1], n) == mod(n - i, n)) return false;
        return true;
    }
    case DomainKind::Q_n:
        return static_cast<Int>(v.size()) == n && sum(v) == 0;
    case DomainKind::Z:
        return static_cast<Int>(v.size()) == n;
    }
    return false;
}

// C(y) = y - (1..n)
inline Vec map_C(const Vec& y) {
    Int n = static_cast<Int>(y.size());
    require(member({DomainKind::D_n, n}, y), Errc::DomainViolation, "map_C: not in D_n");
    Vec x(y);
    for (Int i = 0; i < n; ++i) x[i] -= i + 1;
    return x;
}

inline Vec map_C_inv(const Vec& x) {
    Int n = static_cast<Int>(x.size());
    require(member({DomainKind::Delta_n, n}, x), Errc::DomainViolation, "map_C_inv: not in Delta_n");
    Vec y(x);
    for (Int i = 0; i < n; ++i) y[i] += i + 1;
    return y;
}

inline Vec map_pr(const Vec& x) {
    Int n = static_cast<Int>(x.size());
    require(member({DomainKind::Delta_n, n}, x), Errc::DomainViolation, "map_pr: not in Delta_n");
    return Vec(x.begin(), x.end() - 1);
}

inline Vec map_pr_inv(const Vec& x) {
    Int n = static_cast<Int>(x.size()) + 1;
    require(member({DomainKind::X_n, n}, x), Errc::DomainViolation, "map_pr_inv: not in X_n");
    Vec full(x);
    full.push_back(-sum(x));
    return full;
}

// ---------------------------------------------------------------- constant sets

inline const std::vector<Int>& S15() {
    static const std::vector<Int> s{1, 2, 3, 5, 6, 7, 10, 14, 15};
    return s;
}

inline const std::vector<Int>& S290() {
    static const std::vector<Int> s{1,  2,  3,  5,  6,  7,  10, 13, 14,  15,  17,  19,  21,  22, 23,
                                    26, 29, 30, 31, 34, 35, 37, 42, 58, 93, 110, 145, 203, 290};
    return s;
}

// ---------------------------------------------------------------- search engine

// value(x) = (A |x|^2 + sum B_i x_i + C) / scale, A > 0.
// Optional linear constraint sum x = total resolved at the last coordinate.
struct SearchSpace {
    int dim = 0;
    Int A = 1;
    Vec B;
    Int C = 0;
    Int scale = 1;
    Vec lo, hi;
    std::optional<Int> total;
    bool bound_dependent = true;
    // checks coordinate len-1 against coordinates 0..len-2
    std::function<bool(const Vec&, int)> accept;
    // checked once the vector is complete
    std::function<bool(const Vec&)> complete;

    Wide scaled_value(const Vec& x) const {
        Wide v = C;
        for (int i = 0; i < dim; ++i) v += static_cast<Wide>(A) * x[i] * x[i] + static_cast<Wide>(B[i]) * x[i];
        return v;
    }
    Rational value(const Vec& x) const {
        Int v = narrow(scaled_value(x));
        return Rational(v, scale);
    }
    bool in_domain(const Vec& x) const {
        if (static_cast<int>(x.size()) != dim) return false;
        if (total && sum(x) != *total) return false;
        for (int i = 0; i < dim; ++i) {
            bool dependent = total && i == dim - 1;
            if ((!dependent || bound_dependent) && (x[i] < lo[i] || x[i] > hi[i])) return false;
            if (accept && !accept(x, i + 1)) return false;
        }
        return !complete || complete(x);
    }
};

// integer minimum of A x^2 + b x over [lo, hi]
inline Wide min_term(Int A, Int b, Int lo, Int hi) {
    Wide best = 0;
    bool first = true;
    auto consider = [&](Int x) {
        if (x < lo || x > hi) return;
        Wide t = static_cast<Wide>(A) * x * x + static_cast<Wide>(b) * x;
        if (first || t < best) best = t, first = false;
    };
    Int c = floor_div(-b, 2 * A);
    consider(c);
    consider(c + 1);
    consider(lo);
    consider(hi);
    return best;
}

class Searcher {
public:
    explicit Searcher(const SearchSpace& sp) : sp_(sp) {
        int d = sp.dim;
        suffix_min_.assign(d + 1, 0);
        suffix_b_.assign(d + 1, 0);
        suffix_b2_.assign(d + 1, 0);
        for (int i = d - 1; i >= 0; --i) {
            bool dep = sp.total && i == d - 1;
            Int lo = (dep && !sp.bound_dependent) ? INT32_MIN : sp.lo[i];
            Int hi = (dep && !sp.bound_dependent) ? INT32_MAX : sp.hi[i];
            suffix_min_[i] = suffix_min_[i + 1] + min_term(sp.A, sp.B[i], lo, hi);
            suffix_b_[i] = suffix_b_[i + 1] + sp.B[i];
            suffix_b2_[i] = suffix_b2_[i + 1] + static_cast<Wide>(sp.B[i]) * sp.B[i];
        }
    }

    // first vector in ascending lexicographic order with scaled value == target
    std::optional<Vec> find(Wide scaled_target) {
        target_ = scaled_target;
        x_.assign(sp_.dim, 0);
        if (sp_.dim == 0) {
            if (sp_.C == target_) return Vec{};
            return std::nullopt;
        }
        if (rec(0, target_ - sp_.C, 0)) return x_;
        return std::nullopt;
    }

private:
    bool rec(int i, Wide budget, Int partial) {
        const int d = sp_.dim;
        if (budget < suffix_min_[i]) return false;
        if (sp_.total) {
            // Cauchy-Schwarz on completed squares of the remaining coordinates
            Wide r = d - i;
            Wide V = 2 * static_cast<Wide>(sp_.A) * (*sp_.total - partial) + suffix_b_[i];
            if (V * V - r * suffix_b2_[i] > 4 * static_cast<Wide>(sp_.A) * r * budget) return false;
            if (i == d - 1) {
                Int v = *sp_.total - partial;
                if (sp_.bound_dependent && (v < sp_.lo[i] || v > sp_.hi[i])) return false;
                Wide t = static_cast<Wide>(sp_.A) * v * v + static_cast<Wide>(sp_.B[i]) * v;
                if (t != budget) return false;
                x_[i] = v;
                return (!sp_.accept || sp_.accept(x_, i + 1)) && (!sp_.complete || sp_.complete(x_));
            }
        }
        for (Int v = sp_.lo[i]; v <= sp_.hi[i]; ++v) {
            Wide t = static_cast<Wide>(sp_.A) * v * v + static_cast<Wide>(sp_.B[i]) * v;
            if (t + suffix_min_[i + 1] > budget) continue;
            x_[i] = v;
            if (sp_.accept && !sp_.accept(x_, i + 1)) continue;
            if (i == d - 1) {
                if (t == budget && (!sp_.complete || sp_.complete(x_))) return true;
                continue;
            }
            if (rec(i + 1, budget - t, partial + v)) return true;
        }
        return false;
    }

    const SearchSpace& sp_;
    std::vector<Wide> suffix_min_, suffix_b_, suffix_b2_;
    Wide target_ = 0;
    Vec x_;
};

inline std::optional<Vec> represent(const SearchSpace& sp, const Rational& k) {
    Rational scaled = k * sp.scale;
    if (scaled.denominator() != 1) return std::nullopt;
    Searcher s(sp);
    return s.find(scaled.numerator());
}

// ---------------------------------------------------------------- modular obstructions

// value = G(x) / scale with G integer-coefficient on Z^dim
struct ObstructionModel {
    int dim = 0;
    Int scale = 1;
    std::function<Wide(const Vec&)> G;
};

inline const std::vector<Int>& obstruction_moduli() {
    static const std::vector<Int> m{2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64, 128};
    return m;
}

inline Int lift_box_size(const ObstructionModel& f, Int m) {
    Wide c = 1;
    for (int i = 0; i < f.dim; ++i) {
        c *= static_cast<Wide>(f.scale) * m;
        if (c > INT64_MAX / 2) return INT64_MAX;
    }
    return static_cast<Int>(c);
}

// Residues r mod m with G(x)/scale = r mod m for some integer x.
// G has integer coefficients, so G mod (scale*m) only depends on x mod (scale*m);
// the box [0, scale*m)^dim therefore covers every lift.
inline std::set<Int> attained_classes(const ObstructionModel& f, Int m) {
    require(m >= 1, Errc::BadInput, "modulus must be positive");
    if (m == 1) return {0};
    Int budget = enumeration_budget(100'000'000);
    require(lift_box_size(f, m) <= budget, Errc::BudgetExceeded,
            "attained_classes: (scale*m)^dim exceeds budget");
    const Int M = f.scale * m;
    std::vector<char> hit(m, 0);
    Vec x(f.dim, 0);
    Int found = 0;
    for (;;) {
        Wide g = f.G(x) % M;
        if (g < 0) g += M;
        if (g % f.scale == 0) {
            Int r = static_cast<Int>(g / f.scale);
            if (!hit[r]) hit[r] = 1, ++found;
        }
        if (found == m) break;
        int i = 0;
        while (i < f.dim && ++x[i] == M) x[i++] = 0;
        if (i == f.dim) break;
    }
    std::set<Int> out;
    for (Int r = 0; r < m; ++r)
        if (hit[r]) out.insert(r);
    return out;
}

inline ObstructionModel q_model(int vars) {
    ObstructionModel f;
    f.dim = vars;
    f.scale = 1;
    f.G = [](const Vec& x) { return static_cast<Wide>(eval_q(x)); };
    return f;
}

// drops every congruence filter and coordinate bound: a superset of the search domain
inline ObstructionModel relaxation(const SearchSpace& sp) {
    ObstructionModel f;
    f.dim = sp.total ? sp.dim - 1 : sp.dim;
    f.scale = sp.scale;
    SearchSpace copy = sp;
    f.G = [copy](const Vec& free) {
        Vec x(free);
        if (copy.total) x.push_back(*copy.total - sum(free));
        return copy.scaled_value(x);
    };
    return f;
}

// ---------------------------------------------------------------- reports

enum class Status { Witness, NotFoundWithinRadius, ModularObstruction };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::Witness: return "Witness";
    case Status::NotFoundWithinRadius: return "NotFoundWithinRadius";
    case Status::ModularObstruction: return "ModularObstruction";
    }
    return "?";
}

struct ReportEntry {
    Rational k;
    Status status = Status::NotFoundWithinRadius;
    Vec witness;
    Int modulus = 0;
    Int residue = 0;
};

struct UniversalityReport {
    std::string form;
    std::string domain;
    Int n = 0;
    Rational max_k;
    Int radius = 0;
    bool half_grid = false;
    std::string note;
    std::vector<ReportEntry> entries;

    bool all_witness() const {
        for (const auto& e : entries)
            if (e.status != Status::Witness) return false;
        return true;
    }
    std::size_t count(Status s) const {
        std::size_t c = 0;
        for (const auto& e : entries) c += e.status == s;
        return c;
    }
    std::vector<Rational> missing() const {
        std::vector<Rational> out;
        for (const auto& e : entries)
            if (e.status != Status::Witness) out.push_back(e.k);
        return out;
    }
    const ReportEntry* at(const Rational& k) const {
        for (const auto& e : entries)
            if (e.k == k) return &e;
        return nullptr;
    }
};

inline std::vector<Rational> integer_targets(Int N) {
    std::vector<Rational> t;
    for (Int k = 0; k <= N; ++k) t.emplace_back(k);
    return t;
}

inline std::vector<Rational> half_targets(Int N) {
    std::vector<Rational> t;
    for (Int k = 0; k <= 2 * N; ++k) t.emplace_back(k, 2);
    return t;
}

struct ScanJob {
    SearchSpace space;
    std::optional<ObstructionModel> obstruction;
    // maps a search vector to the reported witness (e.g. drop a coordinate)
    std::function<Vec(const Vec&)> present;
    // independent re-evaluation of a reported witness
    std::function<Rational(const Vec&)> reevaluate;
};

struct ScanOptions {
    unsigned threads = default_threads();
};

class ObstructionCache {
public:
    explicit ObstructionCache(const ObstructionModel& f) : f_(f) {}

    // smallest candidate modulus whose attained classes miss k
    std::optional<Int> obstruct(const Rational& k) {
        if (k.denominator() != 1) return std::nullopt;
        Int budget = enumeration_budget(100'000'000);
        for (Int m : obstruction_moduli()) {
            if (lift_box_size(f_, m) > budget) break;
            const std::set<Int>& cls = classes(m);
            if (!cls.count(mod(k.numerator(), m))) return m;
        }
        return std::nullopt;
    }

    const std::set<Int>& classes(Int m) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(m);
        if (it == cache_.end()) it = cache_.emplace(m, attained_classes(f_, m)).first;
        return it->second;
    }

private:
    ObstructionModel f_;
    std::mutex mu_;
    std::map<Int, std::set<Int>> cache_;
};

inline UniversalityReport run_scan(const ScanJob& job, const std::vector<Rational>& targets, UniversalityReport meta,
                                   const ScanOptions& opt = {}) {
    meta.entries.assign(targets.size(), ReportEntry{});
    std::optional<ObstructionCache> cache;
    if (job.obstruction) cache.emplace(*job.obstruction);
    parallel_for(targets.size(), opt.threads, [&](std::size_t idx) {
        ReportEntry& e = meta.entries[idx];
        e.k = targets[idx];
        if (auto x = represent(job.space, e.k)) {
            if (!job.space.in_domain(*x) || job.space.value(*x) != e.k)
                throw Error(Errc::Invariant, "witness does not re-evaluate to its target");
            e.witness = job.present ? job.present(*x) : *x;
            if (job.reevaluate && job.reevaluate(e.witness) != e.k)
                throw Error(Errc::Invariant, "presented witness does not re-evaluate to its target");
            e.status = Status::Witness;
            return;
        }
        if (cache) {
            if (auto m = cache->obstruct(e.k)) {
                e.status = Status::ModularObstruction;
                e.modulus = *m;
                e.residue = mod(e.k.numerator(), *m);
                return;
            }
        }
        e.status = Status::NotFoundWithinRadius;
    });
    return meta;
}

// ---------------------------------------------------------------- standard scans

inline Vec filled(Int n, Int v) { return Vec(n, v); }

// incremental check: (x_{len-1} + shift_{len-1}) mod m differs from earlier ones
inline std::function<bool(const Vec&, int)> distinct_residue_filter(Int m, Vec shift) {
    return [m, shift = std::move(shift)](const Vec& x, int len) {
        Int r = mod(x[len - 1] + shift[len - 1], m);
        for (int j = 0; j < len - 1; ++j)
            if (mod(x[j] + shift[j], m) == r) return false;
        return true;
    };
}

// Q on Delta_n
inline ScanJob job_Q_delta(Int n, Int R) {
    ScanJob j;
    auto& s = j.space;
    s.dim = static_cast<int>(n);
    s.A = 1;
    s.B = filled(n, 0);
    s.scale = 2;
    s.lo = filled(n, -R);
    s.hi = filled(n, R);
    s.total = 0;
    s.accept = distinct_residue_filter(n, index_shift(n));
    if (n >= 2) j.obstruction = q_model(static_cast<int>(n - 1));
    j.reevaluate = [n](const Vec& x) {
        if (!member({DomainKind::Delta_n, n}, x)) throw Error(Errc::Invariant, "witness outside Delta_n");
        return Rational(eval_q(map_pr(x)));
    };
    return j;
}

// P on D_n; radius bounds |y_i - i|
inline ScanJob job_rho(Int n, Int R) {
    ScanJob j;
    auto& s = j.space;
    s.dim = static_cast<int>(n);
    s.A = 1;
    s.B.resize(n);
    s.lo.resize(n);
    s.hi.resize(n);
    for (Int i = 1; i <= n; ++i) {
        s.B[i - 1] = -2 * i;
        s.lo[i - 1] = i - R;
        s.hi[i - 1] = i + R;
    }
    s.C = n * (n + 1) * (2 * n + 1) / 6;
    s.scale = 2;
    s.total = n * (n + 1) / 2;
    s.accept = distinct_residue_filter(n, filled(n, 0));
    if (n >= 2) j.obstruction = q_model(static_cast<int>(n - 1));
    j.reevaluate = [](const Vec& y) { return Rational(eval_P(y)); };
    return j;
}

// q on Z^{n-1}, searched as Q on the zero-sum hyperplane of Z^n
inline ScanJob job_q_free(Int n, Int R) {
    ScanJob j;
    auto& s = j.space;
    s.dim = static_cast<int>(n);
    s.A = 1;
    s.B = filled(n, 0);
    s.scale = 2;
    s.lo = filled(n, -R);
    s.hi = filled(n, R);
    s.total = 0;
    s.bound_dependent = false;
    j.obstruction = q_model(static_cast<int>(n - 1));
    j.present = [](const Vec& x) { return Vec(x.begin(), x.end() - 1); };
    j.reevaluate = [](const Vec& x) { return Rational(eval_q(x)); };
    return j;
}

inline UniversalityReport universality_scan_Q_delta(Int n, Int N, Int R, const ScanOptions& opt = {}) {
    UniversalityReport meta;
    meta.form = "Q";
    meta.domain = "Delta_n";
    meta.n = n;
    meta.max_k = N;
    meta.radius = R;
    return run_scan(job_Q_delta(n, R), integer_targets(N), meta, opt);
}

inline UniversalityReport universality_scan_rho(Int n, Int N, Int R, const ScanOptions& opt = {}) {
    UniversalityReport meta;
    meta.form = "P";
    meta.domain = "D_n";
    meta.n = n;
    meta.max_k = N;
    meta.radius = R;
    return run_scan(job_rho(n, R), integer_targets(N), meta, opt);
}

inline UniversalityReport universality_scan_q_free(Int n, Int N, Int R, const ScanOptions& opt = {}) {
    UniversalityReport meta;
    meta.form = "q";
    meta.domain = "Z^" + std::to_string(n - 1);
    meta.n = n;
    meta.max_k = N;
    meta.radius = R;
    return run_scan(job_q_free(n, R), integer_targets(N), meta, opt);
}

// q in n-1 variables against an explicit target list (e.g. S290)
inline UniversalityReport q_checklist_scan(Int n, const std::vector<Int>& targets, Int R, std::string checklist,
                                           const ScanOptions& opt = {}) {
    UniversalityReport meta;
    meta.form = "q";
    meta.domain = "Z^" + std::to_string(n - 1);
    meta.n = n;
    meta.max_k = targets.empty() ? 0 : *std::max_element(targets.begin(), targets.end());
    meta.radius = R;
    meta.note = "checklist " + checklist;
    std::vector<Rational> t(targets.begin(), targets.end());
    return run_scan(job_q_free(n, R), t, meta, opt);
}

} // namespace atomlen
