#pragma once

#include "common.hpp"
#include "quadratic_forms.hpp"

#include <map>
#include <set>

namespace atomlen {

// ---------------------------------------------------------------- partitions

using Partition = Vec;                        // weakly decreasing positive parts
using MultiPartition = std::vector<Partition>;
using ChargeVector = Vec;

inline Partition make_partition(Vec parts) {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        require(parts[i] > 0, Errc::BadInput, "partition parts must be positive");
        require(i == 0 || parts[i] <= parts[i - 1], Errc::BadInput, "partition must be weakly decreasing");
    }
    return parts;
}

inline Int size(const Partition& p) { return sum(p); }

inline Int size(const MultiPartition& mp) {
    Int s = 0;
    for (const auto& p : mp) s += size(p);
    return s;
}

inline Partition conjugate(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    for (Int j = 1; j <= p.front(); ++j) {
        Int cnt = 0;
        for (Int v : p) cnt += v >= j;
        c.push_back(cnt);
    }
    return c;
}

inline std::vector<Vec> hook_lengths(const Partition& p) {
    Partition c = conjugate(p);
    std::vector<Vec> h(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (Int j = 0; j < p[i]; ++j) h[i].push_back(p[i] - j + c[j] - static_cast<Int>(i) - 1);
    return h;
}

// no hook of length n
inline bool is_n_core_hooks(const Partition& p, Int n) {
    for (const auto& row : hook_lengths(p))
        for (Int v : row)
            if (v == n) return false;
    return true;
}

// no hook of length divisible by n
inline bool is_n_core_hooks_divisible(const Partition& p, Int n) {
    for (const auto& row : hook_lengths(p))
        for (Int v : row)
            if (v % n == 0) return false;
    return true;
}

// ---------------------------------------------------------------- abacus

// Every position below `threshold` is occupied, `threshold` itself is empty,
// `beads` lists the occupied positions above it in increasing order.
struct BetaAbacus {
    Int threshold = 0;
    Vec beads;

    bool occupied(Int p) const {
        if (p < threshold) return true;
        return std::binary_search(beads.begin(), beads.end(), p);
    }
    Int max_position() const { return beads.empty() ? threshold - 1 : beads.back(); }

    // occupied positions >= low; requires low <= threshold
    Vec positions_from(Int low) const {
        Vec out;
        for (Int p = low; p < threshold; ++p) out.push_back(p);
        out.insert(out.end(), beads.begin(), beads.end());
        return out;
    }

    // push every bead into the leftmost white position to its left; the
    // charge is the leftmost white position of the resulting trivial symbol
    Int charge() const {
        std::set<Int> occ(beads.begin(), beads.end());
        Int white = threshold;
        for (Int b : beads) {
            while (occ.count(white)) ++white;
            if (white < b) {
                occ.erase(b);
                occ.insert(white);
            }
        }
        while (occ.count(white)) ++white;
        return white;
    }

    friend bool operator==(const BetaAbacus&, const BetaAbacus&) = default;
};

// all positions < low occupied, plus the listed positions (>= low)
inline BetaAbacus abacus_from_positions(Int low, Vec pos) {
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    Int t = low;
    std::size_t i = 0;
    while (i < pos.size() && pos[i] == t) ++t, ++i;
    BetaAbacus b;
    b.threshold = t;
    b.beads.assign(pos.begin() + static_cast<long>(i), pos.end());
    return b;
}

// beta numbers lambda_i - i + s
inline BetaAbacus beta_set(const Partition& p, Int s) {
    Int L = static_cast<Int>(p.size());
    Vec pos;
    for (Int i = 1; i <= L; ++i) pos.push_back(p[i - 1] - i + s);
    return abacus_from_positions(s - L, pos);
}

// parts are the numbers of white beads to the left of each black bead
inline Partition partition_of(const BetaAbacus& b) {
    Partition p;
    for (auto it = b.beads.rbegin(); it != b.beads.rend(); ++it) {
        Int whites = 0;
        for (Int q = b.threshold; q < *it; ++q) whites += !b.occupied(q);
        if (whites > 0) p.push_back(whites);
    }
    return p;
}

// n-core test: every bead at k has a bead at k - n
inline bool is_n_core_abacus(const Partition& p, Int n) {
    BetaAbacus b = beta_set(p, 0);
    for (Int k : b.beads)
        if (!b.occupied(k - n)) return false;
    return true;
}

// classical n-core by repeatedly removing rim hooks of length n (beads slide down n)
inline Partition n_core_by_stripping(const Partition& p, Int n) {
    BetaAbacus b = beta_set(p, 0);
    Vec pos = b.positions_from(b.threshold - n);
    std::set<Int> occ(pos.begin(), pos.end());
    Int low = b.threshold - n;
    bool moved = true;
    while (moved) {
        moved = false;
        for (Int k : Vec(occ.begin(), occ.end())) {
            if (k - n >= low && !occ.count(k - n)) {
                occ.erase(k);
                occ.insert(k - n);
                moved = true;
                break;
            }
        }
    }
    return partition_of(abacus_from_positions(low, Vec(occ.begin(), occ.end())));
}

using LAbacus = std::vector<BetaAbacus>;   // runners bottom to top

inline LAbacus l_abacus(const MultiPartition& mp, const ChargeVector& s) {
    require(mp.size() == s.size(), Errc::BadLength, "level of multipartition differs from charge length");
    LAbacus a;
    for (std::size_t j = 0; j < mp.size(); ++j) a.push_back(beta_set(mp[j], s[j]));
    return a;
}

// ---------------------------------------------------------------- phi

struct ChargedMulti {
    MultiPartition parts;
    ChargeVector charges;
    friend bool operator==(const ChargedMulti&, const ChargedMulti&) = default;
};

namespace detail {

inline Int common_floor(const LAbacus& a, Int step) {
    Int low = 0;
    bool first = true;
    for (const auto& r : a) {
        if (first || r.threshold < low) low = r.threshold;
        first = false;
    }
    return floor_div(low - step, step) * step;
}

inline ChargedMulti read_runners(const std::vector<Vec>& pos, Int low) {
    ChargedMulti out;
    for (const auto& p : pos) {
        BetaAbacus b = abacus_from_positions(low, p);
        out.parts.push_back(partition_of(b));
        out.charges.push_back(b.charge());
    }
    return out;
}

} // namespace detail

// Rectangles group the positions x with floor(x/n) = k. Bead k*n + c on runner r
// goes to runner c at position k*l + (l-1-r); runners and charges are then reversed.
inline ChargedMulti phi(const MultiPartition& mp, const ChargeVector& s, Int n) {
    require(n >= 2, Errc::BadInput, "phi needs n >= 2");
    require(!s.empty(), Errc::BadLength, "empty charge vector");
    const Int l = static_cast<Int>(s.size());
    LAbacus a = l_abacus(mp, s);
    Int low = detail::common_floor(a, n);
    std::vector<Vec> out(n);
    for (Int r = 0; r < l; ++r)
        for (Int p : a[r].positions_from(low)) {
            Int k = floor_div(p, n), c = p - k * n;
            out[c].push_back(k * l + (l - 1 - r));
        }
    ChargedMulti res = detail::read_runners(out, (low / n) * l);
    std::reverse(res.parts.begin(), res.parts.end());
    std::reverse(res.charges.begin(), res.charges.end());
    return res;
}

inline ChargedMulti phi_inverse(const MultiPartition& mp, const ChargeVector& t, Int l) {
    require(l >= 1, Errc::BadInput, "level must be positive");
    require(mp.size() == t.size() && t.size() >= 2, Errc::BadLength, "need n >= 2 runners");
    const Int n = static_cast<Int>(t.size());
    MultiPartition rmp(mp.rbegin(), mp.rend());
    ChargeVector rt(t.rbegin(), t.rend());
    LAbacus a = l_abacus(rmp, rt);
    Int low = detail::common_floor(a, l);
    std::vector<Vec> out(l);
    for (Int c = 0; c < n; ++c)
        for (Int q : a[c].positions_from(low)) {
            Int k = floor_div(q, l), j = q - k * l;
            out[l - 1 - j].push_back(k * n + c);
        }
    return detail::read_runners(out, (low / l) * n);
}

inline MultiPartition empty_multi(Int level) { return MultiPartition(level); }

struct NsCore {
    ChargedMulti core;
    ChargeVector core_multicharge;   // runner charges before the final reversal
};

inline NsCore ns_core_of(const MultiPartition& mp, const ChargeVector& s, Int n) {
    ChargedMulti q = phi(mp, s, n);
    NsCore r;
    r.core = phi_inverse(empty_multi(n), q.charges, static_cast<Int>(s.size()));
    r.core_multicharge.assign(q.charges.rbegin(), q.charges.rend());
    return r;
}

// abacus conditions: lower runners sit under the runner above, the top runner
// sits n positions right of the bottom one
inline bool is_ns_core(const MultiPartition& mp, const ChargeVector& s, Int n) {
    LAbacus a = l_abacus(mp, s);
    const std::size_t l = a.size();
    Int lo = 0, hi = 0;
    for (std::size_t r = 0; r < l; ++r) {
        lo = r == 0 ? a[r].threshold : std::min(lo, a[r].threshold);
        hi = r == 0 ? a[r].max_position() : std::max(hi, a[r].max_position());
    }
    for (Int p = lo - n - 1; p <= hi; ++p)
        for (std::size_t r = 0; r < l; ++r) {
            if (!a[r].occupied(p)) continue;
            bool ok = (r + 1 < l) ? a[r + 1].occupied(p) : a[0].occupied(p - n);
            if (!ok) return false;
        }
    return true;
}

// ---------------------------------------------------------------- weights and P_s

struct WeightSpec {
    Int n = 0;
    Int ell = 0;
    Vec s;        // 0 <= s_1 <= ... <= s_l < n
    Vec kappa;    // partition (s_l >= ... >= s_1)
    Vec sprime;   // conjugate of kappa padded to n parts, increasing

    Int total() const { return sum(s); }
};

inline WeightSpec make_weight(Int n, Vec s) {
    require(n >= 1, Errc::BadInput, "n must be positive");
    require(!s.empty() && static_cast<Int>(s.size()) <= n, Errc::BadEll, "need 1 <= l <= n");
    std::sort(s.begin(), s.end());
    for (Int v : s) require(v >= 0 && v < n, Errc::BadInput, "entries of s must lie in [0, n)");
    WeightSpec w;
    w.n = n;
    w.ell = static_cast<Int>(s.size());
    w.s = s;
    w.kappa.assign(s.rbegin(), s.rend());
    for (Int j = 1; j <= n - 1; ++j) {
        Int c = 0;
        for (Int v : s) c += v >= j;
        w.sprime.push_back(c);
    }
    w.sprime.push_back(0);
    std::sort(w.sprime.begin(), w.sprime.end());
    return w;
}

inline std::map<Int, Int> residue_profile(const Vec& v, Int m) {
    std::map<Int, Int> c;
    for (Int x : v) ++c[mod(x, m)];
    return c;
}

inline bool in_Ds(const WeightSpec& w, const Vec& t) {
    return static_cast<Int>(t.size()) == w.n && sum(t) == w.total() &&
           residue_profile(t, w.ell) == residue_profile(w.sprime, w.ell);
}

// 2l * P_s(t) = n |t|^2 - 2l sum (i-1) t_i - 2l c_s
inline Int scaled_Ps_raw(const WeightSpec& w, const Vec& t) {
    Wide acc = 0;
    for (Int i = 0; i < w.n; ++i)
        acc += static_cast<Wide>(w.n) * t[i] * t[i] - static_cast<Wide>(2 * w.ell) * i * t[i];
    return narrow(acc);
}

inline Rational c_s(const WeightSpec& w) { return Rational(scaled_Ps_raw(w, w.sprime), 2 * w.ell); }

inline Int eval_Ps(const WeightSpec& w, const Vec& t) {
    require(in_Ds(w, t), Errc::NotInDs, "t = (" + to_csv(t) + ") is not in D_s");
    Int v = scaled_Ps_raw(w, t) - scaled_Ps_raw(w, w.sprime);
    return exact_div(v, 2 * w.ell, "eval_Ps: value is not an integer");
}

// the GKS-style variant with a plus sign: P^+(t) = P(-t) on -D_s
inline Rational eval_Ps_plus(const WeightSpec& w, const Vec& t) {
    Vec neg(t);
    for (Int& x : neg) x = -x;
    return Rational(scaled_Ps_raw(w, neg) - scaled_Ps_raw(w, w.sprime), 2 * w.ell);
}

// generators applied left to right; s_i swaps t_i, t_{i+1}; s_0 as (t_n - l, ..., t_1 + l)
inline Vec affine_action_on_charges(const std::vector<Int>& word, Vec t, Int l) {
    const Int n = static_cast<Int>(t.size());
    for (Int g : word) {
        require(g >= 0 && g < n, Errc::BadIndex, "generator index " + std::to_string(g) + " out of range");
        if (g == 0) {
            Int first = t[0];
            t[0] = t[n - 1] - l;
            t[n - 1] = first + l;
        } else {
            std::swap(t[g - 1], t[g]);
        }
    }
    return t;
}

inline Int core_size_of_charges(const Vec& t, Int l) { return size(phi_inverse(empty_multi(static_cast<Int>(t.size())), t, l).parts); }

// dilation: z = (n/l) t - delta, F(z) = 1/2 |z|^2 - 1/2 |(n/l) s' - delta|^2
inline std::vector<Rational> dilate(const WeightSpec& w, const Vec& t) {
    std::vector<Rational> z;
    for (Int i = 0; i < w.n; ++i) z.push_back(Rational(w.n, w.ell) * t[i] - i);
    return z;
}

inline Rational eval_dilated(const WeightSpec& w, const std::vector<Rational>& z) {
    require(static_cast<Int>(z.size()) == w.n, Errc::DomainViolation, "z has the wrong length");
    Vec t;
    for (Int i = 0; i < w.n; ++i) {
        Rational ti = (z[i] + i) * Rational(w.ell, w.n);
        require(ti.denominator() == 1, Errc::DomainViolation, "z is not on the dilated grid");
        t.push_back(ti.numerator());
    }
    require(in_Ds(w, t), Errc::DomainViolation, "z does not come from D_s");
    auto half_norm = [](const std::vector<Rational>& v) {
        Rational s = 0;
        for (const auto& x : v) s += x * x;
        return s / 2;
    };
    return half_norm(z) - half_norm(dilate(w, w.sprime));
}

// ---------------------------------------------------------------- scans

inline ScanJob job_Ps(const WeightSpec& w, Int R) {
    ScanJob j;
    auto& sp = j.space;
    const Int n = w.n, l = w.ell;
    sp.dim = static_cast<int>(n);
    sp.A = n;
    sp.B.resize(n);
    for (Int i = 0; i < n; ++i) sp.B[i] = -2 * l * i;
    sp.C = -scaled_Ps_raw(w, w.sprime);
    sp.scale = 2 * l;
    sp.lo = filled(n, -R);
    sp.hi = filled(n, R);
    sp.total = w.total();
    auto want = residue_profile(w.sprime, l);
    std::vector<Int> cap(l, 0);
    for (auto [r, c] : want) cap[r] = c;
    sp.accept = [l, cap](const Vec& x, int len) {
        Int r = mod(x[len - 1], l), c = 0;
        for (int i = 0; i < len; ++i) c += mod(x[i], l) == r;
        return c <= cap[r];
    };
    j.obstruction = relaxation(sp);
    j.reevaluate = [w](const Vec& t) { return Rational(eval_Ps(w, t)); };
    return j;
}

inline UniversalityReport scan_Ps(const WeightSpec& w, Int N, Int R, const ScanOptions& opt = {}) {
    UniversalityReport meta;
    meta.form = "P_s";
    meta.domain = "D_s";
    meta.n = w.n;
    meta.max_k = N;
    meta.radius = R;
    meta.note = "l=" + std::to_string(w.ell) + " s=" + to_csv(w.s) + " s'=" + to_csv(w.sprime);
    return run_scan(job_Ps(w, R), integer_targets(N), meta, opt);
}

inline WeightSpec truncated_weight(Int n, Int l) {
    require(l >= 1 && l <= n, Errc::BadEll, "need 1 <= l <= n");
    Vec s(l);
    for (Int i = 0; i < l; ++i) s[i] = i;
    return make_weight(n, s);
}

inline UniversalityReport scan_truncated_weight(Int n, Int l, Int N, Int R, const ScanOptions& opt = {}) {
    UniversalityReport r = scan_Ps(truncated_weight(n, l), N, R, opt);
    r.form = "P_trunc";
    return r;
}

// Granville-Ono: (n/2)|x|^2 + sum (i-1) x_i on the zero-sum hyperplane
inline Rational eval_GO(const Vec& x) {
    Int n = static_cast<Int>(x.size());
    Wide acc = 0;
    for (Int i = 0; i < n; ++i) acc += static_cast<Wide>(n) * x[i] * x[i] + 2 * static_cast<Wide>(i) * x[i];
    return Rational(narrow(acc), 2);
}

inline ScanJob job_GO(Int n, Int R) {
    ScanJob j;
    auto& sp = j.space;
    sp.dim = static_cast<int>(n);
    sp.A = n;
    sp.B.resize(n);
    for (Int i = 0; i < n; ++i) sp.B[i] = 2 * i;
    sp.scale = 2;
    sp.lo = filled(n, -R);
    sp.hi = filled(n, R);
    sp.total = 0;
    j.obstruction = relaxation(sp);
    j.reevaluate = [](const Vec& x) {
        if (sum(x) != 0) throw Error(Errc::Invariant, "GO witness off the hyperplane");
        return eval_GO(x);
    };
    return j;
}

inline UniversalityReport granville_ono_scan(Int n, Int N, Int R, const ScanOptions& opt = {}) {
    require(n >= 2, Errc::BadInput, "n must be at least 2");
    UniversalityReport meta;
    meta.form = "GO";
    meta.domain = "Q_n";
    meta.n = n;
    meta.max_k = N;
    meta.radius = R;
    return run_scan(job_GO(n, R), integer_targets(N), meta, opt);
}

// refined problem: s = s' = (0,...,n-1), charge s = n(n-1)/2, O_s = distinct residues mod n
inline Int refined_charge(Int n) { return n * (n - 1) / 2; }

inline bool in_Os(Int n, const Vec& t) {
    return static_cast<Int>(t.size()) == n && sum(t) == refined_charge(n) && distinct_residues(t, n);
}

// P_s(t) = (n/2)|t|^2 + sum (i-1) t_i - s(n-1)/2 - s^2/2
inline Rational eval_refined_P(Int n, const Vec& t) {
    Int s = refined_charge(n);
    Wide acc = -static_cast<Wide>(s) * (n - 1) - static_cast<Wide>(s) * s;
    for (Int i = 0; i < n; ++i) acc += static_cast<Wide>(n) * t[i] * t[i] + 2 * static_cast<Wide>(i) * t[i];
    return Rational(narrow(acc), 2);
}

inline Vec refined_base(Int n) {
    Vec d(n);
    for (Int i = 0; i < n; ++i) d[i] = i;
    return d;
}

// Q_s = P_s - P_s(0,...,n-1)
inline Rational eval_refined_Q(Int n, const Vec& t) { return eval_refined_P(n, t) - eval_refined_P(n, refined_base(n)); }

enum class RefinedNormalization {
    BasePoint,   // targets are values of Q_s
    CoreSize,    // targets are values of P_s itself
};

inline ScanJob job_refined(Int n, Int R, RefinedNormalization norm) {
    ScanJob j;
    auto& sp = j.space;
    const Int s = refined_charge(n);
    sp.dim = static_cast<int>(n);
    sp.A = n;
    sp.B.resize(n);
    for (Int i = 0; i < n; ++i) sp.B[i] = 2 * i;
    sp.C = -(s * (n - 1) + s * s);
    sp.scale = 2;
    if (norm == RefinedNormalization::BasePoint) {
        Rational base = eval_refined_P(n, refined_base(n));
        sp.C -= narrow(static_cast<Wide>(base.numerator()) * 2 / base.denominator());
    }
    sp.lo = filled(n, -R);
    sp.hi = filled(n, R);
    sp.total = s;
    sp.accept = distinct_residue_filter(n, filled(n, 0));
    j.obstruction = relaxation(sp);
    j.reevaluate = [n, norm](const Vec& t) {
        if (!in_Os(n, t)) throw Error(Errc::Invariant, "refined witness outside O_s");
        return norm == RefinedNormalization::BasePoint ? eval_refined_Q(n, t) : eval_refined_P(n, t);
    };
    return j;
}

inline UniversalityReport scan_refined_GO(Int n, Int N, Int R,
                                          RefinedNormalization norm = RefinedNormalization::BasePoint,
                                          const ScanOptions& opt = {}) {
    require(n >= 2, Errc::BadInput, "n must be at least 2");
    UniversalityReport meta;
    meta.form = norm == RefinedNormalization::BasePoint ? "Q_s" : "P_s";
    meta.domain = "O_s";
    meta.n = n;
    meta.max_k = N;
    meta.radius = R;
    meta.note = norm == RefinedNormalization::BasePoint ? "targets are P_s - P_s(0..n-1)"
                                                        : "targets are core sizes P_s";
    return run_scan(job_refined(n, R, norm), integer_targets(N), meta, opt);
}

// ---------------------------------------------------------------- parsing and rendering

// "3,1;2,1" -> ((3,1),(2,1)); empty components allowed ("3;;1")
inline MultiPartition parse_multipartition(const std::string& s) {
    MultiPartition mp;
    std::string cur;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ';') {
            mp.push_back(make_partition(parse_csv(cur)));
            cur.clear();
        } else {
            cur += s[i];
        }
    }
    return mp;
}

inline std::string format_partition(const Partition& p) {
    if (p.empty()) return "()";
    return "(" + to_csv(p) + ")";
}

inline std::string format_multipartition(const MultiPartition& mp) {
    std::string s = "(";
    for (std::size_t i = 0; i < mp.size(); ++i) {
        if (i) s += ",";
        s += format_partition(mp[i]);
    }
    return s + ")";
}

// runners bottom to top, so the top runner is printed first; '#' black, '.' white
inline std::string render_abacus(const LAbacus& a) {
    if (a.empty()) return "";
    Int lo = a[0].threshold, hi = a[0].max_position();
    for (const auto& r : a) {
        lo = std::min(lo, r.threshold);
        hi = std::max(hi, r.max_position());
    }
    lo -= 2;
    hi += 2;
    std::size_t width = 1;
    for (Int p = lo; p <= hi; ++p) width = std::max(width, std::to_string(p).size());
    ++width;
    auto pad = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
    std::string label_pad(6, ' ');
    std::string out;
    for (std::size_t r = a.size(); r-- > 0;) {
        std::string label = "X" + std::to_string(r + 1);
        out += label + std::string(label_pad.size() - label.size(), ' ') + " ...";
        for (Int p = lo; p <= hi; ++p) out += pad(a[r].occupied(p) ? "#" : ".");
        out += "  ...\n";
    }
    out += label_pad + "    ";
    for (Int p = lo; p <= hi; ++p) out += pad(std::to_string(p));
    out += "\n";
    return out;
}

} // namespace atomlen
