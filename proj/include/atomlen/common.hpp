#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace atomlen {

using Int = std::int64_t;
using Wide = __int128;
using Vec = std::vector<Int>;
using Rational = boost::rational<Int>;

enum class Errc {
    ResidueClash,
    BadSum,
    BadLength,
    RankMismatch,
    DomainViolation,
    BadIndex,
    BadEll,
    NotPrime,
    NotInDs,
    MirrorViolation,
    SearchFailed,
    BudgetExceeded,
    Overflow,
    Invariant,
    BadInput,
};

inline const char* errc_name(Errc e) {
    switch (e) {
    case Errc::ResidueClash: return "ResidueClash";
    case Errc::BadSum: return "BadSum";
    case Errc::BadLength: return "BadLength";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::BadIndex: return "BadIndex";
    case Errc::BadEll: return "BadEll";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotInDs: return "NotInDs";
    case Errc::MirrorViolation: return "MirrorViolation";
    case Errc::SearchFailed: return "SearchFailed";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::Overflow: return "Overflow";
    case Errc::Invariant: return "Invariant";
    case Errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

// checked 64-bit arithmetic
inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "add");
    return r;
}
inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::Overflow, "sub");
    return r;
}
inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "mul");
    return r;
}
inline Int narrow(Wide w) {
    if (w > INT64_MAX || w < INT64_MIN) throw Error(Errc::Overflow, "narrow");
    return static_cast<Int>(w);
}

// exact division; throws if d does not divide a
inline Int exact_div(Int a, Int d, const char* what = "exact_div") {
    if (d == 0 || a % d != 0) throw Error(Errc::Invariant, what);
    return a / d;
}

inline Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int sum(const Vec& v) {
    Int s = 0;
    for (Int x : v) s = add(s, x);
    return s;
}

inline Int norm2(const Vec& v) {
    Int s = 0;
    for (Int x : v) s = add(s, mul(x, x));
    return s;
}

inline Int binom(Int n, Int k) {
    if (k < 0 || k > n) return 0;
    Wide r = 1;
    for (Int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return narrow(r);
}

inline bool is_prime(Int p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// "3,0,-1" -> {3,0,-1}; empty string gives an empty vector
inline Vec parse_csv(std::string_view s) {
    Vec out;
    std::string tok;
    std::stringstream ss{std::string(s)};
    while (std::getline(ss, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) {
            if (s.empty()) break;
            throw Error(Errc::BadInput, "empty field in '" + std::string(s) + "'");
        }
        tok = tok.substr(b, e - b + 1);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw Error(Errc::BadInput, "not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw Error(Errc::BadInput, "not an integer: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

inline std::string to_csv(const Vec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    if (r.denominator() == 2) {
        // half-integers print as decimals: 5/2 -> 2.5, -1/2 -> -0.5
        Int n = r.numerator();
        std::string sign = n < 0 ? "-" : "";
        Int a = n < 0 ? -n : n;
        return sign + std::to_string(a / 2) + ".5";
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// ATOMLEN_BUDGET overrides enumeration caps
inline Int enumeration_budget(Int fallback) {
    if (const char* env = std::getenv("ATOMLEN_BUDGET")) {
        try {
            long long v = std::stoll(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return fallback;
}

inline unsigned default_threads() {
    unsigned t = std::thread::hardware_concurrency();
    return t == 0 ? 1 : t;
}

// fn(i) for i in [0, count); work handed out by an atomic counter
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace atomlen
