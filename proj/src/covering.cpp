#include "weilval/covering.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace weilval {

namespace {

constexpr int kMaxDigits = 63;

i64 pow_checked(i64 t, int n) {
    i64 m = 1;
    for (int i = 0; i < n; ++i) {
        if (m > (i64(1) << 62) / t) throw UsageError("t^n does not fit in 63 bits");
        m *= t;
    }
    return m;
}

void digits_of(i64 x, i64 t, int n, i64* out) {
    for (int i = 0; i < n; ++i) {
        out[i] = x % t;
        x /= t;
    }
}

bool covers_digits(const i64* a, const i64* b, int n) {
    for (int i = 0; i < n; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Barrett-style reduction for repeated a*b mod m with a*b < 2^63. The
// quotient estimate is off by at most 2, fixed up branch-free.
struct MulMod {
    u64 m;
    u64 inv;
    explicit MulMod(u64 modulus) : m(modulus), inv(~u64(0) / modulus) {}
    u64 operator()(u64 a, u64 b) const {
        u64 ab = a * b;
        u64 q = static_cast<u64>((static_cast<u128>(ab) * inv) >> 64);
        u64 r = ab - q * m;
        r = r >= m ? r - m : r;
        r = r >= m ? r - m : r;
        return r;
    }
};

} // namespace

bool is_perfect_power(i64 t) {
    if (t < 4) return false;
    for (int k = 2; (i64(1) << k) <= t; ++k) {
        i64 s = static_cast<i64>(std::llround(std::pow(static_cast<double>(t), 1.0 / k)));
        for (i64 c = std::max<i64>(2, s - 1); c <= s + 1; ++c) {
            i64 v = 1;
            bool over = false;
            for (int i = 0; i < k; ++i) {
                if (v > t / c + 1) { over = true; break; }
                v *= c;
            }
            if (!over && v == t) return true;
        }
    }
    return false;
}

bool covers(i64 t, int n, i64 a, i64 b) {
    if (t < 2 || n < 1 || n > kMaxDigits) throw UsageError("bad covering parameters");
    const i64 m = pow_checked(t, n) - 1;
    a = mod_reduce(a, m);
    b = mod_reduce(b, m);
    i64 da[kMaxDigits], db[kMaxDigits];
    digits_of(a, t, n, da);
    digits_of(b, t, n, db);
    return covers_digits(da, db, n);
}

bool covers_strictly(i64 t, int n, i64 a, i64 b) {
    const i64 m = pow_checked(t, n) - 1;
    a = mod_reduce(a, m);
    b = mod_reduce(b, m);
    return a != b && covers(t, n, a, b);
}

const char* witness_method_name(WitnessMethod m) {
    switch (m) {
        case WitnessMethod::vincent_gcd: return "vincent_gcd";
        case WitnessMethod::colin_inverse: return "colin_inverse";
        case WitnessMethod::leonard_lift: return "leonard_lift";
        case WitnessMethod::brute_force: return "brute_force";
    }
    return "?";
}

CoveringWitness make_covering_witness(i64 t, int n, i64 d, i64 a, i64 b, WitnessMethod m) {
    const i64 M = pow_checked(t, n) - 1;
    i64 am = mod_reduce(a, M), bm = mod_reduce(b, M), dm = mod_reduce(d, M);
    if (am == 0 || bm == 0) throw DefectError("witness endpoints must be nonzero");
    if (!covers_strictly(t, n, am, bm)) throw DefectError("witness fails a < b in the digit order");
    i64 da = mulmod(dm, am, M), db = mulmod(dm, bm, M);
    if (!covers_strictly(t, n, db, da)) throw DefectError("witness fails d*b < d*a in the digit order");
    return CoveringWitness{t, n, dm, am, bm, m};
}

namespace {

bool is_power_of_t_mod(i64 t, int n, i64 M, i64 r) {
    i64 pw = 1 % M;
    for (int k = 0; k < n; ++k) {
        if (r == pw) return true;
        pw = mulmod(pw, t, M);
    }
    return false;
}

// Cascade steps shared by the single query path and the scan; each returns
// whether it produced a witness.
bool try_vincent(i64 t, int n, i64 M, i64 dm, i64 g, CoveringWitness& out) {
    if (g <= 1 || g >= M) return false;
    i64 e = M / g;
    i64 digits[kMaxDigits];
    digits_of(e, t, n, digits);
    int k = 0;
    while (digits[k] == 0) ++k;
    i64 tk = 1;
    for (int i = 0; i < k; ++i) tk *= t;
    out = make_covering_witness(t, n, dm, tk, e, WitnessMethod::vincent_gcd);
    return true;
}

bool try_colin(i64 t, int n, i64 M, i64 dm, CoveringWitness& out) {
    i64 e = inv_mod(dm, M);
    if (e < 0) return false;
    i64 dd[kMaxDigits], ed[kMaxDigits];
    digits_of(dm, t, n, dd);
    digits_of(e, t, n, ed);
    for (int j = 0; j < n; ++j) {
        if (dd[j] == 0) continue;
        int k = (n - j) % n;
        if (ed[k] == 0) continue;
        i64 tk = 1;
        for (int i = 0; i < k; ++i) tk *= t;
        out = make_covering_witness(t, n, dm, tk, e, WitnessMethod::colin_inverse);
        return true;
    }
    return false;
}

bool try_leonard(i64 t, int n, i64 M, i64 dm, CoveringWitness& out) {
    for (int m = 1; m < n; ++m) {
        if (n % m != 0) continue;
        i64 Mm = pow_checked(t, m) - 1;
        if (Mm < 2) continue;
        i64 dsub = dm % Mm;
        if (dsub == 0 || is_power_of_t_mod(t, m, Mm, dsub)) continue;
        CoveringWitness sub = covering_witness(t, m, dsub);
        i64 lift = M / Mm;
        out = make_covering_witness(t, n, dm, sub.a * lift, sub.b * lift,
                                    WitnessMethod::leonard_lift);
        return true;
    }
    return false;
}

bool try_brute(i64 t, int n, i64 M, i64 dm, CoveringWitness& out) {
    i64 bd[kMaxDigits], ad[kMaxDigits];
    for (i64 b = 1; b < M; ++b) {
        digits_of(b, t, n, bd);
        const i64 db = mulmod(dm, b, M);
        i64 dbd[kMaxDigits];
        digits_of(db, t, n, dbd);
        // ascending a over digit-subvectors of b via a capped odometer
        std::fill(ad, ad + n, 0);
        i64 a = 0;
        while (true) {
            // increment
            int pos = 0;
            i64 step = 1;
            while (pos < n && ad[pos] == bd[pos]) {
                a -= ad[pos] * step;
                ad[pos] = 0;
                step *= t;
                ++pos;
            }
            if (pos == n) break; // wrapped past b
            ++ad[pos];
            a += step;
            if (a == b) continue; // strictness
            i64 da = mulmod(dm, a, M);
            i64 dad[kMaxDigits];
            digits_of(da, t, n, dad);
            if (db != da && covers_digits(dbd, dad, n)) {
                out = make_covering_witness(t, n, dm, a, b, WitnessMethod::brute_force);
                return true;
            }
        }
    }
    return false;
}

} // namespace

CoveringWitness covering_witness(i64 t, int n, i64 d) {
    if (t < 2 || n < 1 || n > kMaxDigits) throw UsageError("bad covering parameters");
    const i64 M = pow_checked(t, n) - 1;
    if (M < 2) throw UsageError("no eligible exponents for this (t, n)");
    const i64 dm = mod_reduce(d, M);
    if (dm == 0) throw UsageError("d is zero modulo t^n - 1");
    if (is_power_of_t_mod(t, n, M, dm)) throw UsageError("d is a power of t modulo t^n - 1");

    CoveringWitness w;
    i64 g = std::gcd(dm, M);
    if (try_vincent(t, n, M, dm, g, w)) return w;
    if (try_colin(t, n, M, dm, w)) return w;
    if (try_leonard(t, n, M, dm, w)) return w;
    if (try_brute(t, n, M, dm, w)) return w;
    throw CounterexampleFound("no covering witness for t=" + std::to_string(t) +
                              " n=" + std::to_string(n) + " d=" + std::to_string(dm));
}

namespace {

const std::vector<int32_t>& spf_sieve_up_to(i64 limit) {
    static std::vector<int32_t> spf;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<i64>(spf.size()) <= limit) {
        i64 n = std::max(limit + 1, static_cast<i64>(spf.size()) * 2);
        spf.assign(static_cast<size_t>(n), 0);
        for (i64 i = 2; i < n; ++i) {
            if (spf[i] == 0)
                for (i64 j = i; j < n; j += i)
                    if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
        }
    }
    return spf;
}

// Divisibility of 64-bit values by a fixed odd prime as one multiply and one
// compare: d % p == 0  iff  d * inv(p) mod 2^64 <= (2^64-1)/p, and for
// divisible d that product is exactly d / p.
struct OddDivisor {
    u64 inv;
    u64 bound;
    explicit OddDivisor(u64 p) {
        u64 x = p; // Newton iteration for the inverse of p mod 2^64
        for (int i = 0; i < 5; ++i) x *= 2 - p * x;
        inv = x;
        bound = ~u64(0) / p;
    }
};

// Specialized n = 1 lane: modulus u = t - 1, digits are plain values, every
// eligible d is its own orbit. The inverse-digit construction applies to every
// coprime d with the digit pair (j, k) = (0, 0); the gcd construction covers
// the rest. Witnesses are certified inline with the same checks
// make_covering_witness performs (single-digit covering collapses to value
// comparisons).
void scan_base_n1(i64 t, const std::vector<int32_t>& spf, CoveringBlockStats& st) {
    const i64 u = t - 1;
    if (u < 3) return; // u <= 2 has no d outside {0, 1} mod u
    const MulMod mm(static_cast<u64>(u));
    u64 primes[16];
    int exps[16];
    int nprimes = 0;
    int two_exp = 0;
    {
        i64 r = u;
        while ((r & 1) == 0) { r >>= 1; ++two_exp; }
        while (r > 1) {
            i64 p = spf[r];
            int e = 0;
            while (r % p == 0) { r /= p; ++e; }
            primes[nprimes] = static_cast<u64>(p);
            exps[nprimes] = e;
            ++nprimes;
        }
    }
    OddDivisor divs[16] = {OddDivisor(3), OddDivisor(3), OddDivisor(3), OddDivisor(3),
                           OddDivisor(3), OddDivisor(3), OddDivisor(3), OddDivisor(3),
                           OddDivisor(3), OddDivisor(3), OddDivisor(3), OddDivisor(3),
                           OddDivisor(3), OddDivisor(3), OddDivisor(3), OddDivisor(3)};
    for (int i = 0; i < nprimes; ++i) divs[i] = OddDivisor(primes[i]);

    // Four interleaved product chains keep the serial mulmod latency off the
    // critical path; each lane is an independent batched-inversion chain.
    constexpr int kLanes = 4;
    constexpr int kPerLane = 512;
    u64 pend_d[kLanes][kPerLane];
    u64 prefix[kLanes][kPerLane];
    int cnt[kLanes] = {0, 0, 0, 0};
    int lane = 0;
    i64 colin = 0, vincent = 0;

    auto flush = [&]() {
        u64 acc[kLanes];
        int top = 0;
        for (int L = 0; L < kLanes; ++L) {
            acc[L] = cnt[L] ? static_cast<u64>(inv_mod(static_cast<i64>(prefix[L][cnt[L] - 1]), u))
                            : 1;
            top = std::max(top, cnt[L]);
        }
        for (int i = top - 1; i >= 0; --i) {
            for (int L = 0; L < kLanes; ++L) {
                if (i >= cnt[L]) continue;
                u64 e = (i == 0) ? acc[L] : mm(acc[L], prefix[L][i - 1]);
                u64 d = pend_d[L][i];
                acc[L] = mm(acc[L], d);
                // witness (a=1, b=e); certificate: 1 < e, and d*b = 1 < d = d*a
                if (e < 2 || mm(d, e) != 1 || d < 2)
                    throw DefectError("inverse-digit witness failed its certificate");
            }
        }
        colin += cnt[0] + cnt[1] + cnt[2] + cnt[3];
        cnt[0] = cnt[1] = cnt[2] = cnt[3] = 0;
        lane = 0;
    };

    for (i64 d = 2; d < u; ++d) {
        // branchless divisibility bitmap over the prime factors of u
        u64 hits = 0;
        for (int i = 0; i < nprimes; ++i)
            hits |= static_cast<u64>(static_cast<u64>(d) * divs[i].inv <= divs[i].bound)
                    << (i + 1);
        if (two_exp > 0 && (d & 1) == 0) hits |= 1;
        if (hits == 0) {
            int L = lane;
            int k = cnt[L];
            pend_d[L][k] = static_cast<u64>(d);
            prefix[L][k] = (k == 0) ? static_cast<u64>(d)
                                    : mm(prefix[L][k - 1], static_cast<u64>(d));
            cnt[L] = k + 1;
            lane = (L + 1) & (kLanes - 1);
            if (k + 1 == kPerLane && L == kLanes - 1) flush();
        } else {
            u64 g = 1;
            u64 rest = static_cast<u64>(d);
            if (hits & 1) {
                int v = __builtin_ctzll(rest);
                g <<= std::min(v, two_exp);
                rest >>= v;
            }
            for (int i = 0; i < nprimes; ++i) {
                if (!((hits >> (i + 1)) & 1)) continue;
                u64 q = rest * divs[i].inv;
                int v = 1;
                rest = q;
                while (v < exps[i] && (q = rest * divs[i].inv) <= divs[i].bound) {
                    rest = q;
                    ++v;
                }
                u64 pe = primes[i];
                for (int j = 1; j < v; ++j) pe *= primes[i];
                g *= pe;
            }
            // gcd construction: witness (a=1, b=u/g); certificate: 1 < b,
            // d*b = 0 < d = d*a as digits
            i64 e = u / static_cast<i64>(g);
            if (e < 2 || mm(static_cast<u64>(d), static_cast<u64>(e)) != 0)
                throw DefectError("gcd witness failed its certificate");
            ++vincent;
        }
    }
    flush();
    st.classes += u - 2;
    st.eligible += u - 2;
    st.coprime += colin;
    st.by_method[static_cast<int>(WitnessMethod::colin_inverse)] += colin;
    st.by_method[static_cast<int>(WitnessMethod::vincent_gcd)] += vincent;
}

} // namespace

CoveringBlockStats covering_scan_block(i64 t_lo, i64 t_hi, int n, i64 size_bound,
                                       bool include_perfect_powers) {
    CoveringBlockStats st;
    st.t_lo = t_lo;
    st.t_hi = t_hi;
    st.n = n;
    for (i64 t = t_lo; t <= t_hi; ++t) {
        if (!include_perfect_powers && is_perfect_power(t)) continue;
        // t^n <= size_bound
        bool fits = true;
        i64 M = 1;
        for (int i = 0; i < n; ++i) {
            if (M > size_bound / t) { fits = false; break; }
            M *= t;
        }
        if (!fits || M > size_bound) continue;
        M -= 1;
        if (M < 2) continue;

        if (n == 1) {
            scan_base_n1(t, spf_sieve_up_to(t_hi), st);
            continue;
        }

        for (i64 d = 2; d < M; ++d) {
            if (is_power_of_t_mod(t, n, M, d)) continue;
            // orbit of d under multiplication by t; process the minimum once
            i64 orbit = 1;
            i64 r = mulmod(d, t, M);
            bool minimal = true;
            while (r != d) {
                if (r < d) { minimal = false; break; }
                ++orbit;
                r = mulmod(r, t, M);
            }
            if (!minimal) continue;
            ++st.classes;
            st.eligible += orbit;
            if (std::gcd(d, M) == 1) ++st.coprime;
            try {
                CoveringWitness w = covering_witness(t, n, d);
                ++st.by_method[static_cast<int>(w.method)];
            } catch (const CounterexampleFound&) {
                st.failures.push_back(CoveringFailure{t, n, d});
            }
        }
    }
    return st;
}

} // namespace weilval
