#pragma once

#include <array>
#include <string>
#include <vector>

#include "weilval/common.hpp"

namespace weilval {

/// Digitwise comparison in base t on Z/(t^n - 1): every digit of a at most
/// the matching digit of b. covers_strictly additionally requires a != b.
bool covers(i64 t, int n, i64 a, i64 b);
bool covers_strictly(i64 t, int n, i64 a, i64 b);

enum class WitnessMethod { vincent_gcd, colin_inverse, leonard_lift, brute_force };
const char* witness_method_name(WitnessMethod m);

/// A certified pair (a, b) with a nonzero, b nonzero, a strictly covered by b
/// and d*b strictly covered by d*a in Z/(t^n - 1). Construct through
/// make_covering_witness, which re-checks all four facts independently of how
/// the pair was found.
struct CoveringWitness {
    i64 t = 2;
    int n = 1;
    i64 d = 0;
    i64 a = 0;
    i64 b = 0;
    WitnessMethod method = WitnessMethod::brute_force;
};

CoveringWitness make_covering_witness(i64 t, int n, i64 d, i64 a, i64 b, WitnessMethod m);

/// Thrown when an exhaustive witness search comes up empty; that would be a
/// counterexample to the covering conjecture and is surfaced loudly.
struct CounterexampleFound : ViolationError {
    using ViolationError::ViolationError;
};

/// Witness search cascade: the gcd construction when 1 < gcd(d, t^n-1),
/// the inverse-digit construction when coprime, lifting from a proper
/// divisor of n, and finally brute force (ascending b, then ascending a over
/// strict digit-subvectors of b). Deterministic; first hit wins.
/// Preconditions: t >= 2, d mod t^n - 1 neither 0 nor a power of t.
CoveringWitness covering_witness(i64 t, int n, i64 d);

struct CoveringFailure {
    i64 t = 0;
    int n = 0;
    i64 d = 0;
};

struct CoveringBlockStats {
    i64 t_lo = 0, t_hi = 0;
    int n = 1;
    i64 classes = 0;    // d values examined (one per d -> t*d orbit)
    i64 eligible = 0;   // total eligible d covered by those orbits
    i64 coprime = 0;    // classes with gcd(d, t^n-1) = 1
    std::array<i64, 4> by_method{0, 0, 0, 0}; // indexed by WitnessMethod
    std::vector<CoveringFailure> failures;
};

/// Scan one contiguous block of bases [t_lo, t_hi] for one n: every eligible
/// d modulo t^n - 1 up to the d -> t*d symmetry gets a witness, found by the
/// cascade and certified independently. Bases over size_bound^(1/n) and
/// (unless requested) perfect powers are skipped. Certificate failures throw
/// DefectError; missing witnesses are recorded as failures.
CoveringBlockStats covering_scan_block(i64 t_lo, i64 t_hi, int n, i64 size_bound,
                                       bool include_perfect_powers);

bool is_perfect_power(i64 t);

} // namespace weilval
