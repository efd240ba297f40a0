#pragma once

#include <vector>

#include "weilval/common.hpp"

namespace weilval {

/// Default cap on table-backed field sizes. Tables are O(q), so this bounds
/// memory; overridable per call and from the CLI.
inline constexpr i64 kDefaultQMax = 1 << 20;

/// Parameters of a finite field F_{p^n}.
struct FieldSpec {
    i64 p = 2;
    int n = 1;
    i64 q = 2; // p^n, derived

    i64 unit_group_order() const { return q - 1; }
};

/// Validates p prime, n >= 1 and p^n <= q_max; computes q.
FieldSpec make_field_spec(i64 p, int n, i64 q_max = kDefaultQMax);

/// An explicit finite field F_q = F_p[x]/(modulus) with exp/log tables for a
/// fixed primitive element and a precomputed absolute trace table.
///
/// Elements are dense indices in [0, q): index sum(a_i * p^i) encodes the
/// coset representative sum(a_i * x^i). Immutable once built; safe to share
/// across threads.
class FieldTable {
public:
    FieldTable(FieldSpec spec, std::vector<int> modulus);

    const FieldSpec& spec() const { return spec_; }
    i64 p() const { return spec_.p; }
    int n() const { return spec_.n; }
    i64 q() const { return spec_.q; }

    /// Monic irreducible modulus, coefficient i of x^i, length n+1.
    const std::vector<int>& modulus() const { return modulus_; }
    i64 generator() const { return generator_; }

    i64 exp(i64 k) const { return exp_[k]; }          // g^k, 0 <= k < q-1
    i64 log(i64 x) const;                              // inverse of exp; x != 0
    int trace(i64 x) const { return trace_[x]; }       // Tr(x) in [0, p)

    i64 add(i64 a, i64 b) const;
    i64 sub(i64 a, i64 b) const;
    i64 neg(i64 a) const;
    i64 mul(i64 a, i64 b) const;

    /// x^d with 0^0 = 1 and 0^d = 0 for d > 0; for x != 0 the exponent is
    /// reduced modulo q-1 through the log table.
    i64 pow(i64 x, i64 d) const;

    const std::vector<int32_t>& exp_table() const { return exp_; }
    const std::vector<int32_t>& log_table() const { return log_; }
    const std::vector<int32_t>& trace_table() const { return trace_; }

private:
    void build_tables();
    void check_tables() const;

    FieldSpec spec_;
    std::vector<int> modulus_;
    i64 generator_ = 0;
    std::vector<int32_t> exp_;
    std::vector<int32_t> log_;
    std::vector<int32_t> trace_;
};

/// Builds F_{p^n} with the deterministic modulus: the first monic irreducible
/// polynomial in ascending order of the base-p integer encoding of its
/// coefficient vector. Rebuilding the same spec yields bit-identical tables.
FieldTable build_field(const FieldSpec& spec);

/// Build with an explicit monic modulus (degree n, coefficient i of x^i).
/// Irreducibility is verified. Intended for representation-independence
/// checks; the production path is build_field(spec).
FieldTable build_field_with_modulus(const FieldSpec& spec, const std::vector<int>& modulus);

/// The k-th monic irreducible polynomial of degree n over F_p in the
/// deterministic scan order (k = 0 is the one build_field uses).
std::vector<int> find_irreducible(const FieldSpec& spec, int skip = 0);

/// Irreducibility over F_p via x^{p^n} = x mod f together with
/// gcd(x^{p^{n/r}} - x, f) = 1 for every prime r | n.
bool poly_is_irreducible(i64 p, const std::vector<int>& f);

} // namespace weilval
