#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "weilval/covering.hpp"
#include "weilval/field.hpp"
#include "weilval/store.hpp"

namespace weilval {

/// Prime powers q = p^n in [q_lo, q_hi], ascending by (p, n).
std::vector<FieldSpec> prime_powers_in(i64 q_lo, i64 q_hi);

struct FieldScanParams {
    std::string suite;       // cecilia | ubc | moments | subfield
    i64 q_min = 3;
    i64 q_max = 10000;
    i64 direct_cap = 4096;   // moments suite computes direct spectra
    int jobs = 1;
};

struct FieldScanResult {
    i64 fields = 0;
    i64 classes = 0;
    i64 records = 0;
    i64 violations = 0;
    i64 tight = 0;
    bool ok() const { return violations == 0; }
};

/// Run one field suite, optionally persisting records to a store file
/// (records are identical for any job count; resume continues a partial file
/// and replays its records into the returned totals). `progress`, when set,
/// receives occasional human-readable status lines.
FieldScanResult run_field_scan(const FieldScanParams& params,
                               const std::optional<std::string>& out_path, bool resume,
                               std::ostream* progress);

std::string field_scan_header(const FieldScanParams& params);

struct CoveringScanParams {
    i64 t_min = 2;
    i64 size_bound = 3000000;
    i64 chunk_width = 4096;  // bases per chunk / checkpoint
    bool detail = false;     // per-(t, n) records instead of per-chunk
    bool include_perfect_powers = false;
    int jobs = 1;
};

struct CoveringScanResult {
    i64 chunks = 0;
    i64 classes = 0;
    i64 eligible = 0;
    i64 coprime = 0;
    std::array<i64, 4> by_method{0, 0, 0, 0};
    std::vector<CoveringFailure> failures;
    bool ok() const { return failures.empty(); }
};

CoveringScanResult run_covering_scan(const CoveringScanParams& params,
                                     const std::optional<std::string>& out_path, bool resume,
                                     std::ostream* progress);

std::string covering_scan_header(const CoveringScanParams& params);

} // namespace weilval
