#include "weilval/scan.hpp"

#include <algorithm>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "weilval/conjectures.hpp"
#include "weilval/stickelberger.hpp"
#include "weilval/weil.hpp"

namespace weilval {

using nlohmann::ordered_json;

std::vector<FieldSpec> prime_powers_in(i64 q_lo, i64 q_hi) {
    std::vector<FieldSpec> out;
    for (i64 p = 2; p <= q_hi; ++p) {
        if (!is_prime(p)) continue;
        i64 q = p;
        for (int n = 1; q <= q_hi; ++n) {
            if (q >= q_lo) out.push_back(FieldSpec{p, n, q});
            if (q > q_hi / p) break;
            q *= p;
        }
    }
    return out; // already ascending by (p, n)
}

namespace {

ordered_json record_from_bound_report(const BoundReport& r) {
    ordered_json j;
    j["type"] = "rec";
    j["p"] = r.spec.p;
    j["n"] = r.spec.n;
    j["d_canonical"] = r.d_canonical;
    j["m"] = r.v.numer;
    j["den"] = r.v.denom;
    j["degenerate_levels"] = r.degenerate_levels;
    j["case_label"] = r.case_label;
    j["bound_num"] = r.bound.num;
    j["bound_den"] = r.bound.den;
    j["ok"] = r.satisfied;
    j["tight"] = r.tight;
    return j;
}

std::vector<std::string> field_chunk_records(const FieldScanParams& params,
                                             const FieldSpec& spec) {
    std::vector<std::string> lines;
    if (params.suite == "cecilia") {
        for (const BoundReport& r : cecilia_check(spec))
            lines.push_back(record_from_bound_report(r).dump());
    } else if (params.suite == "ubc") {
        if (least_odd_prime_divisor(spec.n) == 0) return lines;
        UbcReport rep = upper_bound_scan(spec);
        StickelbergerScanner scanner(spec);
        for (const ExponentClass& cls : enumerate_exponent_classes(spec)) {
            if (cls.degenerate_over_field()) continue;
            Valuation v = scanner.v(cls.d);
            ordered_json j;
            j["type"] = "rec";
            j["p"] = spec.p;
            j["n"] = spec.n;
            j["d_canonical"] = cls.d;
            j["m"] = v.numer;
            j["den"] = v.denom;
            j["degenerate_levels"] = cls.degenerate_levels();
            j["case_label"] = "ubc";
            j["bound_num"] = rep.bound.num;
            j["bound_den"] = rep.bound.den;
            j["ok"] = v.leq(rep.bound);
            j["tight"] = v.eq(rep.bound);
            lines.push_back(j.dump());
        }
        ordered_json s;
        s["type"] = "field_ubc";
        s["p"] = spec.p;
        s["n"] = spec.n;
        s["bound_num"] = rep.bound.num;
        s["bound_den"] = rep.bound.den;
        s["max_m"] = rep.max_v.infinite ? -1 : rep.max_v.numer;
        s["den"] = rep.max_v.infinite ? 1 : rep.max_v.denom;
        s["attaining"] = rep.attaining;
        s["gerald_attains"] = rep.gerald_attains;
        s["ok"] = rep.ok;
        lines.push_back(s.dump());
    } else if (params.suite == "moments") {
        if (spec.q > params.direct_cap || spec.q < 3) return lines;
        FieldTable f = build_field(spec);
        auto classes = enumerate_exponent_classes(spec);
        size_t take = std::min<size_t>(classes.size(), 3);
        for (size_t i = 0; i < take; ++i) {
            WeilSpectrum sp = weil_spectrum(f, classes[i].d); // throws on moment failure
            ordered_json j;
            j["type"] = "rec";
            j["p"] = spec.p;
            j["n"] = spec.n;
            j["d_canonical"] = classes[i].d;
            j["m"] = sp.v_direct.numer;
            j["den"] = sp.v_direct.denom;
            j["degenerate_levels"] = classes[i].degenerate_levels();
            j["case_label"] = "moments";
            j["bound_num"] = spec.n;
            j["bound_den"] = 1;
            j["ok"] = true; // spectrum construction verifies the first power moment
            j["tight"] = sp.v_direct.eq(Rational(spec.n, 1));
            lines.push_back(j.dump());
        }
    } else if (params.suite == "subfield") {
        if (spec.n < 2) return lines;
        StickelbergerScanner scanner(spec);
        for (const ExponentClass& cls : enumerate_exponent_classes(spec)) {
            Valuation vf = scanner.v(cls.d);
            bool ok = true;
            for (int m : divisors_of(spec.n)) {
                if (m == spec.n) continue;
                FieldSpec sub{spec.p, m, 1};
                i64 qk = 1;
                for (int i = 0; i < m; ++i) qk *= spec.p;
                sub.q = qk;
                Valuation vk = valuation_of_field(sub, mod_reduce(cls.d, qk - 1));
                // V_K <= V_F <= [F:K] V_K, all exact rationals
                i128 lhs = static_cast<i128>(vk.numer) * vf.denom;
                i128 mid = static_cast<i128>(vf.numer) * vk.denom;
                i128 rhs = static_cast<i128>(vk.numer) * vf.denom * (spec.n / m);
                if (!(lhs <= mid && mid <= rhs)) ok = false;
            }
            ordered_json j;
            j["type"] = "rec";
            j["p"] = spec.p;
            j["n"] = spec.n;
            j["d_canonical"] = cls.d;
            j["m"] = vf.numer;
            j["den"] = vf.denom;
            j["degenerate_levels"] = cls.degenerate_levels();
            j["case_label"] = "subfield";
            j["bound_num"] = spec.n;
            j["bound_den"] = 1;
            j["ok"] = ok;
            j["tight"] = false;
            lines.push_back(j.dump());
        }
    } else {
        throw UsageError("unknown suite: " + params.suite);
    }
    return lines;
}

void tally_field_record(const std::string& line, FieldScanResult& res) {
    auto j = nlohmann::json::parse(line);
    std::string type = j.value("type", "");
    if (type == "rec") {
        ++res.records;
        ++res.classes;
        if (!j.value("ok", false)) ++res.violations;
        if (j.value("tight", false)) ++res.tight;
    } else if (type == "field_ubc") {
        ++res.records;
        if (!j.value("ok", false)) ++res.violations;
    }
}

} // namespace

std::string field_scan_header(const FieldScanParams& params) {
    ordered_json h;
    h["type"] = "header";
    h["tool"] = "weilval";
    h["format"] = 1;
    h["scan"] = "fields";
    h["suite"] = params.suite;
    h["q_min"] = params.q_min;
    h["q_max"] = params.q_max;
    h["direct_cap"] = params.direct_cap;
    std::string canon = h.dump();
    h["config_hash"] = config_hash(canon);
    return h.dump();
}

FieldScanResult run_field_scan(const FieldScanParams& params,
                               const std::optional<std::string>& out_path, bool resume,
                               std::ostream* progress) {
    FieldScanResult res;
    std::vector<FieldSpec> fields = prime_powers_in(std::max<i64>(3, params.q_min), params.q_max);
    res.fields = static_cast<i64>(fields.size());

    std::unique_ptr<ScanStore> store;
    if (out_path)
        store = std::make_unique<ScanStore>(*out_path, field_scan_header(params), resume,
                                            [&](const std::string& line) {
                                                tally_field_record(line, res);
                                            });
    i64 first = 0;
    if (store) {
        first = store->first_pending_chunk();
        if (store->complete()) first = static_cast<i64>(fields.size());
    }

    auto compute = [&](i64 chunk) { return field_chunk_records(params, fields[chunk]); };
    auto sink = [&](i64 chunk, const std::vector<std::string>& lines) {
        for (const auto& line : lines) tally_field_record(line, res);
        if (store) store->commit_chunk(chunk, lines);
        if (progress && (chunk % 64 == 0 || chunk + 1 == res.fields))
            (*progress) << "field " << fields[chunk].p << "^" << fields[chunk].n
                        << " done (" << chunk + 1 << "/" << res.fields << ")\n";
    };
    run_chunked(first, static_cast<i64>(fields.size()), params.jobs, compute, sink);

    if (store && !store->complete()) {
        ordered_json s;
        s["type"] = "summary";
        s["fields"] = res.fields;
        s["records"] = res.records;
        s["violations"] = res.violations;
        s["tight"] = res.tight;
        s["ok"] = res.ok();
        store->finish(s.dump());
    }
    return res;
}

std::string covering_scan_header(const CoveringScanParams& params) {
    ordered_json h;
    h["type"] = "header";
    h["tool"] = "weilval";
    h["format"] = 1;
    h["scan"] = "covering";
    h["t_min"] = params.t_min;
    h["size_bound"] = params.size_bound;
    h["chunk_width"] = params.chunk_width;
    h["detail"] = params.detail;
    h["include_perfect_powers"] = params.include_perfect_powers;
    std::string canon = h.dump();
    h["config_hash"] = config_hash(canon);
    return h.dump();
}

namespace {

ordered_json record_from_block(const CoveringBlockStats& st, bool detail_row) {
    ordered_json j;
    j["type"] = "cov";
    if (detail_row) {
        j["t"] = st.t_lo;
    } else {
        j["t_lo"] = st.t_lo;
        j["t_hi"] = st.t_hi;
    }
    j["n"] = st.n;
    j["classes"] = st.classes;
    j["eligible"] = st.eligible;
    j["coprime"] = st.coprime;
    j["vincent_gcd"] = st.by_method[0];
    j["colin_inverse"] = st.by_method[1];
    j["leonard_lift"] = st.by_method[2];
    j["brute_force"] = st.by_method[3];
    ordered_json fails = ordered_json::array();
    for (const auto& f : st.failures)
        fails.push_back(ordered_json{{"t", f.t}, {"n", f.n}, {"d", f.d}});
    j["failures"] = fails;
    return j;
}

void tally_covering_record(const std::string& line, CoveringScanResult& res) {
    auto j = nlohmann::json::parse(line);
    if (j.value("type", "") != "cov") return;
    res.classes += j.value("classes", i64(0));
    res.eligible += j.value("eligible", i64(0));
    res.coprime += j.value("coprime", i64(0));
    res.by_method[0] += j.value("vincent_gcd", i64(0));
    res.by_method[1] += j.value("colin_inverse", i64(0));
    res.by_method[2] += j.value("leonard_lift", i64(0));
    res.by_method[3] += j.value("brute_force", i64(0));
    for (const auto& f : j.value("failures", nlohmann::json::array()))
        res.failures.push_back(CoveringFailure{f.value("t", i64(0)), f.value("n", 0),
                                               f.value("d", i64(0))});
}

} // namespace

CoveringScanResult run_covering_scan(const CoveringScanParams& params,
                                     const std::optional<std::string>& out_path, bool resume,
                                     std::ostream* progress) {
    CoveringScanResult res;
    const i64 t_max = params.size_bound; // n = 1 reaches every t <= size_bound
    if (params.t_min > t_max) return res;
    const i64 width = std::max<i64>(1, params.chunk_width);
    const i64 chunks = (t_max - params.t_min) / width + 1;
    res.chunks = chunks;

    std::unique_ptr<ScanStore> store;
    if (out_path)
        store = std::make_unique<ScanStore>(*out_path, covering_scan_header(params), resume,
                                            [&](const std::string& line) {
                                                tally_covering_record(line, res);
                                            });
    i64 first = 0;
    if (store) {
        first = store->first_pending_chunk();
        if (store->complete()) first = chunks;
    }

    auto compute = [&](i64 chunk) {
        const i64 t_lo = params.t_min + chunk * width;
        const i64 t_hi = std::min<i64>(t_max, t_lo + width - 1);
        std::vector<std::string> lines;
        if (params.detail) {
            for (i64 t = t_lo; t <= t_hi; ++t) {
                for (int n = 1;; ++n) {
                    i64 m = 1;
                    bool fits = true;
                    for (int i = 0; i < n; ++i) {
                        if (m > params.size_bound / t) { fits = false; break; }
                        m *= t;
                    }
                    if (!fits) break;
                    CoveringBlockStats st = covering_scan_block(t, t, n, params.size_bound,
                                                                params.include_perfect_powers);
                    if (st.classes > 0 || !st.failures.empty())
                        lines.push_back(record_from_block(st, true).dump());
                }
            }
            return lines;
        }
        for (int n = 1;; ++n) {
            // any base in [t_lo, t_hi] with t^n <= size_bound keeps n alive
            i64 m = 1;
            bool fits = true;
            for (int i = 0; i < n; ++i) {
                if (m > params.size_bound / t_lo) { fits = false; break; }
                m *= t_lo;
            }
            if (!fits) break;
            CoveringBlockStats st = covering_scan_block(t_lo, t_hi, n, params.size_bound,
                                                        params.include_perfect_powers);
            if (st.classes > 0 || !st.failures.empty())
                lines.push_back(record_from_block(st, false).dump());
        }
        return lines;
    };
    auto sink = [&](i64 chunk, const std::vector<std::string>& lines) {
        for (const auto& line : lines) tally_covering_record(line, res);
        if (store) store->commit_chunk(chunk, lines);
        if (progress && (chunk % 8 == 0 || chunk + 1 == chunks))
            (*progress) << "covering chunk " << chunk + 1 << "/" << chunks << " (t up to "
                        << std::min<i64>(t_max, params.t_min + (chunk + 1) * width - 1)
                        << ")\n";
    };
    run_chunked(first, chunks, params.jobs, compute, sink);

    if (store && !store->complete()) {
        ordered_json s;
        s["type"] = "summary";
        s["chunks"] = chunks;
        s["classes"] = res.classes;
        s["eligible"] = res.eligible;
        s["coprime"] = res.coprime;
        s["vincent_gcd"] = res.by_method[0];
        s["colin_inverse"] = res.by_method[1];
        s["leonard_lift"] = res.by_method[2];
        s["brute_force"] = res.by_method[3];
        s["failures"] = static_cast<i64>(res.failures.size());
        s["ok"] = res.ok();
        store->finish(s.dump());
    }
    return res;
}

} // namespace weilval
