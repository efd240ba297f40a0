#include <chrono>
#include <fstream>
#include <thread>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "weilval/conjectures.hpp"
#include "weilval/covering.hpp"
#include "weilval/cyclotomic.hpp"
#include "weilval/families.hpp"
#include "weilval/field.hpp"
#include "weilval/scan.hpp"
#include "weilval/stickelberger.hpp"
#include "weilval/weil.hpp"

using namespace weilval;
using nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string format = "table";
    std::optional<std::string> out;
    std::vector<std::string> resume_arg; // --resume [PATH]
    bool resume = false;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    i64 q_max = kDefaultQMax;
    i64 direct_cap = 4096;
    i64 size_bound = 3000000;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--out", o.out, "write records/output to this file");
    cmd->add_option("--resume", o.resume_arg,
                    "resume an interrupted scan (optionally naming the store file)")
        ->expected(0, 1);
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--q-max", o.q_max, "largest table-backed field size")
        ->envname("WEILVAL_Q_MAX");
    cmd->add_option("--direct-cap", o.direct_cap, "largest q for direct spectra")
        ->envname("WEILVAL_DIRECT_CAP");
    cmd->add_option("--size-bound", o.size_bound, "covering scan bound on t^n")
        ->envname("WEILVAL_SIZE_BOUND");
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out) {
        std::ofstream f(*o.out);
        if (!f) throw UsageError("cannot open " + *o.out);
        f << text;
    } else {
        std::cout << text;
    }
}

std::string spectrum_sum_str(const CyclotomicInteger& z) {
    if (z.p() == 2) return z.coeff(0).get_str();
    return z.str();
}

int run(int argc, char** argv) {
    CLI::App app{"exact p-adic valuations of Weil sums of binomials"};
    app.require_subcommand(1);

    CommonOpts o;

    // valuation
    auto* c_val = app.add_subcommand("valuation", "V_{F,d} for one field and exponent");
    i64 vp = 0, vd = 0;
    int vn = 1;
    std::string method = "stickelberger";
    c_val->add_option("p", vp, "characteristic")->required();
    c_val->add_option("n", vn, "extension degree")->required();
    c_val->add_option("d", vd, "exponent")->required();
    c_val->add_option("--method", method, "direct|stickelberger|both")
        ->check(CLI::IsMember({"direct", "stickelberger", "both"}));
    add_common(c_val, o);

    // spectrum
    auto* c_spec = app.add_subcommand("spectrum", "all W(a) with valuations");
    i64 sp = 0, sd = 0;
    int sn = 1;
    c_spec->add_option("p", sp)->required();
    c_spec->add_option("n", sn)->required();
    c_spec->add_option("d", sd)->required();
    add_common(c_spec, o);

    // scan
    auto* c_scan = app.add_subcommand("scan", "field suites: cecilia|ubc|moments|subfield");
    std::string suite;
    i64 q_min = 3, q_max_scan = 10000;
    c_scan->add_option("--suite", suite, "which suite")->required()
        ->check(CLI::IsMember({"cecilia", "ubc", "moments", "subfield"}));
    c_scan->add_option("--q-min", q_min, "smallest field order");
    c_scan->add_option("--q-max-scan", q_max_scan, "largest field order");
    add_common(c_scan, o);

    // covering
    auto* c_cov = app.add_subcommand("covering", "covering witnesses / sweep");
    i64 ct = 0, cd = -1;
    int cn = 0;
    i64 t_min = 2, chunk_width = 4096;
    bool detail = false, include_pp = false;
    c_cov->add_option("--t", ct, "single base t");
    c_cov->add_option("--n", cn, "single length n");
    c_cov->add_option("--d", cd, "single exponent d");
    c_cov->add_option("--t-min", t_min, "sweep start base");
    c_cov->add_option("--chunk-width", chunk_width, "bases per checkpoint");
    c_cov->add_flag("--detail", detail, "per-(t,n) records");
    c_cov->add_flag("--include-perfect-powers", include_pp, "scan perfect-power bases too");
    add_common(c_cov, o);

    // families
    auto* c_fam = app.add_subcommand("families", "named exponent families vs. measured V");
    i64 fp = 0;
    int fn = 1;
    c_fam->add_option("p", fp)->required();
    c_fam->add_option("n", fn)->required();
    add_common(c_fam, o);

    // dorothy
    auto* c_dor = app.add_subcommand("dorothy", "non-permutation coefficients for f_{v,u}");
    i64 dp = 0, dd = 0, dv = -1;
    int dn = 1;
    c_dor->add_option("p", dp)->required();
    c_dor->add_option("n", dn)->required();
    c_dor->add_option("d", dd)->required();
    c_dor->add_option("--v", dv, "single v (default: all nonzero)");
    add_common(c_dor, o);

    try {
        app.parse(argc, argv);
        for (CLI::App* sub : app.get_subcommands()) {
            if (sub->count("--resume") > 0) {
                o.resume = true;
                if (!o.resume_arg.empty() && !o.resume_arg.front().empty())
                    o.out = o.resume_arg.front();
            }
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (c_val->parsed()) {
        FieldSpec spec = make_field_spec(vp, vn, o.q_max);
        if (spec.q > 2 && std::gcd(mod_reduce(vd, spec.q - 1), spec.q - 1) != 1)
            throw UsageError("d is not coprime to q-1");
        std::optional<Valuation> v_stick, v_dir;
        double ms_stick = 0, ms_dir = 0;
        if (method != "direct") {
            auto t0 = std::chrono::steady_clock::now();
            v_stick = valuation_of_field(spec, vd);
            ms_stick = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0).count();
        }
        if (method != "stickelberger") {
            if (spec.q > o.direct_cap)
                throw UsageError("q exceeds --direct-cap for the direct method");
            auto t0 = std::chrono::steady_clock::now();
            FieldTable f = build_field(spec);
            v_dir = weil_spectrum(f, vd).v_direct;
            ms_dir = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0).count();
        }
        if (v_stick && v_dir && *v_stick != *v_dir)
            throw DefectError("direct and digit-weight valuations disagree");
        Valuation v = v_stick ? *v_stick : *v_dir;
        if (method == "both")
            std::cerr << "timings: stickelberger " << ms_stick << " ms, direct " << ms_dir
                      << " ms\n";
        std::ostringstream os;
        if (o.format == "json") {
            ordered_json j{{"p", spec.p}, {"n", spec.n}, {"q", spec.q}, {"d", vd},
                           {"V", {{"num", v.numer}, {"den", v.denom}}},
                           {"m", v.numer}, {"den", v.denom}};
            os << j.dump() << "\n";
        } else if (o.format == "csv") {
            os << "p,n,d,m,den\n" << spec.p << "," << spec.n << "," << vd << ","
               << v.numer << "," << v.denom << "\n";
        } else {
            os << "V_{F_" << spec.q << "," << vd << "} = " << v.str()
               << "  (m=" << v.numer << ", den=" << v.denom << ")\n";
        }
        emit(o, os.str());
        return 0;
    }

    if (c_spec->parsed()) {
        FieldSpec spec = make_field_spec(sp, sn, o.q_max);
        if (spec.q > o.direct_cap) throw UsageError("q exceeds --direct-cap");
        FieldTable f = build_field(spec);
        WeilSpectrum ws = weil_spectrum(f, sd);
        std::map<std::string, i64> multiset;
        for (const auto& e : ws.entries) ++multiset[spectrum_sum_str(e.sum)];
        std::ostringstream os;
        if (o.format == "json") {
            for (const auto& e : ws.entries) {
                ordered_json j{{"a", e.a},
                               {"sum", spectrum_sum_str(e.sum)},
                               {"val", e.val.infinite
                                           ? ordered_json(nullptr)
                                           : ordered_json{{"num", e.val.numer},
                                                          {"den", e.val.denom}}}};
                os << j.dump() << "\n";
            }
            ordered_json tail{{"v_direct", {{"num", ws.v_direct.numer},
                                            {"den", ws.v_direct.denom}}}};
            os << tail.dump() << "\n";
        } else if (o.format == "csv") {
            os << "a,sum,val\n";
            for (const auto& e : ws.entries)
                os << e.a << "," << spectrum_sum_str(e.sum) << "," << e.val.str() << "\n";
        } else {
            os << "W_{F_" << spec.q << "," << sd << "}:\n";
            for (const auto& e : ws.entries)
                os << "  a=" << e.a << "  val=" << e.val.str()
                   << "  sum=" << spectrum_sum_str(e.sum) << "\n";
            os << "value multiset:\n";
            for (const auto& [s, c] : multiset) os << "  " << s << "  x" << c << "\n";
            os << "V = " << ws.v_direct.str() << "\n";
        }
        emit(o, os.str());
        return 0;
    }

    if (c_scan->parsed()) {
        FieldScanParams params;
        params.suite = suite;
        params.q_min = q_min;
        params.q_max = q_max_scan;
        params.direct_cap = o.direct_cap;
        params.jobs = o.jobs;
        FieldScanResult res = run_field_scan(params, o.out, o.resume, &std::cerr);
        std::cout << "suite=" << suite << " fields=" << res.fields << " records="
                  << res.records << " violations=" << res.violations << " tight="
                  << res.tight << "\n";
        return res.ok() ? 0 : 3;
    }

    if (c_cov->parsed()) {
        if (cd >= 0) {
            if (ct < 2 || cn < 1) throw UsageError("single query needs --t and --n");
            try {
                CoveringWitness w = covering_witness(ct, cn, cd);
                std::ostringstream os;
                if (o.format == "json") {
                    ordered_json j{{"t", w.t}, {"n", w.n}, {"d", w.d}, {"a", w.a},
                                   {"b", w.b}, {"method", witness_method_name(w.method)}};
                    os << j.dump() << "\n";
                } else {
                    os << "t=" << w.t << " n=" << w.n << " d=" << w.d << "  witness a="
                       << w.a << " b=" << w.b << "  [" << witness_method_name(w.method)
                       << "]\n";
                }
                emit(o, os.str());
                return 0;
            } catch (const CounterexampleFound& e) {
                std::cerr << "COUNTEREXAMPLE CANDIDATE: " << e.what() << "\n";
                return 3;
            }
        }
        CoveringScanParams params;
        params.t_min = t_min;
        params.size_bound = o.size_bound;
        params.chunk_width = chunk_width;
        params.detail = detail;
        params.include_perfect_powers = include_pp;
        params.jobs = o.jobs;
        CoveringScanResult res = run_covering_scan(params, o.out, o.resume, &std::cerr);
        std::cout << "covering size_bound=" << params.size_bound << " classes=" << res.classes
                  << " eligible=" << res.eligible << " coprime=" << res.coprime
                  << " vincent=" << res.by_method[0] << " colin=" << res.by_method[1]
                  << " leonard=" << res.by_method[2] << " brute=" << res.by_method[3]
                  << " failures=" << res.failures.size() << "\n";
        if (!res.failures.empty()) {
            for (const auto& f : res.failures)
                std::cerr << "COUNTEREXAMPLE CANDIDATE: t=" << f.t << " n=" << f.n
                          << " d=" << f.d << "\n";
            return 3;
        }
        return 0;
    }

    if (c_fam->parsed()) {
        FieldSpec spec = make_field_spec(fp, fn, o.q_max);
        std::ostringstream os;
        bool all_ok = true;
        if (o.format == "csv") os << "family,applicable,d,predicted,measured,match\n";
        for (const FamilyPrediction& pred : all_families(spec)) {
            FamilyVerification v = verify_family(pred);
            bool row_ok = !pred.applicable || v.match;
            all_ok = all_ok && row_ok;
            if (o.format == "csv") {
                os << family_name(pred.family) << "," << (pred.applicable ? "yes" : "no") << ","
                   << pred.d << "," << pred.predicted_v.str() << ","
                   << (pred.applicable ? v.measured.str() : "") << ","
                   << (pred.applicable ? (v.match ? "yes" : "NO") : "") << "\n";
            } else if (o.format == "json") {
                ordered_json j{{"family", family_name(pred.family)},
                               {"applicable", pred.applicable},
                               {"d", pred.d},
                               {"predicted", {{"num", pred.predicted_v.num},
                                              {"den", pred.predicted_v.den}}}};
                if (pred.applicable) {
                    j["measured"] = {{"num", v.measured.numer}, {"den", v.measured.denom}};
                    j["match"] = v.match;
                } else {
                    j["reason"] = pred.reason;
                }
                if (!pred.note.empty()) j["note"] = pred.note;
                os << j.dump() << "\n";
            } else {
                os << family_name(pred.family) << ": ";
                if (!pred.applicable) {
                    os << "inapplicable (" << pred.reason << ")\n";
                } else {
                    os << "d=" << pred.d << " predicted=" << pred.predicted_v.str()
                       << " measured=" << v.measured.str()
                       << (v.match ? "  ok" : "  MISMATCH");
                    if (!pred.note.empty()) os << "  [" << pred.note << "]";
                    os << "\n";
                }
            }
        }
        emit(o, os.str());
        return all_ok ? 0 : 3;
    }

    if (c_dor->parsed()) {
        FieldSpec spec = make_field_spec(dp, dn, o.q_max);
        if (spec.q > o.direct_cap) throw UsageError("q exceeds --direct-cap");
        FieldTable f = build_field(spec);
        std::ostringstream os;
        if (o.format == "csv") os << "v,u,x1,x2\n";
        auto one = [&](i64 v) {
            DorothyWitness w = dorothy_witness(f, dd, v);
            if (o.format == "csv") {
                os << v << "," << w.u << "," << w.x1 << "," << w.x2 << "\n";
            } else if (o.format == "json") {
                ordered_json j{{"v", v}, {"u", w.u}, {"x1", w.x1}, {"x2", w.x2}};
                os << j.dump() << "\n";
            } else {
                os << "v=" << v << "  u=" << w.u << "  collision x1=" << w.x1
                   << " x2=" << w.x2 << "\n";
            }
        };
        if (dv >= 0) one(dv);
        else
            for (i64 v = 1; v < spec.q; ++v) one(v);
        emit(o, os.str());
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ViolationError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 3;
    } catch (const DefectError& e) {
        std::cerr << "internal defect: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
