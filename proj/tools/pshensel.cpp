// pshensel: benchmark and verification driver for the lazy power series
// engine. Subcommands:
//   weierstrass  time a preparation, serial vs parallel, CSV output
//   hensel       time a factorization through the stage pipeline, CSV output
//   verify       run the exact identity checks (exit 1 on failure)
//   counts       compare counted field operations against the cost model
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pseries/cost_model.hpp"
#include "pseries/families.hpp"
#include "pseries/hensel.hpp"
#include "pseries/parallel.hpp"
#include "pseries/parser.hpp"
#include "pseries/weierstrass.hpp"

using namespace pseries;

namespace {

constexpr const char* kCsvHeader =
    "family,r,k,threads,schedule,trial,wall_seconds,speedup_vs_t1,per_stage_seconds,plan";

struct CommonOpts {
    std::string family;
    int r = 6;
    int k = 50;
    bool k_given = false;
    int threads = 1;
    std::string schedule = "complexity";
    std::string plan;
    int stride = 1;
    int trials = 3;
    std::string input;
    std::string out;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

struct CsvWriter {
    std::ofstream file;
    bool to_file = false;

    explicit CsvWriter(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file)
                throw Error("cannot open output file " + path);
            to_file = true;
        }
        row(kCsvHeader);
    }
    void row(const std::string& line) {
        if (to_file)
            file << line << "\n";
        else
            std::cout << line << "\n";
    }
};

std::string plan_text(const ThreadPlan& plan) {
    std::string out;
    for (size_t i = 0; i < plan.threads.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(plan.threads[i]);
    }
    return out;
}

std::string stage_seconds_text(const std::vector<StageTiming>& timings) {
    std::ostringstream out;
    for (size_t i = 0; i < timings.size(); ++i) {
        if (i)
            out << ";";
        out << timings[i].busy_seconds;
    }
    return out.str();
}

// input label and a factory producing a fresh chain per trial
struct BenchInput {
    std::string label;
    int r;
    std::function<UPoPS()> fresh;
};

BenchInput resolve_input(const CommonOpts& opts, bool weierstrass_cmd) {
    if (!opts.input.empty()) {
        std::ifstream in(opts.input);
        if (!in)
            throw Error("cannot read " + opts.input);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        std::string label = opts.input;
        if (auto slash = label.find_last_of('/'); slash != std::string::npos)
            label = label.substr(slash + 1);
        if (auto dot = label.find_last_of('.'); dot != std::string::npos)
            label = label.substr(0, dot);
        return {label, opts.r, [text] { return parse_upops_file(text).upops; }};
    }
    if (opts.family.empty())
        throw Error("either --family or --input is required");
    Family fam = family_from_name(opts.family);
    if (weierstrass_cmd && fam != Family::U && fam != Family::V)
        throw Error("the weierstrass command expects family u or v");
    if (!weierstrass_cmd && (fam == Family::U || fam == Family::V))
        throw Error("the hensel command expects family x, y or z");
    int r = opts.r;
    return {family_name(fam) + "_" + std::to_string(r), r,
            [fam, r] { return gen_family(fam, r); }};
}

ThreadPlan parse_manual_plan(const std::string& text, int r) {
    ThreadPlan plan;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        plan.threads.push_back(std::stoi(item));
    if (static_cast<int>(plan.threads.size()) != r)
        throw Error("manual plan must list one entry per factor (" + std::to_string(r) + ")");
    if (plan.threads.back() < 1)
        throw Error("manual plan must give the last factor at least one thread");
    return plan;
}

ThreadPlan plan_for(const CommonOpts& opts, HenselFactorization& calibration) {
    if (opts.schedule == "manual")
        return parse_manual_plan(opts.plan, calibration.factor_count());
    if (opts.schedule == "complexity")
        return distribute_resources_hensel(calibration, opts.threads);
    if (opts.schedule == "time") {
        // short serial run; the measured per-factor times replace the
        // complexity figures as the work estimates
        int k_cal = std::clamp(opts.k / 10, 5, 50);
        std::vector<std::uint64_t> work;
        for (int i = 0; i < calibration.factor_count(); ++i) {
            auto t0 = std::chrono::steady_clock::now();
            calibration.factor(i).update_to(k_cal);
            work.push_back(static_cast<std::uint64_t>(seconds_since(t0) * 1e6) + 1);
        }
        work.back() = 0;
        return distribute_threads(work, opts.threads);
    }
    throw Error("unknown schedule '" + opts.schedule + "' (complexity | time | manual)");
}

int cmd_weierstrass(const CommonOpts& opts) {
    BenchInput input = resolve_input(opts, true);
    CsvWriter csv(opts.out);

    std::vector<double> serial_times;
    for (int trial = 0; trial < opts.trials; ++trial) {
        UPoPS f = input.fresh();
        WeierstrassPair pair = weierstrass_prepare(f);
        auto t0 = std::chrono::steady_clock::now();
        pair.update_to(opts.k);
        serial_times.push_back(seconds_since(t0));
        std::ostringstream row;
        row << input.label << "," << input.r << "," << opts.k << ",1,serial," << trial << ","
            << serial_times.back() << ",1,,";
        csv.row(row.str());
    }
    if (opts.threads > 1) {
        WorkerPool pool(opts.threads);
        std::vector<double> par_times;
        for (int trial = 0; trial < opts.trials; ++trial) {
            UPoPS f = input.fresh();
            WeierstrassPair pair = weierstrass_prepare(f);
            auto t0 = std::chrono::steady_clock::now();
            weierstrass_ensure_parallel(*pair.state(), opts.k, opts.threads, pool);
            par_times.push_back(seconds_since(t0));
        }
        double speedup = median(serial_times) / median(par_times);
        for (int trial = 0; trial < opts.trials; ++trial) {
            std::ostringstream row;
            row << input.label << "," << input.r << "," << opts.k << "," << opts.threads
                << ",map-reduce," << trial << "," << par_times[static_cast<size_t>(trial)] << ","
                << speedup << ",,";
            csv.row(row.str());
        }
        std::fprintf(stderr, "weierstrass %s k=%d: serial %.4fs, t=%d %.4fs, speedup %.2fx\n",
                     input.label.c_str(), opts.k, median(serial_times), opts.threads,
                     median(par_times), speedup);
    }
    return 0;
}

int cmd_hensel(const CommonOpts& opts) {
    BenchInput input = resolve_input(opts, false);
    CsvWriter csv(opts.out);

    std::vector<double> serial_times;
    for (int trial = 0; trial < opts.trials; ++trial) {
        UPoPS f = input.fresh();
        HenselFactorization fac = hensel_factorize(f);
        auto t0 = std::chrono::steady_clock::now();
        fac.update_to(opts.k);
        serial_times.push_back(seconds_since(t0));
        std::ostringstream row;
        row << input.label << "," << input.r << "," << opts.k << ",1,serial," << trial << ","
            << serial_times.back() << ",1,,";
        csv.row(row.str());
    }

    if (opts.threads > 1) {
        WorkerPool pool(opts.threads);
        std::vector<double> par_times;
        std::string plan_str;
        std::string stage_str;
        for (int trial = 0; trial < opts.trials; ++trial) {
            UPoPS f = input.fresh();
            HenselFactorization fac = hensel_factorize(f);
            ThreadPlan plan = plan_for(opts, fac);
            plan_str = plan_text(plan);
            auto t0 = std::chrono::steady_clock::now();
            std::vector<StageTiming> timings =
                hensel_factorization_pipeline(opts.k, fac, plan, pool, opts.stride);
            par_times.push_back(seconds_since(t0));
            stage_str = stage_seconds_text(timings);
        }
        double speedup = median(serial_times) / median(par_times);
        for (int trial = 0; trial < opts.trials; ++trial) {
            std::ostringstream row;
            row << input.label << "," << input.r << "," << opts.k << "," << opts.threads << ","
                << opts.schedule << "," << trial << "," << par_times[static_cast<size_t>(trial)]
                << "," << speedup << "," << stage_str << ",\"" << plan_str << "\"";
            csv.row(row.str());
        }
        std::fprintf(stderr, "hensel %s k=%d: serial %.4fs, t=%d %.4fs, speedup %.2fx, plan %s\n",
                     input.label.c_str(), opts.k, median(serial_times), opts.threads,
                     median(par_times), speedup, plan_str.c_str());
    }
    return 0;
}

bool check(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", what.c_str());
    return ok;
}

std::vector<Polynomial> truncated_factor_product(const HenselFactorization& fac, int k) {
    std::vector<UPoPS> factors;
    for (int i = 0; i < fac.factor_count(); ++i)
        factors.push_back(fac.factor(i));
    return upops_truncated_product(std::span<const UPoPS>(factors), k);
}

bool equal_coeffs(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                  unsigned n) {
    size_t hi = std::max(a.size(), b.size());
    for (size_t i = 0; i < hi; ++i) {
        Polynomial l = i < a.size() ? a[i] : Polynomial(n);
        Polynomial r = i < b.size() ? b[i] : Polynomial(n);
        if (!(l == r))
            return false;
    }
    return true;
}

int cmd_verify(const CommonOpts& opts) {
    bool all_ok = true;
    const int k = opts.k;
    const int t = opts.threads > 1 ? opts.threads : 4;

    auto verify_weierstrass = [&](const std::string& label, const UPoPS& f) {
        WeierstrassPair pair = weierstrass_prepare(f);
        pair.update_to(k);
        bool ok = true;
        for (int i = 0; i < pair.d(); ++i)
            ok = ok && pair.b(i).part(0).is_zero();
        ok = ok && !pair.c(0).part(0).is_zero();
        all_ok &= check(ok, label + " unit-and-ideal-invariants");
        std::vector<UPoPS> pa = {pair.p(), pair.alpha()};
        bool ident = equal_coeffs(upops_truncated_product(std::span<const UPoPS>(pa), k),
                                  upops_truncated(f, k), f.context()->n_vars);
        all_ok &= check(ident, label + " product-identity");
    };

    auto verify_hensel = [&](const std::string& label, const UPoPS& f,
                             const std::function<UPoPS()>& fresh) {
        HenselFactorization fac = hensel_factorize(f);
        fac.update_to(k);
        bool degrees_ok = true;
        for (int i = 0; i < fac.factor_count(); ++i)
            degrees_ok = degrees_ok &&
                         fac.factor(i).degree() == fac.roots()[static_cast<size_t>(i)].multiplicity;
        all_ok &= check(degrees_ok, label + " factor-degrees");
        bool ident = equal_coeffs(truncated_factor_product(fac, k), upops_truncated(f, k),
                                  f.context()->n_vars);
        all_ok &= check(ident, label + " product-identity");

        WorkerPool pool(t);
        HenselFactorization par = hensel_factorize(fresh());
        hensel_factorization_pipeline(k, par, distribute_resources_hensel(par, t), pool);
        bool same = true;
        for (int i = 0; i < fac.factor_count() && same; ++i)
            for (int c = 0; c <= fac.factor(i).degree() && same; ++c)
                for (int d = 0; d <= k && same; ++d)
                    same = fac.factor(i).coeff(c).part(d) == par.factor(i).coeff(c).part(d);
        all_ok &= check(same, label + " parallel-determinism");
    };

    if (!opts.input.empty()) {
        std::ifstream in(opts.input);
        if (!in)
            throw Error("cannot read " + opts.input);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        ParsedInput parsed = parse_upops_file(text);
        // an explicit --k wins over the file's ops section
        int file_k = k;
        if (!opts.k_given && parsed.ops && parsed.ops->params.count("k"))
            file_k = static_cast<int>(parsed.ops->params.at("k"));
        if (parsed.ops && parsed.ops->command == "weierstrass") {
            WeierstrassPair pair = weierstrass_prepare(parsed.upops);
            pair.update_to(file_k);
            std::vector<UPoPS> pa = {pair.p(), pair.alpha()};
            bool ident = equal_coeffs(upops_truncated_product(std::span<const UPoPS>(pa), file_k),
                                      upops_truncated(parsed.upops, file_k), parsed.n_vars);
            all_ok &= check(ident, opts.input + " product-identity");
        } else {
            HenselFactorization fac = hensel_factorize(parsed.upops);
            fac.update_to(file_k);
            bool ident = equal_coeffs(truncated_factor_product(fac, file_k),
                                      upops_truncated(parsed.upops, file_k), parsed.n_vars);
            all_ok &= check(ident, opts.input + " product-identity");
        }
    } else if (!opts.family.empty()) {
        Family fam = family_from_name(opts.family);
        std::string label = family_name(fam) + "_" + std::to_string(opts.r);
        if (fam == Family::U || fam == Family::V)
            verify_weierstrass(label, gen_family(fam, opts.r));
        else
            verify_hensel(label, gen_family(fam, opts.r),
                          [fam, &opts] { return gen_family(fam, opts.r); });
    } else {
        for (Family fam : {Family::U, Family::V})
            verify_weierstrass(family_name(fam) + "_" + std::to_string(opts.r),
                               gen_family(fam, opts.r));
        for (Family fam : {Family::X, Family::Y, Family::Z})
            verify_hensel(family_name(fam) + "_" + std::to_string(opts.r),
                          gen_family(fam, opts.r),
                          [fam, &opts] { return gen_family(fam, opts.r); });
    }
    return all_ok ? 0 : 1;
}

int cmd_counts(const std::string& kind, const CommonOpts& opts, int d, int m) {
    if (kind == "weierstrass") {
        UPoPS f = gen_counts_input(d, m);
        WeierstrassPair pair = weierstrass_prepare(f);
        ops::CountingScope scope;
        pair.update_to(opts.k);
        OpCounter counted = ops::snapshot();
        double predicted = double(weierstrass_total_cost(d, m, opts.k, true).units);
        double ratio = double(counted.total()) / predicted;
        std::printf("kind=weierstrass d=%d m=%d k=%d add=%llu mul=%llu div=%llu total=%llu "
                    "predicted=%.0f ratio=%.4f\n",
                    d, m, opts.k, (unsigned long long)counted.additions,
                    (unsigned long long)counted.multiplications,
                    (unsigned long long)counted.divisions, (unsigned long long)counted.total(),
                    predicted, ratio);
        return ratio >= 0.85 && ratio <= 1.15 ? 0 : 1;
    }
    if (kind == "hensel") {
        BenchInput input = resolve_input(opts, false);
        auto counted_at = [&](int k) {
            UPoPS f = input.fresh();
            HenselFactorization fac = hensel_factorize(f);
            ops::CountingScope scope;
            fac.update_to(k);
            return ops::snapshot().total();
        };
        std::uint64_t at_k = counted_at(opts.k);
        std::uint64_t at_half = counted_at(opts.k / 2);
        double ratio = double(at_k) / double(at_half);
        std::printf("kind=hensel family=%s k=%d total=%llu half_total=%llu doubling_ratio=%.4f\n",
                    input.label.c_str(), opts.k, (unsigned long long)at_k,
                    (unsigned long long)at_half, ratio);
        return ratio >= 3.0 && ratio <= 4.5 ? 0 : 1;
    }
    throw Error("counts --kind must be weierstrass or hensel");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lazy power series: Weierstrass preparation and Hensel factorization"};
    app.require_subcommand(1);

    CommonOpts w, h, v, c;
    std::string counts_kind = "weierstrass";
    int counts_d = 2, counts_m = 4;

    auto add_common = [](CLI::App* cmd, CommonOpts& o, bool bench) {
        cmd->add_option("--family", o.family, "built-in family (u,v,x,y,z)");
        cmd->add_option("--r", o.r, "family size parameter");
        cmd->add_option("--k", o.k, "target precision");
        cmd->add_option("--input", o.input, "read the UPoPS from a .ups file");
        if (bench) {
            cmd->add_option("--threads", o.threads, "total threads");
            cmd->add_option("--schedule", o.schedule, "complexity | time | manual");
            cmd->add_option("--plan", o.plan, "manual thread plan, e.g. 6,4,1,1");
            cmd->add_option("--stride", o.stride, "precision-signal stride");
            cmd->add_option("--trials", o.trials, "trials per configuration");
            cmd->add_option("--out", o.out, "CSV output path (default stdout)");
        }
    };

    CLI::App* cw = app.add_subcommand("weierstrass", "benchmark a preparation");
    add_common(cw, w, true);
    CLI::App* ch = app.add_subcommand("hensel", "benchmark a factorization pipeline");
    add_common(ch, h, true);
    CLI::App* cv = app.add_subcommand("verify", "run exact identity checks");
    add_common(cv, v, false);
    cv->add_option("--threads", v.threads, "threads for the determinism check");
    CLI::App* cc = app.add_subcommand("counts", "counted field operations vs cost model");
    add_common(cc, c, false);
    cc->add_option("--kind", counts_kind, "weierstrass | hensel");
    cc->add_option("--d", counts_d, "degree of p (weierstrass kind)");
    cc->add_option("--m", counts_m, "degree of alpha (weierstrass kind)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit 2, --help exits 0
    }
    v.k_given = cv->count("--k") > 0;

    try {
        if (cw->parsed())
            return cmd_weierstrass(w);
        if (ch->parsed())
            return cmd_hensel(h);
        if (cv->parsed())
            return cmd_verify(v);
        if (cc->parsed())
            return cmd_counts(counts_kind, c, counts_d, counts_m);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
