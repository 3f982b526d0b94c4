#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "slpi/multi_interp.hpp"
#include "slpi/oracle.hpp"
#include "slpi/poly.hpp"
#include "slpi/primes.hpp"
#include "slpi/ring.hpp"
#include "slpi/slp.hpp"
#include "slpi/uni_interp.hpp"

using namespace slpi;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitAlgorithm = 3;

SparsePoly run_algo(const std::string& algo, const SlpProgram& prog, const mpz_class& D,
                    std::size_t T, const Ring& ring, ProbeMeter& meter) {
    if (algo == "uipoly") {
        ProbeOracle oracle = kron_oracle(prog, ring, D, &meter);
        return ui_poly(oracle, T, D, ring);
    }
    if (algo == "kron") return mpoly_kron(prog, D, T, ring, &meter);
    if (algo == "mpolysi") return mpoly_si(prog, D, T, ring, &meter);
    throw std::runtime_error("unknown algo: " + algo);
}

int cmd_interpolate(const std::string& circuit_path, int nvars_flag, const mpz_class& D,
                    std::size_t T, const std::string& ring_text, const std::string& algo,
                    const std::string& out_path) {
    Ring ring(RingSpec::parse(ring_text));
    std::ifstream in(circuit_path);
    if (!in) {
        std::cerr << "error: cannot open circuit file " << circuit_path << "\n";
        return kExitParse;
    }
    SlpProgram prog = SlpProgram::parse(in);
    if (nvars_flag > 0 && nvars_flag != prog.nvars()) {
        std::cerr << "error: --nvars " << nvars_flag << " disagrees with circuit header n="
                  << prog.nvars() << "\n";
        return kExitParse;
    }
    if (D < 2) {
        std::cerr << "error: --degree-bound must be >= 2\n";
        return kExitUsage;
    }
    if (algo == "uipoly" && prog.nvars() != 1) {
        std::cerr << "error: --algo uipoly requires a univariate circuit\n";
        return kExitUsage;
    }
    ProbeMeter meter;
    SparsePoly result = run_algo(algo, prog, D, T, ring, meter);
    std::string text = result.to_text();
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
    std::cerr << "probes=" << meter.probes() << " max_probe_degree=" << meter.max_probe_degree()
              << " ring_ops=" << meter.ring_ops << " terms=" << result.term_count() << "\n";
    return 0;
}

int cmd_gen(int nvars, const mpz_class& D, std::size_t T, const std::string& ring_text,
            std::uint64_t seed, std::uint64_t coeff_range, const std::string& out_base) {
    InstanceSpec spec;
    spec.nvars = nvars;
    spec.degree_bound = D;
    spec.term_bound = T;
    spec.ring = RingSpec::parse(ring_text);
    spec.seed = seed;
    spec.coeff_range = coeff_range;
    auto [poly, prog] = random_instance(spec);
    std::ofstream(out_base + ".poly") << poly.to_text();
    std::ofstream(out_base + ".slp") << prog.to_text();
    std::cerr << "wrote " << out_base << ".poly (" << poly.term_count() << " terms) and "
              << out_base << ".slp (" << prog.size() << " instructions)\n";
    return 0;
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = m * sxx - sx * sx;
    if (denom == 0) return 0.0;
    double b = (m * sxy - sx * sy) / denom;
    double a = (sy - b * sx) / m;
    double ss_res = 0, ss_tot = 0, mean = sy / m;
    for (std::size_t i = 0; i < m; ++i) {
        double fit = a + b * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    return ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

int cmd_bench(const std::string& algo, const std::string& sweep, const std::string& values_csv,
              int nvars, const mpz_class& D, std::size_t T, const std::string& ring_text,
              std::uint64_t seed, int reps, const std::string& csv_path) {
    std::vector<std::uint64_t> values;
    {
        std::istringstream vs(values_csv);
        std::string tok;
        while (std::getline(vs, tok, ',')) values.push_back(std::stoull(tok));
    }
    if (values.empty()) {
        std::cerr << "error: --values must list at least one sweep point\n";
        return kExitUsage;
    }
    if (algo == "uipoly") {
        if (sweep == "n") {
            std::cerr << "error: --algo uipoly cannot sweep n\n";
            return kExitUsage;
        }
        nvars = 1;
    }
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!csv_path.empty() && csv_path != "-") {
        file.open(csv_path);
        out = &file;
    }
    *out << "algo,n,D,T,rep,seed,wall_time,probes,max_probe_degree,ring_ops\n";

    std::vector<double> xs, ts;
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        InstanceSpec spec;
        spec.nvars = nvars;
        spec.degree_bound = D;
        spec.term_bound = T;
        spec.ring = RingSpec::parse(ring_text);
        if (sweep == "T")
            spec.term_bound = values[vi];
        else if (sweep == "D")
            spec.degree_bound = mpz_class(static_cast<unsigned long>(values[vi]));
        else if (sweep == "n")
            spec.nvars = static_cast<int>(values[vi]);
        else {
            std::cerr << "error: --sweep must be one of T, D, n\n";
            return kExitUsage;
        }
        double point_time = 0;
        for (int rep = 0; rep < reps; ++rep) {
            spec.seed = seed + 1000 * vi + static_cast<std::uint64_t>(rep);
            auto [truth, prog] = random_instance(spec);
            Ring ring(spec.ring);
            ProbeMeter meter;
            auto t0 = std::chrono::steady_clock::now();
            SparsePoly got = run_algo(algo, prog, spec.degree_bound, spec.term_bound, ring, meter);
            auto t1 = std::chrono::steady_clock::now();
            double dt = std::chrono::duration<double>(t1 - t0).count();
            point_time += dt;
            if (!(got == truth)) {
                std::cerr << "error: bench instance was not recovered exactly (seed=" << spec.seed
                          << ")\n";
                return kExitAlgorithm;
            }
            *out << algo << ',' << spec.nvars << ',' << spec.degree_bound.get_str() << ','
                 << spec.term_bound << ',' << rep << ',' << spec.seed << ',' << dt << ','
                 << meter.probes() << ',' << meter.max_probe_degree() << ',' << meter.ring_ops
                 << "\n";
        }
        xs.push_back(static_cast<double>(values[vi]));
        ts.push_back(point_time / reps);
    }

    // advisory trend fits (wall clock is machine dependent)
    auto fit = [&](const char* name, auto transform) {
        std::vector<double> tx(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) tx[i] = transform(xs[i]);
        std::cerr << "trend time~" << name << " R2=" << r_squared(tx, ts) << "\n";
    };
    if (sweep == "T") {
        fit("T^2", [](double v) { return v * v; });
    } else if (sweep == "D") {
        fit("log D", [](double v) { return std::log2(v); });
    } else {
        fit("n^2", [](double v) { return v * v; });
    }
    return 0;
}

bool check(const char* name, bool ok, int& failures) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
    return ok;
}

// an invariant that throws is a failure, not an abort; later invariants
// still run
template <typename Fn>
void run_invariant(const char* name, int& failures, Fn body) {
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception&) {
        ok = false;
    }
    check(name, ok, failures);
}

int cmd_selftest(const std::string& inject_fault) {
    if (inject_fault == "primes") slpi::testing::corrupt_prime_cache();

    int failures = 0;

    // prime table: gap-free prefix of the primes, verified by trial division
    run_invariant("primes.first_primes_gap_free", failures, [&] {
        auto ps = first_primes(64);
        bool ok = ps[0] == 2;
        std::uint64_t expect = 2;
        for (std::size_t i = 0; i < ps.size() && ok; ++i) {
            while (true) {
                bool prime = expect >= 2;
                for (std::uint64_t d = 2; d * d <= expect; ++d)
                    if (expect % d == 0) {
                        prime = false;
                        break;
                    }
                if (prime) break;
                ++expect;
            }
            ok = ps[i] == expect;
            ++expect;
        }
        return ok;
    });

    // ring axioms on random triples
    run_invariant("ring.axioms", failures, [&] {
        bool ok = true;
        for (const char* rs : {"int", "zmod:97", "zmod:12"}) {
            Ring ring(RingSpec::parse(rs));
            std::mt19937_64 rng(7);
            for (int i = 0; i < 200 && ok; ++i) {
                RingElement a = ring.canon(mpz_class(static_cast<long>(rng() % 2001) - 1000));
                RingElement b = ring.canon(mpz_class(static_cast<long>(rng() % 2001) - 1000));
                RingElement c = ring.canon(mpz_class(static_cast<long>(rng() % 2001) - 1000));
                ok = ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c)) &&
                     ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c)) &&
                     ring.is_zero(ring.sub(a, a)) && ring.canon(ring.canon(a)) == ring.canon(a);
            }
        }
        return ok;
    });

    // crt / d-adic round trips
    run_invariant("primes.crt_dadic_roundtrip", failures, [&] {
        bool ok = true;
        std::mt19937_64 rng(11);
        for (int i = 0; i < 200 && ok; ++i) {
            std::vector<std::uint64_t> mods = first_primes(2 + rng() % 5);
            mpz_class prod = 1;
            for (auto q : mods) prod *= static_cast<unsigned long>(q);
            mpz_class w(static_cast<unsigned long>(rng() % prod.get_ui()));
            std::vector<std::uint64_t> res;
            for (auto q : mods) res.push_back(mpz_class(w % q).get_ui());
            auto back = crt(res, mods, prod);
            ok = back && *back == w;
            if (ok) {
                mpz_class Dv(2 + static_cast<unsigned long>(rng() % 30));
                std::size_t nd = 1 + rng() % 5;
                mpz_class cap;
                mpz_pow_ui(cap.get_mpz_t(), Dv.get_mpz_t(), nd);
                mpz_class d(static_cast<unsigned long>(rng() % cap.get_ui()));
                auto digits = d_adic_expand(d, Dv, nd);
                mpz_class rebuilt = 0, pw = 1;
                for (auto& e : digits) {
                    rebuilt += e * pw;
                    pw *= Dv;
                }
                ok = rebuilt == d;
            }
        }
        return ok;
    });

    // probe engine agrees with the direct image of the expanded polynomial
    run_invariant("slp.probe_matches_direct_image", failures, [&] {
        bool ok = true;
        for (std::uint64_t seed = 0; seed < 20 && ok; ++seed) {
            InstanceSpec spec;
            spec.nvars = 1 + seed % 3;
            spec.degree_bound = 20;
            spec.term_bound = 6;
            spec.ring = RingSpec::parse(seed % 2 ? "zmod:101" : "int");
            spec.seed = seed;
            auto [truth, prog] = random_instance(spec);
            Ring ring(spec.ring);
            ok = dense_expand(prog, ring) == truth;
            std::mt19937_64 rng(seed);
            for (int trial = 0; trial < 5 && ok; ++trial) {
                std::uint64_t p = 2 + rng() % 40;
                ExponentMap a(spec.nvars);
                std::vector<std::uint64_t> ar(spec.nvars);
                for (int i = 0; i < spec.nvars; ++i) {
                    ar[i] = rng() % p;
                    a[i] = mpz_class(static_cast<unsigned long>(ar[i]));
                }
                ok = probe_eval(prog, ar, p, ring) == sparse_image(truth, a, p, ring);
            }
        }
        return ok;
    });

    // end-to-end recovery, all three algorithms
    run_invariant("interp.exact_recovery_small", failures, [&] {
        bool ok = true;
        for (std::uint64_t seed = 0; seed < 8 && ok; ++seed) {
            InstanceSpec spec;
            spec.nvars = 2;
            spec.degree_bound = 16;
            spec.term_bound = 4;
            spec.ring = RingSpec::parse(seed % 2 ? "zmod:101" : "int");
            spec.seed = 100 + seed;
            auto [truth, prog] = random_instance(spec);
            Ring ring(spec.ring);
            ok = mpoly_kron(prog, spec.degree_bound, spec.term_bound, ring) == truth &&
                 mpoly_si(prog, spec.degree_bound, spec.term_bound, ring) == truth;
        }
        for (std::uint64_t seed = 0; seed < 4 && ok; ++seed) {
            InstanceSpec spec;
            spec.nvars = 1;
            spec.degree_bound = 64;
            spec.term_bound = 5;
            spec.ring = RingSpec::parse("int");
            spec.seed = 200 + seed;
            auto [truth, prog] = random_instance(spec);
            Ring ring(spec.ring);
            ProbeOracle oracle = kron_oracle(prog, ring, spec.degree_bound);
            ok = ui_poly(oracle, spec.term_bound, spec.degree_bound, ring) == truth;
        }
        return ok;
    });

    if (failures) {
        std::cout << failures << " selftest invariant(s) failed\n";
        return kExitAlgorithm;
    }
    std::cout << "all selftest invariants passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic sparse interpolation of straight-line program polynomials"};
    app.require_subcommand(1);

    // interp
    std::string circuit, ring_text = "int", algo = "mpolysi", out_path;
    int nvars = 0;
    std::string degree_str = "2";
    std::size_t term_bound = 1;
    auto* interp = app.add_subcommand("interp", "Interpolate a circuit into a sparse polynomial");
    interp->add_option("--circuit", circuit, "circuit file (slp format)")->required();
    interp->add_option("--nvars", nvars, "variable count (validated against the circuit)");
    interp->add_option("--degree-bound", degree_str, "strict degree bound D > deg f")->required();
    interp->add_option("--term-bound", term_bound, "term bound T >= #f")->required();
    interp->add_option("--ring", ring_text, "coefficient ring: int | zmod:<q>");
    interp->add_option("--algo", algo, "uipoly | kron | mpolysi");
    interp->add_option("--out", out_path, "output .poly path ('-' for stdout)");

    // gen
    std::uint64_t seed = 0, coeff_range = 100;
    std::string out_base = "instance";
    auto* gen = app.add_subcommand("gen", "Generate a random instance (.poly ground truth + .slp)");
    gen->add_option("--nvars", nvars, "variable count")->required();
    gen->add_option("--degree-bound", degree_str, "degree bound D")->required();
    gen->add_option("--term-bound", term_bound, "term bound T")->required();
    gen->add_option("--ring", ring_text, "coefficient ring: int | zmod:<q>");
    gen->add_option("--seed", seed, "deterministic seed");
    gen->add_option("--coeff-range", coeff_range, "integer coefficient magnitude bound");
    gen->add_option("--out", out_base, "output base name");

    // bench
    std::string sweep = "T", values = "4,8,12,16", csv_path;
    std::string bench_algo = "mpolysi", bench_degree = "64", bench_ring = "int";
    int bench_nvars = 2, reps = 3;
    std::size_t bench_T = 8;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "Sweep one parameter and emit CSV records");
    bench->add_option("--algo", bench_algo, "uipoly | kron | mpolysi");
    bench->add_option("--sweep", sweep, "parameter to sweep: T | D | n");
    bench->add_option("--values", values, "comma-separated sweep points");
    bench->add_option("--nvars", bench_nvars, "fixed variable count");
    bench->add_option("--degree-bound", bench_degree, "fixed degree bound");
    bench->add_option("--term-bound", bench_T, "fixed term bound");
    bench->add_option("--ring", bench_ring, "coefficient ring");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--reps", reps, "repetitions per point");
    bench->add_option("--csv", csv_path, "CSV output path ('-' for stdout)");

    // selftest
    std::string inject_fault;
    auto* selftest = app.add_subcommand("selftest", "Run the invariant suite at small scale");
    selftest->add_option("--inject-fault", inject_fault, "test-mode fault injection (primes)")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        mpz_class D;
        if (D.set_str(degree_str, 10) != 0) {
            std::cerr << "error: bad --degree-bound\n";
            return kExitUsage;
        }
        if (interp->parsed())
            return cmd_interpolate(circuit, nvars, D, term_bound, ring_text, algo, out_path);
        if (gen->parsed())
            return cmd_gen(nvars, D, term_bound, ring_text, seed, coeff_range, out_base);
        if (bench->parsed()) {
            mpz_class BD;
            if (BD.set_str(bench_degree, 10) != 0) {
                std::cerr << "error: bad --degree-bound\n";
                return kExitUsage;
            }
            return cmd_bench(bench_algo, sweep, values, bench_nvars, BD, bench_T, bench_ring,
                             bench_seed, reps, csv_path);
        }
        if (selftest->parsed()) return cmd_selftest(inject_fault);
    } catch (const InterpolationError& e) {
        std::cerr << "algorithm diagnostic: " << e.what() << "\n";
        return kExitAlgorithm;
    } catch (const SlpParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}
