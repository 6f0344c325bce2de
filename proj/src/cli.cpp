#include "trotter/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "trotter/combinatorics.hpp"
#include "trotter/errors.hpp"
#include "trotter/experiments.hpp"
#include "trotter/metrics.hpp"
#include "trotter/products.hpp"
#include "trotter/service.hpp"

namespace trotter {

namespace {

struct MatrixArgs {
    std::string a;
    std::string b;
    std::vector<std::string> extra;
};

struct RunArgs {
    int n = 0;
    std::string mode = "exhaustive";
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    std::optional<double> threshold;
    std::string output;
    std::string format = "json";
    unsigned threads = 0;
    int cap = kDefaultEnumerationCap;
};

std::string decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

std::string with_decimal(const Fraction& f) { return f.to_string() + " (" + decimal(f.to_double()) + ")"; }

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read matrix file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed matrix JSON in " + path + ": " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const Error& e) {
        throw ParseError("malformed matrix JSON in " + path + ": " + e.what());
    }
}

MatrixTuple load_tuple(const MatrixArgs& args) {
    std::vector<ComplexMatrix> ms;
    ms.push_back(read_matrix_file(args.a));
    ms.push_back(read_matrix_file(args.b));
    for (const auto& p : args.extra) ms.push_back(read_matrix_file(p));
    return MatrixTuple(std::move(ms));
}

RunMode make_mode(const RunArgs& args) {
    if (args.mode == "exhaustive") {
        RunMode m = RunMode::exhaustive();
        m.seed = args.seed;
        return m;
    }
    if (args.count == 0) throw DomainError("--mode sample needs --count >= 1");
    return RunMode::sample(args.count, args.seed);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write output file " + path);
    f << text;
}

void add_matrix_options(CLI::App* cmd, MatrixArgs& m) {
    cmd->add_option("--a", m.a, "JSON file holding the first matrix")->required();
    cmd->add_option("--b", m.b, "JSON file holding the second matrix")->required();
    cmd->add_option("--matrix", m.extra, "JSON files holding further matrices, in order");
}

void add_run_options(CLI::App* cmd, RunArgs& r, bool with_threshold) {
    cmd->add_option("--n", r.n, "letters per symbol")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--mode", r.mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
    cmd->add_option("--count", r.count, "number of sampled words (sample mode)");
    cmd->add_option("--seed", r.seed, "random seed");
    if (with_threshold) cmd->add_option("--threshold", r.threshold, "distance threshold (default sqrt(ln n / n))");
    cmd->add_option("--output", r.output, "output file (default stdout)");
    cmd->add_option("--threads", r.threads, "worker threads (default: available parallelism)");
    cmd->add_option("--cap", r.cap, "largest word length N*n accepted for exhaustive runs");
}

std::string sweep_line(const std::string& name, std::optional<int> n0) {
    return name + " n0=" + (n0 ? std::to_string(*n0) : std::string("none")) + "\n";
}

} // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Products of matrix exponentials over words"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string());

    // enumerate
    int enum_n = 0, enum_alphabet = 2, enum_cap = kDefaultEnumerationCap;
    std::string enum_output;
    auto* enumerate = app.add_subcommand("enumerate", "List every word with n copies of each letter");
    enumerate->add_option("--n", enum_n, "letters per symbol")->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--alphabet", enum_alphabet, "alphabet size N");
    enumerate->add_option("--cap", enum_cap, "largest word length N*n accepted");
    enumerate->add_option("--output", enum_output, "output file (default stdout)");

    // metrics
    std::string word1, word2;
    auto* metrics = app.add_subcommand("metrics", "Swap distance, rho_1, rho_inf and tau of two words");
    metrics->add_option("--word1", word1, "first word, e.g. AABB")->required();
    metrics->add_option("--word2", word2, "second word")->required();

    // bounds
    int bounds_n = 0, bounds_m = 0, bounds_alphabet = 2, bounds_cap = kDefaultEnumerationCap;
    auto* bounds = app.add_subcommand("bounds", "Count words far from the standard word and the reflection bound");
    bounds->add_option("--n", bounds_n, "letters per symbol")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--m", bounds_m, "level M")->required()->check(CLI::NonNegativeNumber);
    bounds->add_option("--alphabet", bounds_alphabet, "alphabet size N");
    bounds->add_option("--cap", bounds_cap, "largest word length N*n accepted");

    // trotter
    MatrixArgs trotter_m;
    int trotter_n = 0;
    auto* trotter_cmd = app.add_subcommand("trotter", "Lie-Trotter error against its first-order bound");
    trotter_cmd->add_option("--a", trotter_m.a, "JSON file holding A")->required();
    trotter_cmd->add_option("--b", trotter_m.b, "JSON file holding B")->required();
    trotter_cmd->add_option("--n", trotter_n, "number of factor pairs")->required()->check(CLI::PositiveNumber);

    // bound-sweep
    MatrixArgs sweep_m;
    int sweep_max = 64;
    std::uint64_t sweep_seed = 0;
    auto* sweep = app.add_subcommand("bound-sweep", "Smallest n from which each matrix inequality holds");
    sweep->add_option("--a", sweep_m.a, "JSON file holding A")->required();
    sweep->add_option("--b", sweep_m.b, "JSON file holding B")->required();
    sweep->add_option("--max-n", sweep_max, "largest n in the sweep")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_seed, "seed for the sampled words of the one-swap sweep");

    // concentrate
    MatrixArgs conc_m;
    RunArgs conc_r;
    auto* concentrate = app.add_subcommand("concentrate", "Proportion of products near exp(A+B)");
    add_matrix_options(concentrate, conc_m);
    add_run_options(concentrate, conc_r, true);

    // cloud
    MatrixArgs cloud_m;
    RunArgs cloud_r;
    auto* cloud = app.add_subcommand("cloud", "Point cloud of all products F(w)");
    add_matrix_options(cloud, cloud_m);
    add_run_options(cloud, cloud_r, false);
    cloud->add_option("--format", cloud_r.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // as-run
    MatrixArgs as_m;
    std::vector<int> as_n_values;
    std::uint64_t as_seed = 0;
    std::string as_output;
    auto* as_run = app.add_subcommand("as-run", "One random word per n and its distance to exp(A+B)");
    add_matrix_options(as_run, as_m);
    as_run->add_option("--n-values", as_n_values, "strictly increasing n values")->required()->delimiter(',');
    as_run->add_option("--seed", as_seed, "random seed");
    as_run->add_option("--output", as_output, "output file (default stdout)");

    // appendix-check
    int app_n = 0;
    double app_tol = 1e-12;
    auto* appendix = app.add_subcommand("appendix-check",
                                        "Compare the closed form for A = E12, B = E11 with direct products");
    appendix->add_option("--n", app_n, "letters per symbol")->required()->check(CLI::PositiveNumber);
    appendix->add_option("--tolerance", app_tol, "largest accepted Frobenius deviation");

    // serve
    int serve_port = port_from_env();
    std::string serve_host = "127.0.0.1";
    unsigned serve_threads = 0;
    auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON service");
    serve->add_option("--port", serve_port, "listen port (default $TROTTER_PORT or 8080)");
    serve->add_option("--host", serve_host, "listen address");
    serve->add_option("--threads", serve_threads, "worker threads per request");

    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (*enumerate) {
            std::ostringstream text;
            for_each_word(enum_n, enum_alphabet, [&](const Word& w) { text << w.to_string() << '\n'; }, enum_cap);
            emit(text.str(), enum_output, out);
        } else if (*metrics) {
            const Word w = Word::parse(word1);
            const Word v = Word::parse(word2, w.alphabet());
            out << "dsw=" << swap_distance(w, v) << '\n'
                << "rho1=" << with_decimal(rho1(w, v)) << '\n'
                << "rho_inf=" << with_decimal(rho_inf(w, v)) << '\n'
                << "tau_word1=" << with_decimal(tau(w)) << '\n'
                << "tau_word2=" << with_decimal(tau(v)) << '\n';
        } else if (*bounds) {
            if (bounds_m > bounds_n) throw DomainError("--m must not exceed --n");
            const Fraction threshold = bounds_alphabet == 2 ? Fraction(bounds_m, bounds_n)
                                                            : Fraction(2 * bounds_m + 2, bounds_n);
            const ProportionBound pb = count_words_far(bounds_n, threshold, bounds_alphabet, bounds_cap);
            const BigRational ratio(pb.count_far, pb.total);
            const BigRational bound_ratio(pb.bound, pb.total);
            out << "threshold=" << threshold.to_string() << '\n'
                << "count_far=" << pb.count_far << '\n'
                << "total=" << pb.total << '\n'
                << "bound=" << pb.bound << '\n'
                << "ratio=" << ratio << " (" << decimal(static_cast<double>(pb.ratio)) << ")\n"
                << "bound_ratio=" << bound_ratio << " (" << decimal(static_cast<double>(bound_ratio)) << ")\n"
                << "holds=" << (pb.count_far <= pb.bound ? "true" : "false") << '\n';
        } else if (*trotter_cmd) {
            const ComplexMatrix a = read_matrix_file(trotter_m.a);
            const ComplexMatrix b = read_matrix_file(trotter_m.b);
            const BoundCheck c = check_lie_trotter(a, b, trotter_n);
            const double frob = norm(lie_trotter(a, b, trotter_n) - expm(a + b), NormKind::frobenius);
            char buf[256];
            std::snprintf(buf, sizeof buf, "n=%d\nerror_one=%.17g\nerror_frobenius=%.17g\nbound=%.17g\nholds=%s\n",
                          trotter_n, c.lhs, frob, c.rhs, c.holds ? "true" : "false");
            out << buf;
        } else if (*sweep) {
            const MatrixTuple t = load_tuple(sweep_m);
            const ComplexMatrix& a = t[0];
            const ComplexMatrix& b = t[1];
            out << sweep_line("lemma7_product_vs_sum",
                              find_threshold_n([&](int n) { return check_lemma7(a, b, n).first.holds; }, sweep_max));
            out << sweep_line("lemma7_commuted_factors",
                              find_threshold_n([&](int n) { return check_lemma7(a, b, n).second.holds; }, sweep_max));
            out << sweep_line("lie_trotter",
                              find_threshold_n([&](int n) { return check_lie_trotter(a, b, n).holds; }, sweep_max));
            out << sweep_line("one_swap", find_threshold_n(
                                              [&](int n) {
                                                  const ExpCache cache(t, n);
                                                  std::mt19937_64 rng(sweep_seed);
                                                  for (int s = 0; s < 8; ++s) {
                                                      const Word w = sample_word(n, 2, rng);
                                                      for (std::size_t i = 0; i + 1 < w.size(); ++i)
                                                          if (w[i] != w[i + 1] && !check_one_swap(w, i, t, cache).holds)
                                                              return false;
                                                  }
                                                  return true;
                                              },
                                              sweep_max));
        } else if (*concentrate) {
            const MatrixTuple t = load_tuple(conc_m);
            ExperimentOptions opts{conc_r.cap, conc_r.threads};
            const ConcentrationReport r = concentration_experiment(t, conc_r.n, make_mode(conc_r), conc_r.threshold, opts);
            emit(render_json(report_to_json(r)), conc_r.output, out);
        } else if (*cloud) {
            const MatrixTuple t = load_tuple(cloud_m);
            ExperimentOptions opts{cloud_r.cap, cloud_r.threads};
            const PointCloud c = generate_point_cloud(t, cloud_r.n, make_mode(cloud_r), opts);
            emit(cloud_r.format == "csv" ? cloud_to_csv(c) : render_json(cloud_to_json(c)), cloud_r.output, out);
        } else if (*as_run) {
            const MatrixTuple t = load_tuple(as_m);
            emit(render_json(almost_sure_to_json(almost_sure_run(t, as_n_values, as_seed))), as_output, out);
        } else if (*appendix) {
            const MatrixTuple t(ComplexMatrix::unit(2, 1, 2), ComplexMatrix::unit(2, 1, 1));
            const ExpCache cache(t, app_n);
            double worst = 0.0;
            std::uint64_t count = 0;
            for_each_word(app_n, 2, [&](const Word& w) {
                worst = std::max(worst, norm(appendix_closed_form(w) - product_F(w, cache)));
                ++count;
            });
            char buf[160];
            std::snprintf(buf, sizeof buf, "words=%llu\nmax_deviation=%.17g\ntolerance=%.3g\n",
                          static_cast<unsigned long long>(count), worst, app_tol);
            out << buf;
            if (!(worst <= app_tol)) {
                err << "error: closed form deviates from direct products by " << worst << '\n';
                return kExitNumerical;
            }
        } else if (*serve) {
            Server server(ServiceOptions{serve_threads});
            const int port = server.bind(serve_host, serve_port);
            err << "listening on " << serve_host << ":" << port << '\n';
            server.listen();
        }
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: internal failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace trotter
