// Command-line front end: embed finite metric spaces into the universal
// half-line metric, evaluate distances, inspect the space-filling curve, and
// run the verification suites. All values are exact rationals; outputs are
// deterministic for a given seed.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unimetric/dyadic.hpp>
#include <unimetric/embed.hpp>
#include <unimetric/errors.hpp>
#include <unimetric/hilbert.hpp>
#include <unimetric/interval.hpp>
#include <unimetric/io.hpp>
#include <unimetric/metric_space.hpp>
#include <unimetric/numbers.hpp>
#include <unimetric/universal.hpp>
#include <unimetric/verify.hpp>

namespace {

using namespace unimetric;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (!path) {
        std::cout << content;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + *path + "'");
    out << content;
}

FiniteMetricSpace load_space(const std::string& path, const std::string& format) {
    std::string text = read_file(path);
    bool csv = format == "csv" || (format == "auto" && path.size() > 4 && path.substr(path.size() - 4) == ".csv");
    return csv ? parse_space_csv(text) : parse_space_json(text);
}

std::string format_point(const CubePoint& p) {
    std::string s = "(";
    for (int i = 0; i < p.dim; ++i) {
        if (i) s += ", ";
        s += format_number(p.coords[static_cast<size_t>(i)]);
    }
    return s + ")";
}

std::string format_box(const Box& b) {
    std::string s;
    for (int i = 0; i < b.lower.dim; ++i) {
        if (i) s += " x ";
        s += "[" + format_number(b.lower.coords[static_cast<size_t>(i)]) + ", " +
             format_number(b.lower.coords[static_cast<size_t>(i)] + b.side) + "]";
    }
    return s;
}

std::vector<Rational> parse_coord_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
    return out;
}

int run_embed(const std::string& input, const std::string& format, std::optional<int> depth,
              const std::string& tol_text, const std::optional<std::string>& out_path) {
    FiniteMetricSpace X = load_space(input, format);
    EmbeddingParams pr = params(X);
    int k = depth ? *depth : default_depth(pr);
    EmbeddingResult res = embed_space(X, k);
    Rational tol = parse_number(tol_text);
    CertificationReport cert = certify(X, res, tol);
    write_output(out_path, write_embedding_artifact(X, res, cert));
    std::cerr << "embedded " << X.size() << " points in J_" << res.params.n << " at depth " << res.depth
              << "; certificate " << (cert.pass ? "pass" : "FAIL") << ", worst deviation "
              << format_number(cert.worst_deviation) << " (bound " << format_number(cert.bound) << ")\n";
    return cert.pass ? 0 : 1;
}

int run_dist(const std::string& xs, const std::string& ys, const std::string& tol_text) {
    DistInterval d = universal_dist(parse_number(xs), parse_number(ys), parse_number(tol_text));
    if (is_exact(d)) std::cout << "exact " << format_number(d.lo) << "\n";
    else std::cout << "[" << format_number(d.lo) << ", " << format_number(d.hi) << "]\n";
    return 0;
}

int run_curve_map(int n, const std::string& t_text, int depth) {
    Rational t = parse_number(t_text);
    if (is_dyadic(t)) {
        std::cout << "point " << format_point(curve_point_exact(n, to_dyadic(t))) << "\n";
        return 0;
    }
    CurveCell c = curve_point(n, t, depth);
    std::cout << "cell " << c.index.str() << " depth " << c.depth << " box " << format_box(cell_box(c)) << "\n";
    return 0;
}

int run_curve_invert(int n, const std::string& point_text, int depth) {
    CubePoint y;
    y.coords = parse_coord_list(point_text);
    y.dim = static_cast<int>(y.coords.size());
    Dyadic t = preimage(n, y, depth);
    Rational resid = sup_dist(curve_point_exact(n, t), y);
    std::cout << "t = " << format_dyadic(t) << ", residual " << format_number(resid) << "\n";
    return 0;
}

struct VerifyOptions {
    std::uint64_t seed = 1;
    int samples = 200;
    int nmax = 3;
    int kmax = 2;
    int spaces = 20;
    int pmax = 6;
    int depth = 0;
    std::string lo = "-2";
    std::string hi = "5";
    std::string tol = "1e-9";
};

int run_verify(const std::string& suite, const VerifyOptions& o) {
    std::vector<CheckReport> reports;
    if (suite == "curve" || suite == "all") {
        std::vector<CheckReport> parts;
        for (int n = 1; n <= o.nmax; ++n)
            for (int k = 1; k <= o.kmax; ++k) parts.push_back(check_curve(n, k));
        reports.push_back(merge_reports("curve", parts));
    }
    if (suite == "axioms" || suite == "all")
        reports.push_back(check_axioms(o.samples, parse_number(o.lo), parse_number(o.hi), parse_number(o.tol), o.seed));
    if (suite == "isometry" || suite == "all")
        reports.push_back(check_isometry(o.spaces, o.pmax, o.depth, o.seed));
    if (suite == "modulus" || suite == "all") {
        std::vector<CheckReport> parts;
        for (int n = 1; n <= std::min(o.nmax, 4); ++n) parts.push_back(check_modulus(n, std::max(o.kmax, 1), o.samples, o.seed));
        reports.push_back(merge_reports("modulus", parts));
    }
    if (reports.empty()) throw Error("usage", "unknown suite '" + suite + "' (curve, axioms, isometry, modulus, all)");
    bool ok = true;
    for (const CheckReport& r : reports) {
        std::cout << format_check_report(r);
        ok = ok && r.pass();
    }
    std::cout << "verify: " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_gen(const std::string& kind, int p, std::uint64_t seed, const std::string& format,
            const std::optional<std::string>& out_path) {
    FiniteMetricSpace X = generate(parse_space_kind(kind), p, seed);
    write_output(out_path, format == "csv" ? write_space_csv(X) : write_space_json(X));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal half-line metric toolkit"};
    app.require_subcommand(1);

    // embed
    auto* embed = app.add_subcommand("embed", "embed a finite metric space and certify the result");
    std::string embed_input, embed_format = "auto", embed_tol = "1e-9";
    int embed_depth = 0;
    std::optional<std::string> embed_out;
    embed->add_option("--input", embed_input, "space document (JSON or CSV)")->required();
    embed->add_option("--format", embed_format, "input format: auto|structured|csv")->default_val("auto");
    embed->add_option("--depth", embed_depth, "refinement depth k (default: smallest honoring the bounds)");
    embed->add_option("--tol", embed_tol, "certification tolerance")->default_val("1e-9");
    embed->add_option("--out", embed_out, "artifact path (default: stdout)");

    // dist
    auto* dist = app.add_subcommand("dist", "evaluate the universal distance between two points");
    std::string dist_x, dist_y, dist_tol = "1e-9";
    dist->add_option("x", dist_x, "first point")->required();
    dist->add_option("y", dist_y, "second point")->required();
    dist->add_option("--tol", dist_tol, "enclosure width bound")->default_val("1e-9");

    // curve
    auto* curve = app.add_subcommand("curve", "inspect the space-filling curve f_n");
    int curve_n = 2, curve_depth = 16;
    std::string curve_mode, curve_value;
    curve->add_option("n", curve_n, "curve subscript / cube dimension")->required();
    curve->add_option("mode", curve_mode, "map (parameter -> cube) or invert (cube point -> parameter)")->required();
    curve->add_option("value", curve_value, "parameter, or comma-separated cube coordinates")->required();
    curve->add_option("--depth", curve_depth, "refinement depth")->default_val(16);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite;
    VerifyOptions vo;
    verify->add_option("suite", verify_suite, "curve|axioms|isometry|modulus|all")->required();
    verify->add_option("--seed", vo.seed, "RNG seed")->envname("UNIMETRIC_SEED");
    verify->add_option("--samples", vo.samples, "samples per sampled suite")->default_val(200);
    verify->add_option("--nmax", vo.nmax, "largest curve subscript")->default_val(3);
    verify->add_option("--kmax", vo.kmax, "largest refinement depth")->default_val(2);
    verify->add_option("--spaces", vo.spaces, "spaces for the isometry suite")->default_val(20);
    verify->add_option("--pmax", vo.pmax, "largest space size")->default_val(6);
    verify->add_option("--depth", vo.depth, "embedding depth (0 = per-space default)")->default_val(0);
    verify->add_option("--range", [&vo](const std::vector<std::string>& vals) {
        vo.lo = vals.at(0);
        vo.hi = vals.at(1);
        return true;
    }, "sampling range lo hi")->expected(2);
    verify->add_option("--tol", vo.tol, "enclosure tolerance")->default_val("1e-9");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a deterministic test space");
    std::string gen_kind, gen_format = "structured";
    int gen_p = 0;
    std::uint64_t gen_seed = 1;
    std::optional<std::string> gen_out;
    gen->add_option("kind", gen_kind, "uniform|random_euclidean|random_shortest_path")->required();
    gen->add_option("p", gen_p, "number of points")->required();
    gen->add_option("--seed", gen_seed, "RNG seed")->envname("UNIMETRIC_SEED");
    gen->add_option("--format", gen_format, "structured|csv")->default_val("structured");
    gen->add_option("--out", gen_out, "output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (embed->parsed()) {
            std::optional<int> k;
            if (embed->count("--depth") > 0) k = embed_depth;
            return run_embed(embed_input, embed_format, k, embed_tol, embed_out);
        }
        if (dist->parsed()) return run_dist(dist_x, dist_y, dist_tol);
        if (curve->parsed()) {
            if (curve_mode == "map") return run_curve_map(curve_n, curve_value, curve_depth);
            if (curve_mode == "invert") return run_curve_invert(curve_n, curve_value, curve_depth);
            throw Error("usage", "curve mode must be 'map' or 'invert'");
        }
        if (verify->parsed()) return run_verify(verify_suite, vo);
        if (gen->parsed()) return run_gen(gen_kind, gen_p, gen_seed, gen_format, gen_out);
    } catch (const DepthError& e) {
        std::cerr << "error: depth: " << e.what() << "\n";
        return 1;
    } catch (const MetricValidationError& e) {
        std::cerr << "error: " << e.axiom() << ": " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
