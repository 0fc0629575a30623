#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "finsler/ladder.hpp"
#include "finsler/suite.hpp"

using namespace finsler;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void apply_seed_override(RunConfig& cfg)
{
    const char* env = std::getenv("FINSLER_SEED");
    if (!env || !*env) return;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || env[0] == '-') throw ConfigError("FINSLER_SEED must be a non-negative integer");
    cfg.seed = v;
}

std::string list(const std::vector<double>& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
    return out + "]";
}

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

Sample point_or_first(const Example& ex, const std::vector<double>& x, const std::vector<double>& y)
{
    Sample s = ex.domain->samples(1, 0).front();
    if (!x.empty()) s.x = x;
    if (!y.empty()) s.y = y;
    if (!ex.domain->contains(s.x, s.y)) throw DomainError("point outside the domain of '" + ex.name + "': " + describe(s));
    return s;
}

DiffEngine engine_named(const std::string& method, double step_scale)
{
    RunConfig c;
    c.diff_method = method;
    c.step_scale = step_scale;
    return engine_of(c);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Anisotropic tensor calculus on conic domains"};
    app.require_subcommand(1);

    std::string config_path;
    auto* check = app.add_subcommand("check", "Run the checks named in a JSON config");
    check->add_option("config", config_path, "Config file")->required();

    std::string example, object, method = "analytic";
    std::vector<double> x, y;
    double step_scale = 1.0;
    auto* eval = app.add_subcommand("eval", "Evaluate an object of an example at one point");
    eval->add_option("example", example)->required();
    eval->add_option("object", object, "One of: L ell phi g spray N berwald chern landsberg cartan torsion "
                                       "legendre_residue nonlinear_residue")
        ->required();
    eval->add_option("--x", x)->expected(1, -1);
    eval->add_option("--y", y)->expected(1, -1);
    eval->add_option("--diff-method", method)->check(CLI::IsMember({"analytic", "fd4"}));
    eval->add_option("--step-scale", step_scale);

    int to_level = 0;
    auto* ladder = app.add_subcommand("ladder", "Decompose an object of an example down the ladder");
    ladder->add_option("example", example)->required();
    ladder->add_option("--object", object)->default_val("g");
    ladder->add_option("--to-level", to_level)->default_val(0);
    ladder->add_option("--x", x)->expected(1, -1);
    ladder->add_option("--y", y)->expected(1, -1);
    ladder->add_option("--diff-method", method)->check(CLI::IsMember({"analytic", "fd4"}));

    double dt = 0.01;
    int steps = 100;
    auto* geodesic = app.add_subcommand("geodesic", "Integrate the spray of an example");
    geodesic->add_option("example", example)->required();
    geodesic->add_option("--x0", x)->required()->expected(1, -1);
    geodesic->add_option("--y0", y)->required()->expected(1, -1);
    geodesic->add_option("--dt", dt)->default_val(0.01);
    geodesic->add_option("--steps", steps)->default_val(100)->check(CLI::NonNegativeNumber);

    int samples = 200;
    std::uint64_t seed = 0;
    auto* report = app.add_subcommand("report", "Run every check on every registered example");
    report->add_option("--samples", samples)->default_val(200)->check(CLI::PositiveNumber);
    report->add_option("--seed", seed)->default_val(0);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            RunConfig cfg = parse_config(read_file(config_path));
            apply_seed_override(cfg);
            const auto reports = run_suite(cfg);
            std::cout << render_report(cfg, reports);
            return all_pass(reports) ? 0 : 1;
        }
        if (*eval) {
            const DiffEngine engine = engine_named(method, step_scale);
            const Example ex = make_example(example, engine);
            const TensorField f = example_object(ex, object, engine);
            const Sample s = point_or_first(ex, x, y);
            std::cout << "{\n  \"alpha\": " << format_number(f.alpha()) << ",\n  \"example\": " << quote(example)
                      << ",\n  \"name\": " << quote(f.name()) << ",\n  \"object\": " << quote(object)
                      << ",\n  \"type\": [" << f.contra() << ", " << f.co() << "],\n  \"values\": "
                      << list(f.evaluate(s.x, s.y)) << ",\n  \"x\": " << list(s.x) << ",\n  \"y\": " << list(s.y)
                      << "\n}\n";
            return 0;
        }
        if (*ladder) {
            const DiffEngine engine = engine_named(method, 1.0);
            const Example ex = make_example(example, engine);
            const TensorField f = example_object(ex, object, engine);
            if (to_level < 0 || to_level > f.co())
                throw LevelError("--to-level must lie between 0 and the covariant rank " + std::to_string(f.co()));
            const int beta = integer_alpha(f) + (f.co() - to_level);
            const LadderDecomposition d = decompose(f, beta, engine);
            const Sample s = point_or_first(ex, x, y);
            const std::vector<double> orig = f.evaluate(s.x, s.y);
            const std::vector<double> back = reconstruct(d, engine).evaluate(s.x, s.y);
            double defect = 0.0;
            for (std::size_t i = 0; i < orig.size(); ++i) defect = std::max(defect, std::abs(orig[i] - back[i]));
            std::cout << "{\n  \"base\": " << list(d.base.evaluate(s.x, s.y)) << ",\n  \"base_alpha\": "
                      << format_number(d.base.alpha()) << ",\n  \"object\": " << quote(f.name())
                      << ",\n  \"reconstruction_defect\": " << format_number(defect) << ",\n  \"residues\": [";
            for (std::size_t k = 0; k < d.residues.size(); ++k)
                std::cout << (k ? ", " : "") << list(d.residues[k].evaluate(s.x, s.y));
            std::cout << "],\n  \"x\": " << list(s.x) << ",\n  \"y\": " << list(s.y) << "\n}\n";
            return 0;
        }
        if (*geodesic) {
            const Example ex = make_example(example);
            const Spray g = ex.lagrangian ? canonical_spray(*ex.lagrangian)
                                          : ex.nonlinear ? lower_connection(*ex.nonlinear)
                                                         : throw ConfigError("example '" + example + "' has no spray");
            const Trajectory t = geodesic_integrate(g, x, y, dt, steps);
            std::cout << "{\n  \"final\": {\"x\": " << list(t.states.back().x) << ", \"y\": " << list(t.states.back().y)
                      << "},\n  \"reason\": " << quote(t.reason) << ",\n  \"steps_taken\": " << t.states.size() - 1
                      << ",\n  \"truncated\": " << (t.truncated ? "true" : "false") << "\n}\n";
            return t.truncated ? 1 : 0;
        }
        if (*report) {
            bool ok = true;
            std::cout << "{\n\"runs\": [\n";
            const auto names = example_names();
            for (std::size_t k = 0; k < names.size(); ++k) {
                RunConfig cfg;
                cfg.example = names[k];
                cfg.samples = samples;
                cfg.seed = seed;
                apply_seed_override(cfg);
                const auto reports = run_suite(cfg);
                ok = ok && all_pass(reports);
                std::string body = render_report(cfg, reports);
                body.pop_back();
                std::cout << body << (k + 1 < names.size() ? ",\n" : "\n");
            }
            std::cout << "]\n}\n";
            return ok ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
