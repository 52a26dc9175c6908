// Command-line front end for the convolution benchmark harness.
//
//   bench run     --experiment 3 --primitive standard --path fast --out exp3.csv
//   bench sweep   --plan plan.txt --out grid.csv
//   bench regress --in grid.csv --x macs --y latency
//   bench cost    --kind shift --kernel 3 --width 32 --in-ch 16 --out-ch 16
//   bench verify  --seed 7 --cases 500

#include "qconv/bench.hpp"
#include "qconv/costmodel.hpp"
#include "qconv/error.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

enum Exit { ok = 0, config_error = 1, verification_failure = 2, io_error = 3 };

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << '\n';
}

} // namespace

int main(int argc, char** argv) {
    using namespace qconv;
    CLI::App app{"Quantized convolution primitive benchmark harness"};
    app.require_subcommand(1);

    int experiment = 1;
    std::string primitive = "standard";
    std::string path = "ref";
    int repeats = bench::default_repeats;
    std::uint64_t seed = 1;
    std::string out_file;
    auto* run = app.add_subcommand("run", "Run one experiment of the default plan");
    run->add_option("--experiment", experiment, "Experiment id")->required()->check(CLI::Range(1, 5));
    run->add_option("--primitive", primitive, "standard|grouped|dwsep|shift|add")->required();
    run->add_option("--path", path, "ref|fast")->required();
    run->add_option("--repeats", repeats, "Timed invocations per sweep point")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Seed for inputs and weights");
    run->add_option("--out", out_file, "Output CSV")->required();

    std::string plan_file;
    auto* sweep = app.add_subcommand("sweep", "Run a plan file over its primitive x path grid");
    sweep->add_option("--plan", plan_file, "Plan file")->required();
    sweep->add_option("--out", out_file, "Output CSV")->required();

    std::string in_file;
    std::string x_axis = "macs";
    std::string y_axis = "latency";
    auto* regress = app.add_subcommand("regress", "Least-squares fit over a results CSV");
    regress->add_option("--in", in_file, "Input CSV")->required();
    regress->add_option("--x", x_axis, "macs|latency");
    regress->add_option("--y", y_axis, "latency");

    std::string kind = "standard";
    int kernel = 3, width = 32, in_ch = 16, out_ch = 16, groups = 1;
    auto* cost_cmd = app.add_subcommand("cost", "Print parameter and MAC counts for one layer");
    cost_cmd->add_option("--kind", kind, "standard|grouped|dwsep|shift|add")->required();
    cost_cmd->add_option("--kernel", kernel)->required();
    cost_cmd->add_option("--width", width)->required();
    cost_cmd->add_option("--in-ch", in_ch)->required();
    cost_cmd->add_option("--out-ch", out_ch)->required();
    cost_cmd->add_option("--groups", groups, "Groups (grouped convolution only)");

    int cases = 500;
    auto* verify = app.add_subcommand("verify", "Check fast kernels against the reference kernels");
    verify->add_option("--seed", seed);
    verify->add_option("--cases", cases)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        if (*run) {
            const auto plan = bench::default_plan(experiment);
            const auto result =
                bench::run_experiment(plan, parse_primitive(primitive), parse_path(path), repeats, seed);
            print_warnings(result.warnings);
            bench::emit_csv(result.records, out_file);
            std::cout << "wrote " << result.records.size() << " rows to " << out_file << '\n';
        } else if (*sweep) {
            const auto plan = bench::load_plan(plan_file);
            const auto result = bench::run_sweep(plan);
            print_warnings(result.warnings);
            bench::emit_csv(result.records, out_file);
            std::cout << "wrote " << result.records.size() << " rows to " << out_file << '\n';
        } else if (*regress) {
            const auto y = bench::parse_axis(y_axis);
            if (y != bench::Axis::latency)
                throw ConfigError("--y must be latency");
            const auto records = bench::read_csv(in_file);
            const auto r = bench::regress(records, bench::parse_axis(x_axis), y);
            std::printf("x=%s y=%s n=%zu slope=%.6g intercept=%.6g r2=%.6f\n", r.x_name.c_str(), r.y_name.c_str(),
                        records.size(), r.slope, r.intercept, r.r2);
        } else if (*cost_cmd) {
            const auto spec = bench::make_bench_spec(parse_primitive(kind), {groups, kernel, width, in_ch, out_ch});
            const auto c = cost(spec);
            std::cout << "kind=" << to_string(spec.kind) << " params=" << c.params << " macs=" << c.macs
                      << " param_gain=" << c.param_gain << " complexity_gain=" << c.complexity_gain << '\n';
        } else if (*verify) {
            const auto report = bench::verify_fast_path(seed, cases);
            for (const auto& m : report.messages)
                std::cout << "FAIL " << m << '\n';
            std::cout << (report.passed() ? "PASS" : "FAIL") << ": " << report.cases - report.failures << "/"
                      << report.cases << " configurations bit-exact\n";
            return report.passed() ? ok : verification_failure;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io_error;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
    return ok;
}
