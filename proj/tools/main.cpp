#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hffs/bounds.hpp"
#include "hffs/full_model.hpp"
#include "hffs/instance_gen.hpp"
#include "hffs/io.hpp"
#include "hffs/lbbd.hpp"
#include "hffs/report.hpp"

namespace fs = std::filesystem;
using namespace hffs;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kFail = 1;  // invalid input or schedule

Instance load_instance(const std::string& path) {
    Instance inst = instance_from_json(read_file(path));
    const auto v = validate_instance(inst);
    if (!v.empty()) {
        std::string msg = path + ": invalid instance";
        for (const auto& x : v) msg += "\n  " + x.to_string();
        throw IoError(msg);
    }
    return inst;
}

std::string opt_str(const std::optional<Time>& v) { return v ? std::to_string(*v) : "-"; }

struct GenerateArgs {
    int group = 0;
    int jobs = 0;
    int stages = 0;
    int variant = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, const CLI::App& sub) {
    GenSpec spec;
    spec.group = a.group;
    spec.jobs = a.jobs;
    spec.seed = a.seed;
    if (a.group == 2) {
        if (sub.count("--stages") == 0 || sub.count("--variant") == 0)
            throw CLI::ValidationError("group 2 needs --stages and --variant");
        spec.stages = a.stages;
        spec.variant = a.variant;
    } else if (sub.count("--stages") || sub.count("--variant")) {
        throw CLI::ValidationError("--stages and --variant apply to group 2 only");
    }
    const Instance inst = generate(spec);
    write_file(a.out, instance_to_json(inst));
    std::printf("jobs %d, stages %d, machines %d, W %d\n", inst.num_jobs(), inst.num_stages(), inst.num_machines(),
                inst.workers_total);
    return kOk;
}

int cmd_bounds(const std::string& path, const std::string& out) {
    const Instance inst = load_instance(path);
    const BoundReport r = best_lb(inst);
    std::printf("LB1 %lld\nLB2 %lld\nLB3 %lld\nLB4 %s\nLB5 %s\nLB6 %s\nLB7 %s\nLB8 %lld\nBest LB %lld\n",
                static_cast<long long>(r.lb1), static_cast<long long>(r.lb2), static_cast<long long>(r.lb3),
                opt_str(r.lb4).c_str(), opt_str(r.lb5).c_str(), opt_str(r.lb6).c_str(), opt_str(r.lb7).c_str(),
                static_cast<long long>(r.lb8), static_cast<long long>(r.best));
    if (!out.empty()) write_file(out, bounds_to_json(r));
    return kOk;
}

struct SolveArgs {
    std::string instance;
    std::string method = "lbbd";
    double time_limit = 1800;
    double master_time_limit = 300;
    long node_budget = -1;
    int max_iterations = -1;
    std::uint64_t seed = 0;
    std::string out;
    std::string log;
    std::string csv;
    std::string name;
    bool timings = false;
    bool cold = false;
};

int cmd_solve(const SolveArgs& a) {
    const Instance inst = load_instance(a.instance);
    const bool by_nodes = a.node_budget >= 0;
    RunLog log;
    if (a.method == "cp") {
        engine::SearchParams p;
        p.seed = a.seed;
        if (by_nodes) p.node_limit = a.node_budget;
        else p.time_limit = a.time_limit;
        const SolveOutcome out = solve_full(inst, p, !a.cold);
        log.best_lb = best_lb(inst).best;
        log.lb = std::max(out.search.lower_bound, log.best_lb);
        if (out.schedule) {
            log.ub = out.schedule->makespan;
            log.schedule = out.schedule;
        }
        log.nodes = out.search.nodes;
        log.seconds = out.search.seconds;
        if (log.ub && log.lb >= *log.ub) {
            log.lb = *log.ub;
            log.status = "optimal";
        } else {
            log.status = engine::to_string(out.search.status);
        }
    } else {
        LbbdBudget b;
        if (by_nodes) {
            b.master_nodes = a.node_budget;
            b.sub_nodes = a.node_budget;
            b.max_iterations = a.max_iterations >= 0 ? a.max_iterations : 50;
        } else {
            b.total_time = a.time_limit;
            b.master_time = a.master_time_limit;
            b.max_iterations = a.max_iterations;
        }
        log = run_lbbd(inst, b, a.seed);
    }

    if (log.schedule && !a.out.empty()) write_file(a.out, schedule_to_json(inst, *log.schedule));
    if (!a.log.empty()) write_file(a.log, runlog_to_json(log, a.timings));

    ResultRow row;
    row.instance = a.name.empty() ? fs::path(a.instance).stem().string() : a.name;
    row.best_lb = log.best_lb;
    row.lb = log.lb;
    row.ub = log.ub;
    row.iterations = a.method == "cp" ? 1 : static_cast<int>(log.iterations.size());
    row.nodes = log.nodes;
    row.wall_time = log.seconds;
    row.status = log.status;
    const std::string line = to_csv_line(row);
    std::printf("%s\n%s\n", kResultsHeader, line.c_str());
    if (!a.csv.empty()) {
        const bool fresh = !fs::exists(a.csv) || fs::file_size(a.csv) == 0;
        std::ofstream f(a.csv, std::ios::app);
        if (!f) throw IoError("cannot write " + a.csv);
        if (fresh) f << kResultsHeader << '\n';
        f << line << '\n';
    }
    return kOk;
}

int cmd_validate(const std::string& ipath, const std::string& spath) {
    const Instance inst = load_instance(ipath);
    const Schedule s = schedule_from_json(inst, read_file(spath));
    const auto v = validate_schedule(inst, s);
    if (v.empty()) {
        std::printf("valid, makespan %lld\n", static_cast<long long>(s.makespan));
        return kOk;
    }
    for (const auto& x : v) std::printf("%s\n", x.to_string().c_str());
    std::printf("%zu violation(s)\n", v.size());
    return kFail;
}

int cmd_report(const std::vector<std::string>& files, const std::string& format, const std::string& out) {
    std::vector<MethodResults> methods;
    for (const auto& f : files) methods.push_back({fs::path(f).stem().string(), parse_results_csv(read_file(f))});
    const auto cells = aggregate(methods);
    const std::string text = format == "csv" ? cells_to_csv(cells) : cells_to_text(cells);
    if (out.empty()) std::fputs(text.c_str(), stdout);
    else write_file(out, text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid flexible flowshop with buffers, transport and workers"};
    app.require_subcommand(1);

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "write a random instance");
    gen->add_option("--group", ga.group, "instance group")->required()->check(CLI::IsMember({1, 2}));
    gen->add_option("--jobs", ga.jobs, "number of jobs")->required()->check(CLI::PositiveNumber);
    gen->add_option("--stages", ga.stages, "stages (group 2)")->check(CLI::Range(2, 4));
    gen->add_option("--variant", ga.variant, "machine variant (group 2)")->check(CLI::IsMember({1, 2}));
    gen->add_option("--seed", ga.seed, "random seed");
    gen->add_option("-o,--output", ga.out, "instance file")->required();

    std::string bpath, bout;
    auto* bnd = app.add_subcommand("bounds", "print LB1-LB8 and the best lower bound");
    bnd->add_option("instance", bpath)->required();
    bnd->add_option("-o,--output", bout, "write the bounds as JSON");

    SolveArgs sa;
    auto* sol = app.add_subcommand("solve", "solve an instance");
    sol->add_option("instance", sa.instance)->required();
    sol->add_option("--method", sa.method)->check(CLI::IsMember({"cp", "lbbd"}))->capture_default_str();
    sol->add_option("--time-limit", sa.time_limit, "seconds")->capture_default_str();
    sol->add_option("--master-time-limit", sa.master_time_limit, "seconds per master solve")->capture_default_str();
    sol->add_option("--node-budget", sa.node_budget, "node limit per search; ignores wall time");
    sol->add_option("--max-iterations", sa.max_iterations, "decomposition iterations (50 under --node-budget)");
    sol->add_option("--seed", sa.seed)->capture_default_str();
    sol->add_option("-o,--output", sa.out, "schedule file");
    sol->add_option("--log", sa.log, "run log JSON");
    sol->add_flag("--timings", sa.timings, "include wall-clock times in the run log");
    sol->add_flag("--no-warm-start", sa.cold, "cp: search without the constructive schedule");
    sol->add_option("--csv", sa.csv, "append the result row to this CSV");
    sol->add_option("--name", sa.name, "instance name in the result row");

    std::string vinst, vsched;
    auto* val = app.add_subcommand("validate", "check a schedule against an instance");
    val->add_option("instance", vinst)->required();
    val->add_option("schedule", vsched)->required();

    std::vector<std::string> rfiles;
    std::string rformat = "text", rout;
    auto* rep = app.add_subcommand("report", "aggregate result CSVs, one file per method");
    rep->add_option("results", rfiles, "CSV files")->required();
    rep->add_option("--format", rformat)->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
    rep->add_option("-o,--output", rout);

    try {
        app.parse(argc, argv);
        if (*gen) return cmd_generate(ga, *gen);
        if (*bnd) return cmd_bounds(bpath, bout);
        if (*sol) return cmd_solve(sa);
        if (*val) return cmd_validate(vinst, vsched);
        if (*rep) return cmd_report(rfiles, rformat, rout);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    }
    return kOk;
}
