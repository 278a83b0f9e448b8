#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fnmatch.h>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nlpl/io.hpp"
#include "nlpl/runner.hpp"

namespace fs = std::filesystem;
using namespace nlpl;

namespace {

int run_one(const std::string& path, bool quiet = false) {
    ParseOutcome parsed = parse_config(path);
    if (!parsed.config) {
        for (const auto& e : parsed.errors) std::cerr << path << ": " << e << "\n";
        return 2;
    }
    try {
        RunResult res = execute_run(*parsed.config);
        if (!quiet) std::cout << res.report.to_text();
        if (res.exit_code != 0) {
            for (const auto& c : res.report.checks)
                if (c.status == CheckStatus::fail)
                    std::cerr << path << ": audit failed: " << c.name << "\n";
        }
        return res.exit_code;
    } catch (const InvalidParameter& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 1;
    }
}

std::vector<std::string> expand_glob(const std::string& pattern) {
    fs::path pat(pattern);
    fs::path dir = pat.parent_path().empty() ? "." : pat.parent_path();
    const std::string leaf = pat.filename().string();
    std::vector<std::string> out;
    if (fs::exists(pattern) && fs::is_regular_file(pattern)) return {pattern};
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (fnmatch(leaf.c_str(), name.c_str(), 0) == 0)
            out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

int worker_count() {
    if (const char* env = std::getenv("NLPL_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

int cmd_sweep(const std::string& pattern) {
    const std::vector<std::string> paths = expand_glob(pattern);
    if (paths.empty()) {
        std::cerr << "sweep: no configs match " << pattern << "\n";
        return 2;
    }
    const int workers = std::min<int>(worker_count(), static_cast<int>(paths.size()));
    std::vector<int> codes(paths.size(), 0);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= paths.size()) return;
            codes[i] = run_one(paths[i], true);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    int worst = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::cout << paths[i] << ": "
                  << (codes[i] == 0 ? "pass" : codes[i] == 1 ? "audit failure" : "config error")
                  << "\n";
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

int report_exit(const DiagnosticsReport& rep) {
    std::cout << rep.to_text();
    return rep.all_passed() ? 0 : 1;
}

int cmd_verify(const std::string& suite) {
    if (suite == "inequalities") return report_exit(verify_inequalities());
    if (suite == "oracle") return report_exit(verify_oracle());
    if (suite == "invariants") return report_exit(verify_invariants());
    if (suite == "all") {
        DiagnosticsReport rep = verify_inequalities();
        DiagnosticsReport b = verify_oracle();
        DiagnosticsReport c = verify_invariants();
        rep.checks.insert(rep.checks.end(), b.checks.begin(), b.checks.end());
        rep.checks.insert(rep.checks.end(), c.checks.begin(), c.checks.end());
        return report_exit(rep);
    }
    std::cerr << "verify: unknown suite '" << suite
              << "' (expected inequalities, oracle, invariants, all)\n";
    return 2;
}

int cmd_figures() {
    int worst = 0;
    for (const RunConfig& cfg : {figure1_preset(), figure2_preset()}) {
        try {
            RunResult res = execute_run(cfg);
            std::cout << cfg.output_dir << ":\n" << res.report.to_text();
            worst = std::max(worst, res.exit_code);
        } catch (const std::exception& e) {
            std::cerr << cfg.output_dir << ": " << e.what() << "\n";
            worst = std::max(worst, 1);
        }
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal p-Laplacian evolution simulator"};
    app.require_subcommand(1);

    std::string config_path, sweep_pattern, suite;
    auto* run = app.add_subcommand("run", "Execute one configured run");
    run->add_option("config", config_path, "key=value config file")->required();
    auto* sweep = app.add_subcommand("sweep", "Execute all configs matching a glob");
    sweep->add_option("pattern", sweep_pattern, "config file glob")->required();
    auto* verify = app.add_subcommand("verify", "Run a built-in verification suite");
    verify->add_option("suite", suite, "inequalities | oracle | invariants | all")
        ->required();
    app.add_subcommand("figures", "Reproduce the two built-in figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) return run_one(config_path);
    if (sweep->parsed()) return cmd_sweep(sweep_pattern);
    if (verify->parsed()) return cmd_verify(suite);
    return cmd_figures();
}
