#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "araql/checks.hpp"
#include "araql/repl.hpp"

namespace {

int cmd_run(const std::string& script_path, const std::string& data_dir,
            const std::string& out_dir) {
    std::ifstream in(script_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open script '" << script_path << "'\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    araql::Workspace ws;
    ws.data_dir = data_dir;
    ws.out_dir = out_dir;
    auto [output, ok] = araql::run_script(buf.str(), ws);
    std::cout << output;
    return ok ? 0 : 1;
}

int cmd_repl() {
    araql::Workspace ws;
    std::string line;
    std::cerr << "araql> " << std::flush;
    while (std::getline(std::cin, line)) {
        try {
            std::cout << araql::run_line(line, ws);
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
        std::cerr << "araql> " << std::flush;
    }
    return 0;
}

int cmd_check() {
    bool all = true;
    for (const araql::CheckResult& r : araql::run_self_checks()) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"associative-array relational algebra engine"};
    app.require_subcommand(1);

    std::string script_path, data_dir, out_dir;
    CLI::App* run = app.add_subcommand("run", "execute a query script");
    run->add_option("script", script_path, "script file, one command per line")->required();
    run->add_option("--data", data_dir, "directory load paths resolve against");
    run->add_option("--out", out_dir, "directory where let-bound relations are saved");

    CLI::App* repl = app.add_subcommand("repl", "interactive command loop");
    CLI::App* check = app.add_subcommand("check", "run the built-in invariant suite");

    CLI::App* demo = app.add_subcommand("demo", "built-in demos");
    std::string which;
    demo->add_option("name", which, "demo name (bfs)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(script_path, data_dir, out_dir);
        if (repl->parsed()) return cmd_repl();
        if (check->parsed()) return cmd_check();
        if (demo->parsed()) {
            if (which != "bfs") {
                std::cerr << "error: unknown demo '" << which << "'\n";
                return 1;
            }
            std::cout << araql::bfs_demo();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
