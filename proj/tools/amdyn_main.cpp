// amdyn: command-line driver.  All substance lives in the library; this file
// only parses flags, loads the config file and routes the output stream.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "amdyn/cli.hpp"

namespace {

const char* const kCommands[] = {
    "classify", "lyapunov", "resonance", "simulate", "omega",  "jumps",
    "stationary", "lebesgue", "support",  "weights",  "dimension",
    "pressure", "conjugacy", "resfull",
};

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Random interval dynamics: two-branch piecewise-linear systems,\n"
	             "their stationary measures and resonant self-similar structure"};
	app.require_subcommand(0, 0);

	amdyn::cli::Invocation inv;
	std::string output_path;

	app.add_option("command", inv.command, "one of: classify lyapunov resonance simulate omega jumps\n"
	                                       "stationary lebesgue support weights dimension pressure\n"
	                                       "conjugacy resfull")
	    ->required();
	app.add_option("-c,--config", inv.config_path, "JSON parameter file (default: empty config)");
	app.add_option("-o,--output", output_path, "write the result here instead of stdout");
	app.add_option("-f,--format", inv.format, "json (default) or csv for tabular commands");
	auto* seed_opt = app.add_option("-s,--seed", inv.seed, "override the config seed");
	app.add_option("-t,--threads", inv.threads, "worker threads for orbit ensembles");

	CLI11_PARSE(app, argc, argv);
	inv.seed_set = seed_opt->count() > 0;

	bool known = false;
	for (const char* c : kCommands)
		if (inv.command == c) known = true;
	if (!known) {
		std::cerr << R"({"error":{"type":"ConfigError","message":"unknown command \")"
		          << inv.command << R"(\""}})" << "\n";
		return 2;
	}

	if (!inv.config_path.empty()) {
		std::ifstream in(inv.config_path, std::ios::binary);
		if (!in) {
			std::cerr << R"({"error":{"type":"IoError","message":"cannot open config file )"
			          << inv.config_path << R"("}})" << "\n";
			return 2;
		}
		std::ostringstream ss;
		ss << in.rdbuf();
		inv.config_text = ss.str();
	}

	if (output_path.empty()) return amdyn::cli::run(inv, std::cout, std::cerr);

	std::ofstream out(output_path, std::ios::binary);
	if (!out) {
		std::cerr << R"({"error":{"type":"IoError","message":"cannot open output file )"
		          << output_path << R"("}})" << "\n";
		return 2;
	}
	int rc = amdyn::cli::run(inv, out, std::cerr);
	out.flush();
	if (!out) {
		std::cerr << R"({"error":{"type":"IoError","message":"failed writing )"
		          << output_path << R"("}})" << "\n";
		return 2;
	}
	return rc;
}
