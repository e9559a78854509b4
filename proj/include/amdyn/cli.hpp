// Command-line front end: a thin dispatch layer over the library, driven by
// a JSON config file.  Kept out of main() so the whole surface is testable
// in-process; tools/amdyn_main.cpp only parses flags and opens streams.

#ifndef AMDYN_CLI_HPP
#define AMDYN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace amdyn::cli {

struct Invocation {
	std::string command;          // classify, lyapunov, resonance, simulate, omega,
	                              // jumps, stationary, lebesgue, support, weights,
	                              // dimension, pressure, conjugacy, resfull
	std::string config_text;      // JSON parameter object ("{}" if omitted)
	std::string config_path;      // for error messages only
	std::string format = "json";  // "json" or (tabular commands only) "csv"
	bool seed_set = false;        // --seed overrides any seed in the config
	std::uint64_t seed = 0;
	int threads = 1;
};

// Exit status: 0 success, 2 any reported error, 3 an iteration that did not
// converge (result JSON is still written in that case).
int run(const Invocation& inv, std::ostream& out, std::ostream& err);

} // namespace amdyn::cli

#endif
