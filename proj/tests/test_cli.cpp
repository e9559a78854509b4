#include <doctest.h>

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "amdyn/cli.hpp"

using amdyn::cli::Invocation;
using nlohmann::json;

namespace {

struct RunResult {
	int rc = 0;
	std::string out;
	std::string err;
};

RunResult run_cli(const std::string& command, const std::string& config,
                  const std::string& format = "json") {
	Invocation inv;
	inv.command = command;
	inv.config_text = config;
	inv.format = format;
	std::ostringstream out, err;
	RunResult r;
	r.rc = amdyn::cli::run(inv, out, err);
	r.out = out.str();
	r.err = err.str();
	return r;
}

const char* kBorder =
    R"({"system":{"a_minus":0.6666666666666666,"b_minus":2.0,)"
    R"("a_plus":0.6666666666666666,"b_plus":2.0},"p_minus":0.5})";

} // namespace

TEST_CASE("classify reports the border type") {
	RunResult r = run_cli("classify", kBorder);
	REQUIRE(r.rc == 0);
	json doc = json::parse(r.out);
	CHECK(doc["type"] == "Border");
	CHECK(doc["x_minus"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
	// Byte-identical on a second run.
	RunResult again = run_cli("classify", kBorder);
	CHECK(again.out == r.out);
	CHECK(again.rc == 0);
}

TEST_CASE("unknown keys are rejected with context") {
	RunResult r = run_cli("lebesgue",
	                      R"({"system":{"a_minus":0.5,"b_minus":2.0,)"
	                      R"("a_plus":0.5,"b_plus":2.0},"p_minuss":0.5})");
	CHECK(r.rc == 2);
	CHECK(r.out.empty());
	json err = json::parse(r.err);
	CHECK(err["error"]["type"] == "ConfigError");
	std::string msg = err["error"]["message"];
	CHECK(msg.find("p_minuss") != std::string::npos);
	CHECK(msg.find("p_minus") != std::string::npos);  // allowed list is echoed

	RunResult nested = run_cli("classify",
	                           R"({"system":{"a_minus":0.5,"b_minus":2.0,)"
	                           R"("a_plus":0.5,"b_plus":2.0,"slope":1.0}})");
	CHECK(nested.rc == 2);
	CHECK(json::parse(nested.err)["error"]["type"] == "ConfigError");
}

TEST_CASE("missing and malformed configs fail cleanly") {
	RunResult missing = run_cli("classify", "{}");
	CHECK(missing.rc == 2);
	CHECK(json::parse(missing.err)["error"]["type"] == "ConfigError");

	RunResult broken = run_cli("classify", "{ nope");
	CHECK(broken.rc == 2);
	CHECK(json::parse(broken.err)["error"]["type"] == "ConfigError");

	RunResult both = run_cli("classify",
	                         R"({"system":{"a_minus":0.5,"b_minus":2.0,)"
	                         R"("a_plus":0.5,"b_plus":2.0},)"
	                         R"("resonant":{"rho":0.5,"k":2,"l":1}})");
	CHECK(both.rc == 2);  // system and resonant are exclusive
}

TEST_CASE("unknown commands and formats are refused") {
	CHECK(run_cli("classif", kBorder).rc == 2);
	CHECK(run_cli("classify", kBorder, "yaml").rc == 2);
	CHECK(run_cli("weights", R"({"k":2,"p_minus":0.5})", "csv").rc == 2);  // json only

	Invocation inv;
	inv.command = "classify";
	inv.config_text = kBorder;
	inv.threads = 0;
	std::ostringstream out, err;
	CHECK(amdyn::cli::run(inv, out, err) == 2);
}

TEST_CASE("simulate emits a csv trajectory") {
	const char* cfg = R"({"resonant":{"rho":0.5,"k":2,"l":1},"x0":0.25,)"
	                  R"("steps":5,"seed":3})";
	RunResult r = run_cli("simulate", cfg, "csv");
	REQUIRE(r.rc == 0);
	std::size_t lines = 0;
	for (char c : r.out)
		if (c == '\n') ++lines;
	CHECK(lines == 7u);  // header + x0 + 5 images
	CHECK(r.out.rfind("x\n", 0) == 0);
	CHECK(run_cli("simulate", cfg, "csv").out == r.out);
}

TEST_CASE("the seed flag overrides the config seed") {
	const char* cfg = R"({"resonant":{"rho":0.5,"k":2,"l":1},"steps":40,"seed":1})";
	Invocation inv;
	inv.command = "simulate";
	inv.config_text = cfg;
	inv.format = "csv";
	inv.seed_set = true;
	inv.seed = 99;
	std::ostringstream out1, err1;
	REQUIRE(amdyn::cli::run(inv, out1, err1) == 0);

	const char* cfg99 = R"({"resonant":{"rho":0.5,"k":2,"l":1},"steps":40,"seed":99})";
	RunResult direct = run_cli("simulate", cfg99, "csv");
	CHECK(out1.str() == direct.out);
	CHECK(out1.str() != run_cli("simulate", cfg, "csv").out);
}

TEST_CASE("stationary orbit histogram normalizes") {
	RunResult r = run_cli("stationary",
	                      R"({"resonant":{"rho":0.5,"k":2,"l":1},"method":"orbit",)"
	                      R"("samples":20000,"bins":32,"seed":4})");
	REQUIRE(r.rc == 0);
	json doc = json::parse(r.out);
	CHECK(doc["bins"] == 32);
	double total = 0;
	for (double m : doc["masses"]) total += m;
	CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("stationary maps nonconvergence to exit code 3") {
	RunResult r = run_cli("stationary",
	                      R"({"resonant":{"rho":0.5,"k":2,"l":1},)"
	                      R"("method":"transfer","max_iter":1,"tol":1e-16})");
	CHECK(r.rc == 3);
	json doc = json::parse(r.out);  // the result is still written
	CHECK(doc["converged"] == false);
	CHECK(doc["iterations"] == 1);
}

TEST_CASE("dimension command reports eta and the support dimension") {
	RunResult r = run_cli("dimension", R"({"resonant":{"rho":0.5,"k":2,"l":1}})");
	REQUIRE(r.rc == 0);
	json doc = json::parse(r.out);
	CHECK(doc["eta"].get<double>() == doctest::Approx(0.6180339887498949).epsilon(1e-12));
	CHECK(doc["support_dimension"].get<double>() ==
	      doctest::Approx(0.6942419136306174).epsilon(1e-9));
	CHECK(doc["critical"] == false);
}

TEST_CASE("conjugacy locate prints the central gap") {
	RunResult r = run_cli("conjugacy",
	                      R"({"mode":"locate","x":0.5,)"
	                      R"("F":{"rho":0.5,"k":2,"l":1}})");
	REQUIRE(r.rc == 0);
	json doc = json::parse(r.out);
	CHECK(doc["kind"] == "gap");
	CHECK(doc["gap"] == "U;j=0");
	CHECK(doc["offset"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("resfull output is stable") {
	RunResult r = run_cli("resfull", "");
	REQUIRE(r.rc == 0);
	json doc = json::parse(r.out);
	CHECK(doc["factorization_exact"] == true);
	CHECK(doc["rho_star"].get<double>() == doctest::Approx(0.513649).epsilon(1e-5));
	CHECK(run_cli("resfull", "").out == r.out);
}
