#include "amdyn/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "amdyn/am_system.hpp"
#include "amdyn/conjugacy.hpp"
#include "amdyn/dynamics.hpp"
#include "amdyn/errors.hpp"
#include "amdyn/measure.hpp"
#include "amdyn/resonant.hpp"

namespace amdyn::cli {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

bool log_enabled() {
	const char* v = std::getenv("AMDYN_LOG");
	return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void logline(std::ostream& err, const std::string& msg) {
	if (log_enabled()) err << "[amdyn] " << msg << "\n";
}

// ---- config access -------------------------------------------------------

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& j, const char* where,
                std::initializer_list<const char*> allowed) {
	if (!j.is_object()) bad(std::string(where) + " must be a JSON object");
	for (auto it = j.begin(); it != j.end(); ++it) {
		bool ok = false;
		for (const char* a : allowed)
			if (it.key() == a) { ok = true; break; }
		if (!ok) {
			std::string list;
			for (const char* a : allowed) {
				if (!list.empty()) list += ", ";
				list += a;
			}
			bad("unknown key \"" + it.key() + "\" in " + where +
			    " (allowed: " + (list.empty() ? "none" : list) + ")");
		}
	}
}

double as_number(const json& v, const std::string& name) {
	if (!v.is_number()) bad(name + " must be a number");
	return v.get<double>();
}

double number_at(const json& j, const char* key, const char* where) {
	if (!j.contains(key)) bad(std::string(where) + " is missing required key \"" + key + "\"");
	return as_number(j.at(key), std::string(where) + "." + key);
}

double number_or(const json& j, const char* key, double dflt) {
	if (!j.contains(key)) return dflt;
	return as_number(j.at(key), std::string("\"") + key + "\"");
}

long long int_at(const json& j, const char* key, const char* where) {
	if (!j.contains(key)) bad(std::string(where) + " is missing required key \"" + key + "\"");
	const json& v = j.at(key);
	if (!v.is_number_integer()) bad(std::string(where) + "." + key + " must be an integer");
	return v.get<long long>();
}

long long int_or(const json& j, const char* key, long long dflt) {
	if (!j.contains(key)) return dflt;
	const json& v = j.at(key);
	if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
	return v.get<long long>();
}

std::string string_or(const json& j, const char* key, const std::string& dflt) {
	if (!j.contains(key)) return dflt;
	const json& v = j.at(key);
	if (!v.is_string()) bad(std::string("\"") + key + "\" must be a string");
	return v.get<std::string>();
}

ResonantSystem resonant_from(const json& cfg) {
	if (!cfg.contains("resonant")) bad("config requires a \"resonant\" object");
	const json& r = cfg.at("resonant");
	check_keys(r, "\"resonant\"", {"rho", "k", "l", "p_minus"});
	ResonantSystem res;
	res.rho = number_at(r, "rho", "\"resonant\"");
	res.k = static_cast<int>(int_at(r, "k", "\"resonant\""));
	res.l = static_cast<int>(int_at(r, "l", "\"resonant\""));
	res.p_minus = number_or(r, "p_minus", 0.5);
	return res;
}

// Either an explicit slope quadruple or a resonant parameter triple.
AmSystem system_from(const json& cfg) {
	if (cfg.contains("system") && cfg.contains("resonant"))
		bad("give either \"system\" or \"resonant\", not both");
	if (cfg.contains("system")) {
		const json& s = cfg.at("system");
		check_keys(s, "\"system\"", {"a_minus", "b_minus", "a_plus", "b_plus"});
		return new_system(number_at(s, "a_minus", "\"system\""),
		                  number_at(s, "b_minus", "\"system\""),
		                  number_at(s, "a_plus", "\"system\""),
		                  number_at(s, "b_plus", "\"system\""));
	}
	if (cfg.contains("resonant")) return from_resonance(resonant_from(cfg));
	bad("config requires a \"system\" or \"resonant\" object");
}

// p_minus lives either at top level or inside "resonant".
double p_minus_from(const json& cfg) {
	if (cfg.contains("p_minus")) return number_at(cfg, "p_minus", "config");
	if (cfg.contains("resonant") && cfg.at("resonant").contains("p_minus"))
		return as_number(cfg.at("resonant").at("p_minus"), "\"resonant\".p_minus");
	return 0.5;
}

std::uint64_t seed_from(const json& cfg, const Invocation& inv) {
	if (inv.seed_set) return inv.seed;
	if (!cfg.contains("seed")) return 0;
	const json& v = cfg.at("seed");
	if (!v.is_number_integer()) bad("\"seed\" must be an integer");
	return v.get<std::uint64_t>();
}

void require_json_format(const Invocation& inv) {
	if (inv.format != "json")
		bad("command \"" + inv.command + "\" only supports --format json");
}

const char* class_name(SystemClass c) {
	switch (c) {
		case SystemClass::Disjoint: return "Disjoint";
		case SystemClass::Border: return "Border";
		default: return "Overlapping";
	}
}

void emit(std::ostream& out, const ojson& doc) { out << doc.dump(2) << "\n"; }

// ---- commands ------------------------------------------------------------

int cmd_classify(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"system", "resonant", "p_minus"});
	AmSystem sys = system_from(cfg);
	double p = p_minus_from(cfg);
	LyapunovPair lam = lyapunov_exponents(sys, p);
	ojson doc;
	doc["type"] = class_name(classify_type(sys));
	doc["x_minus"] = sys.x_minus;
	doc["x_plus"] = sys.x_plus;
	doc["fm_xm"] = sys.fm_xm;
	doc["fp_xp"] = sys.fp_xp;
	doc["p_minus"] = p;
	doc["lambda0"] = lam.lambda0;
	doc["lambda1"] = lam.lambda1;
	emit(out, doc);
	return 0;
}

int cmd_lyapunov(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"system", "resonant", "p_minus"});
	AmSystem sys = system_from(cfg);
	double p = p_minus_from(cfg);
	LyapunovPair lam = lyapunov_exponents(sys, p);
	ojson doc;
	doc["p_minus"] = p;
	doc["lambda0"] = lam.lambda0;
	doc["lambda1"] = lam.lambda1;
	emit(out, doc);
	return 0;
}

int cmd_resonance(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"system", "resonant", "endpoint", "max_denominator", "tol"});
	AmSystem sys = system_from(cfg);
	int endpoint = static_cast<int>(int_or(cfg, "endpoint", 0));
	int maxq = static_cast<int>(int_or(cfg, "max_denominator", 64));
	double tol = number_or(cfg, "tol", 1e-9);
	auto hit = detect_resonance(sys, endpoint, maxq, tol);
	ojson doc;
	doc["endpoint"] = endpoint;
	doc["found"] = hit.has_value();
	if (hit) {
		doc["k"] = hit->first;
		doc["l"] = hit->second;
	}
	emit(out, doc);
	return 0;
}

int cmd_simulate(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
	check_keys(cfg, "config", {"system", "resonant", "p_minus", "x0", "steps", "seed"});
	AmSystem sys = system_from(cfg);
	double p = p_minus_from(cfg);
	double x0 = number_or(cfg, "x0", 0.5);
	auto steps = static_cast<std::size_t>(int_or(cfg, "steps", 1000));
	std::uint64_t seed = seed_from(cfg, inv);
	logline(err, "simulate: " + std::to_string(steps) + " steps");
	Orbit orb = orbit(sys, x0, sample_word(seed, steps, p));
	if (inv.format == "csv") {
		char buf[64];
		out << "x\n";
		for (double x : orb.points) {
			std::snprintf(buf, sizeof buf, "%.12g\n", x);
			out << buf;
		}
		return 0;
	}
	ojson doc;
	doc["x0"] = x0;
	doc["seed"] = seed;
	doc["p_minus"] = p;
	doc["points"] = orb.points;
	emit(out, doc);
	return 0;
}

int cmd_omega(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
	check_keys(cfg, "config", {"system", "resonant", "p_minus", "x0", "n_orbits",
	                           "length", "min_jumps", "tail", "seed"});
	AmSystem sys = system_from(cfg);
	double p = p_minus_from(cfg);
	double x0 = number_or(cfg, "x0", 0.5);
	auto n_orbits = static_cast<std::size_t>(int_or(cfg, "n_orbits", 200));
	auto length = static_cast<std::size_t>(int_or(cfg, "length", 2000));
	auto min_jumps = static_cast<std::size_t>(int_or(cfg, "min_jumps", 1));
	auto tail = static_cast<std::size_t>(int_or(cfg, "tail", 50));
	std::uint64_t seed = seed_from(cfg, inv);
	logline(err, "omega: " + std::to_string(n_orbits) + " orbits on " +
	                 std::to_string(inv.threads) + " thread(s)");
	std::vector<double> pts = omega_limit_sample(sys, p, x0, n_orbits, length,
	                                             min_jumps, tail, seed, inv.threads);
	if (inv.format == "csv") {
		char buf[64];
		out << "x\n";
		for (double x : pts) {
			std::snprintf(buf, sizeof buf, "%.12g\n", x);
			out << buf;
		}
		return 0;
	}
	ojson doc;
	doc["count"] = pts.size();
	doc["seed"] = seed;
	doc["points"] = pts;
	emit(out, doc);
	return 0;
}

int cmd_jumps(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"system", "resonant", "p_minus", "x0", "steps", "seed"});
	AmSystem sys = system_from(cfg);
	double p = p_minus_from(cfg);
	double x0 = number_or(cfg, "x0", 0.5);
	auto steps = static_cast<std::size_t>(int_or(cfg, "steps", 1000));
	std::uint64_t seed = seed_from(cfg, inv);
	JumpRecord rec = detect_jumps(sys, orbit(sys, x0, sample_word(seed, steps, p)));
	ojson doc;
	doc["gap_lo"] = rec.gap_lo;
	doc["gap_hi"] = rec.gap_hi;
	doc["count"] = rec.times.size();
	doc["times"] = rec.times;
	emit(out, doc);
	return 0;
}

ojson density_json(const PiecewiseDensity& d) {
	ojson doc;
	doc["breaks"] = d.breaks;
	doc["values"] = d.values;
	return doc;
}

int cmd_stationary(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
	check_keys(cfg, "config", {"system", "resonant", "p_minus", "method", "max_iter",
	                           "tol", "bins", "burn_in", "samples", "seed"});
	AmSystem sys = system_from(cfg);
	double p = p_minus_from(cfg);
	std::string method = string_or(cfg, "method", "transfer");

	if (method == "orbit") {
		auto burn = static_cast<std::size_t>(int_or(cfg, "burn_in", 1000));
		auto samples = static_cast<std::size_t>(int_or(cfg, "samples", 200000));
		auto bins = static_cast<std::size_t>(int_or(cfg, "bins", 256));
		EmpiricalMeasure m = empirical_stationary(sys, p, burn, samples, bins,
		                                          seed_from(cfg, inv));
		if (inv.format == "csv") {
			char buf[96];
			out << "bin_lo,mass\n";
			for (std::size_t i = 0; i < m.masses.size(); ++i) {
				std::snprintf(buf, sizeof buf, "%.12g,%.12g\n",
				              static_cast<double>(i) / static_cast<double>(m.bin_count),
				              m.masses[i]);
				out << buf;
			}
			return 0;
		}
		ojson doc;
		doc["method"] = method;
		doc["bins"] = m.bin_count;
		doc["masses"] = m.masses;
		emit(out, doc);
		return 0;
	}

	if (method != "transfer" && method != "cesaro")
		bad("\"method\" must be \"transfer\", \"cesaro\" or \"orbit\"");
	auto max_iter = static_cast<std::size_t>(int_or(cfg, "max_iter", 200));
	double tol = number_or(cfg, "tol", 1e-10);
	logline(err, "stationary: method=" + method);
	StationaryResult res =
	    iterate_to_stationary(sys, p, uniform_density(), max_iter, tol,
	                          method == "cesaro" ? IterationMode::cesaro
	                                             : IterationMode::direct);
	if (inv.format == "csv") {
		char buf[96];
		out << "break,value\n";
		for (std::size_t i = 0; i < res.density.values.size(); ++i) {
			std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", res.density.breaks[i],
			              res.density.values[i]);
			out << buf;
		}
		return res.converged ? 0 : 3;
	}
	ojson doc;
	doc["method"] = method;
	doc["converged"] = res.converged;
	doc["iterations"] = res.iterations;
	doc["last_distance"] = res.last_distance;
	doc["mass"] = res.density.mass();
	doc["density"] = density_json(res.density);
	emit(out, doc);
	return res.converged ? 0 : 3;
}

int cmd_lebesgue(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"system", "resonant", "p_minus"});
	AmSystem sys = system_from(cfg);
	LebesgueVerdict v = lebesgue_check(sys, p_minus_from(cfg));
	ojson doc;
	doc["lebesgue"] = v.lebesgue;
	doc["type"] = class_name(v.type);
	doc["residual1"] = v.residual1;
	doc["residual2"] = v.residual2;
	emit(out, doc);
	return 0;
}

ojson interval_json(const AddressedInterval& iv) {
	ojson e;
	e["code"] = iv.code.str();
	e["lo"] = iv.lo;
	e["hi"] = iv.hi;
	e["resolved"] = iv.resolved;
	e["parent_len"] = iv.parent_len;
	return e;
}

int cmd_support(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
	check_keys(cfg, "config", {"resonant", "mode", "depth", "j_range", "suffix_depth",
	                           "length_floor", "emit_intervals"});
	ResonantSystem res = resonant_from(cfg);
	std::string mode = string_or(cfg, "mode", "build");
	int j_range = static_cast<int>(int_or(cfg, "j_range", 8));

	if (mode == "build") {
		int suffix_depth = static_cast<int>(int_or(cfg, "suffix_depth", 2));
		auto ivs = build_intervals(res.rho, res.k, res.l, j_range, suffix_depth);
		if (inv.format == "csv") {
			char buf[96];
			out << "code,lo,hi\n";
			for (const auto& iv : ivs) {
				std::snprintf(buf, sizeof buf, ",%.12g,%.12g\n", iv.lo, iv.hi);
				out << iv.code.str() << buf;
			}
			return 0;
		}
		ojson doc;
		doc["count"] = ivs.size();
		ojson arr = ojson::array();
		for (const auto& iv : ivs) arr.push_back(interval_json(iv));
		doc["intervals"] = std::move(arr);
		emit(out, doc);
		return 0;
	}

	if (mode != "approx" && mode != "boxdim")
		bad("\"mode\" must be \"build\", \"approx\" or \"boxdim\"");
	int depth = static_cast<int>(int_or(cfg, "depth", 4));
	double floor_len = number_or(cfg, "length_floor", 0.0);
	logline(err, "support: refining to depth " + std::to_string(depth));
	CantorApprox ap = cantor_approx(res.rho, res.k, res.l, depth, j_range, floor_len);

	if (mode == "boxdim") {
		require_json_format(inv);
		ojson doc;
		doc["estimate"] = box_dimension_estimate(ap);
		doc["depth"] = depth;
		doc["j_range"] = j_range;
		emit(out, doc);
		return 0;
	}

	bool emit_intervals = false;
	if (cfg.contains("emit_intervals")) {
		if (!cfg.at("emit_intervals").is_boolean()) bad("\"emit_intervals\" must be a boolean");
		emit_intervals = cfg.at("emit_intervals").get<bool>();
	}
	const auto& deep = ap.deepest();
	if (inv.format == "csv") {
		char buf[112];
		out << "code,lo,hi,resolved\n";
		for (const auto& iv : deep) {
			std::snprintf(buf, sizeof buf, ",%.12g,%.12g,%d\n", iv.lo, iv.hi,
			              iv.resolved ? 1 : 0);
			out << iv.code.str() << buf;
		}
		return 0;
	}
	double cover = 0;
	for (const auto& iv : deep) cover += iv.len();
	ojson doc;
	doc["depth"] = ap.depth;
	doc["j_range"] = ap.j_range;
	doc["base_len"] = ap.base_len;
	doc["level_counts"] = [&] {
		std::vector<std::size_t> c;
		for (const auto& lvl : ap.levels) c.push_back(lvl.size());
		return c;
	}();
	doc["cover_length"] = cover;
	doc["tail_length_bound"] = ap.tail_length_bound;
	doc["resolution_len"] = ap.resolution_len;
	if (emit_intervals) {
		ojson arr = ojson::array();
		for (const auto& iv : deep) arr.push_back(interval_json(iv));
		doc["intervals"] = std::move(arr);
	}
	emit(out, doc);
	return 0;
}

int cmd_weights(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"k", "p_minus"});
	int k = static_cast<int>(int_at(cfg, "k", "config"));
	double p = number_or(cfg, "p_minus", 0.5);
	SymbolicWeights w = symbolic_weights(k, p);
	ojson doc;
	doc["k"] = w.k;
	doc["p_minus"] = w.p_minus;
	doc["eta_minus"] = w.eta_minus;
	doc["eta_plus"] = w.eta_plus;
	doc["degenerate"] = w.eta_minus >= 1.0 || w.eta_plus >= 1.0;
	doc["c_minus"] = w.c_minus;
	doc["c_plus"] = w.c_plus;
	doc["beta_minus"] = w.beta_minus;
	doc["beta_plus"] = w.beta_plus;
	emit(out, doc);
	return 0;
}

int cmd_dimension(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"resonant"});
	ResonantSystem res = resonant_from(cfg);
	SupportDimension sd = support_dimension(res.rho, res.k, res.l);
	ojson doc;
	doc["eta"] = solve_eta(res.k, res.l);
	doc["support_dimension"] = sd.value;
	doc["critical"] = sd.critical;
	doc["pressure_zero"] = solve_pressure_zero(res.rho, res.k, res.l);
	if (res.l == 1) doc["measure_dimension"] = measure_dimension(res.k, res.p_minus, res.rho);
	emit(out, doc);
	return 0;
}

int cmd_pressure(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {"resonant", "t"});
	ResonantSystem res = resonant_from(cfg);
	std::vector<double> ts;
	if (!cfg.contains("t")) {
		ts.push_back(1.0);
	} else if (cfg.at("t").is_array()) {
		for (const auto& v : cfg.at("t")) ts.push_back(as_number(v, "\"t\" entry"));
	} else {
		ts.push_back(as_number(cfg.at("t"), "\"t\""));
	}
	ojson doc;
	doc["domain_start"] = pressure_domain_start(res.rho, res.k, res.l);
	doc["t"] = ts;
	std::vector<double> vals;
	vals.reserve(ts.size());
	for (double t : ts) vals.push_back(pressure(res.rho, res.k, res.l, t));
	doc["value"] = vals;
	emit(out, doc);
	return 0;
}

ResonantSystem resonant_pair_member(const json& cfg, const char* key) {
	if (!cfg.contains(key)) bad(std::string("config requires a \"") + key + "\" object");
	const json& r = cfg.at(key);
	check_keys(r, key, {"rho", "k", "l", "p_minus"});
	ResonantSystem res;
	res.rho = number_at(r, "rho", key);
	res.k = static_cast<int>(int_at(r, "k", key));
	res.l = static_cast<int>(int_at(r, "l", key));
	res.p_minus = number_or(r, "p_minus", 0.5);
	return res;
}

int cmd_conjugacy(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
	require_json_format(inv);
	check_keys(cfg, "config", {"F", "G", "mode", "x", "tol", "max_depth",
	                           "n_samples", "seed"});
	std::string mode = string_or(cfg, "mode", "verify");
	ojson doc;
	if (mode == "locate") {
		ResonantSystem F = resonant_pair_member(cfg, "F");
		double x = number_at(cfg, "x", "config");
		int depth = static_cast<int>(int_or(cfg, "max_depth", 32));
		PointCode pc = locate(F, x, depth);
		doc["x"] = x;
		doc["kind"] = pc.kind == PointCode::Kind::InLambda ? "lambda" : "gap";
		if (pc.kind == PointCode::Kind::InLambda) {
			doc["code"] = pc.code.str();
		} else {
			doc["gap"] = pc.gap.str();
			doc["offset"] = pc.offset;
		}
		doc["lo"] = pc.lo;
		doc["hi"] = pc.hi;
		emit(out, doc);
		return 0;
	}
	ResonantSystem F = resonant_pair_member(cfg, "F");
	ResonantSystem G = resonant_pair_member(cfg, "G");
	double tol = number_or(cfg, "tol", 1e-9);
	if (mode == "evaluate") {
		double x = number_at(cfg, "x", "config");
		doc["x"] = x;
		doc["h"] = evaluate_h(F, G, x, tol);
		emit(out, doc);
		return 0;
	}
	if (mode != "verify") bad("\"mode\" must be \"locate\", \"evaluate\" or \"verify\"");
	auto n = static_cast<std::size_t>(int_or(cfg, "n_samples", 1000));
	logline(err, "conjugacy: verifying " + std::to_string(n) + " samples");
	ConjugacyReport rep = verify_conjugacy(F, G, n, tol, seed_from(cfg, inv));
	doc["max_residual"] = rep.max_residual;
	doc["monotone"] = rep.monotone;
	doc["samples"] = rep.samples;
	doc["tol"] = rep.tol;
	emit(out, doc);
	return 0;
}

int cmd_resfull(const json& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
	require_json_format(inv);
	check_keys(cfg, "config", {});
	ResFullReport r = res_full_analysis();
	ojson doc;
	doc["rho_star"] = r.rho_star;
	doc["rho_residual"] = r.rho_residual;
	doc["char_coeffs"] = r.char_coeffs;
	doc["product_coeffs"] = r.product_coeffs;
	doc["factorization_exact"] = r.factorization_exact;
	doc["alpha"] = r.alpha;
	doc["beta"] = r.beta;
	doc["alpha_residual"] = r.alpha_residual;
	doc["beta_residual"] = r.beta_residual;
	emit(out, doc);
	return 0;
}

} // namespace

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
	using Handler = int (*)(const json&, const Invocation&, std::ostream&, std::ostream&);
	static const std::map<std::string, Handler> handlers = {
	    {"classify", cmd_classify},   {"lyapunov", cmd_lyapunov},
	    {"resonance", cmd_resonance}, {"simulate", cmd_simulate},
	    {"omega", cmd_omega},         {"jumps", cmd_jumps},
	    {"stationary", cmd_stationary},
	    {"lebesgue", cmd_lebesgue},   {"support", cmd_support},
	    {"weights", cmd_weights},     {"dimension", cmd_dimension},
	    {"pressure", cmd_pressure},   {"conjugacy", cmd_conjugacy},
	    {"resfull", cmd_resfull},
	};

	try {
		if (inv.format != "json" && inv.format != "csv")
			bad("--format must be json or csv");
		if (inv.threads < 1) bad("--threads must be >= 1");
		auto it = handlers.find(inv.command);
		if (it == handlers.end()) bad("unknown command \"" + inv.command + "\"");
		json cfg;
		try {
			cfg = json::parse(inv.config_text.empty() ? "{}" : inv.config_text);
		} catch (const json::parse_error& e) {
			std::string where = inv.config_path.empty() ? "config" : inv.config_path;
			bad(where + ": " + e.what());
		}
		if (!cfg.is_object()) bad("config root must be a JSON object");
		return it->second(cfg, inv, out, err);
	} catch (const Error& e) {
		ojson doc;
		doc["error"]["type"] = e.type();
		doc["error"]["message"] = e.what();
		err << doc.dump() << "\n";
		return 2;
	} catch (const std::exception& e) {
		ojson doc;
		doc["error"]["type"] = "InternalError";
		doc["error"]["message"] = e.what();
		err << doc.dump() << "\n";
		return 2;
	}
}

} // namespace amdyn::cli
