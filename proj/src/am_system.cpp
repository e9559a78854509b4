#include "amdyn/am_system.hpp"
#include "amdyn/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace amdyn {

namespace {

void require(bool ok, const std::string& msg) {
	if (!ok) throw ParameterOutOfRange(msg);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

// Border detection tolerance on |f_minus(x_minus) - f_plus(x_plus)|.  The
// border condition is measure-zero in parameter space, so an absolute
// tolerance is a policy choice; 1e-12 keeps honestly-computed border systems
// (slope arithmetic in doubles) classified as Border while being far below
// the separation of any deliberately disjoint/overlapping example.
constexpr double kBorderTol = 1e-12;

} // namespace

AmSystem new_system(double a_minus, double b_minus, double a_plus, double b_plus) {
	require(std::isfinite(a_minus) && a_minus > 0.0 && a_minus < 1.0,
	        "a_minus must lie in (0,1), got " + std::to_string(a_minus));
	require(std::isfinite(b_minus) && b_minus > 1.0,
	        "b_minus must exceed 1, got " + std::to_string(b_minus));
	require(std::isfinite(a_plus) && a_plus > 0.0 && a_plus < 1.0,
	        "a_plus must lie in (0,1), got " + std::to_string(a_plus));
	require(std::isfinite(b_plus) && b_plus > 1.0,
	        "b_plus must exceed 1, got " + std::to_string(b_plus));

	AmSystem sys;
	sys.a_minus = a_minus;
	sys.b_minus = b_minus;
	sys.a_plus = a_plus;
	sys.b_plus = b_plus;
	sys.x_minus = (b_minus - 1.0) / (b_minus - a_minus);
	sys.x_plus = (1.0 - a_plus) / (b_plus - a_plus);
	sys.fm_xm = a_minus * sys.x_minus;
	sys.fp_xp = 1.0 - a_plus * (1.0 - sys.x_plus);
	return sys;
}

double apply(const AmSystem& sys, Sign s, double x) {
	if (!(in_unit(x))) throw DomainError("apply: x outside [0,1]");
	if (s == Sign::minus) {
		return x <= sys.x_minus ? sys.a_minus * x
		                        : 1.0 - sys.b_minus * (1.0 - x);
	}
	return x <= sys.x_plus ? sys.b_plus * x
	                       : 1.0 - sys.a_plus * (1.0 - x);
}

double apply_inverse(const AmSystem& sys, Sign s, double x) {
	if (!(in_unit(x))) throw DomainError("apply_inverse: x outside [0,1]");
	if (s == Sign::minus) {
		return x <= sys.fm_xm ? x / sys.a_minus
		                      : 1.0 - (1.0 - x) / sys.b_minus;
	}
	return x <= sys.fp_xp ? x / sys.b_plus
	                      : 1.0 - (1.0 - x) / sys.a_plus;
}

LyapunovPair lyapunov_exponents(const AmSystem& sys, double p_minus) {
	require(p_minus >= 0.0 && p_minus <= 1.0,
	        "p_minus must lie in [0,1], got " + std::to_string(p_minus));
	const double p_plus = 1.0 - p_minus;
	LyapunovPair out;
	out.lambda0 = p_minus * std::log(sys.a_minus) + p_plus * std::log(sys.b_plus);
	out.lambda1 = p_minus * std::log(sys.b_minus) + p_plus * std::log(sys.a_plus);
	return out;
}

SystemClass classify_type(const AmSystem& sys) {
	const double diff = sys.fm_xm - sys.fp_xp;
	if (std::fabs(diff) <= kBorderTol) return SystemClass::Border;
	return diff < 0.0 ? SystemClass::Disjoint : SystemClass::Overlapping;
}

SystemClass classify_type_rational(long long am_num, long long am_den,
                                   long long bm_num, long long bm_den,
                                   long long ap_num, long long ap_den,
                                   long long bp_num, long long bp_den) {
	auto check_contracting = [](long long n, long long d) {
		require(d > 0 && n > 0 && n < d, "contracting slope must be a fraction in (0,1)");
	};
	auto check_expanding = [](long long n, long long d) {
		require(d > 0 && n > d, "expanding slope must be a fraction > 1");
	};
	check_contracting(am_num, am_den);
	check_expanding(bm_num, bm_den);
	check_contracting(ap_num, ap_den);
	check_expanding(bp_num, bp_den);

	// f_minus(x_minus) = a(b-1)/(b-a) simplifies, over fractions a=an/ad and
	// b=bn/bd, to  an*(bn-bd) / (bn*ad - an*bd);  both denominators below are
	// positive because b > a.
	using i128 = __int128;
	const i128 n1 = i128(am_num) * (i128(bm_num) - bm_den);
	const i128 d1 = i128(bm_num) * am_den - i128(am_num) * bm_den;
	const i128 d2 = i128(bp_num) * ap_den - i128(ap_num) * bp_den;
	const i128 n2 = d2 - i128(ap_num) * (i128(bp_num) - bp_den); // f_plus(x_plus) = n2/d2
	const i128 lhs = n1 * d2;
	const i128 rhs = n2 * d1;
	if (lhs == rhs) return SystemClass::Border;
	return lhs < rhs ? SystemClass::Disjoint : SystemClass::Overlapping;
}

std::optional<std::pair<int, int>> detect_resonance(const AmSystem& sys,
                                                    int endpoint,
                                                    int max_denominator,
                                                    double tol) {
	require(endpoint == 0 || endpoint == 1, "endpoint must be 0 or 1");
	require(max_denominator >= 1, "max_denominator must be >= 1");
	require(tol > 0.0, "tol must be positive");

	// At endpoint 0 the contracting slope is a_minus and the expanding one is
	// b_plus; at endpoint 1 they are a_plus and b_minus.  a^k b^l = 1 is
	// equivalent to k/l = log(b) / (-log(a)).
	const double a = (endpoint == 0) ? sys.a_minus : sys.a_plus;
	const double b = (endpoint == 0) ? sys.b_plus : sys.b_minus;
	const double y = std::log(b) / (-std::log(a));

	// Walk the continued-fraction convergents p/q of y.  Any fraction within
	// tol < 1/(2 q^2) of y is a convergent, so for tight tolerances this scan
	// is exhaustive, and it always proposes the smallest admissible l first.
	long long p_prev = 1, q_prev = 0;
	long long p_cur = static_cast<long long>(std::floor(y)), q_cur = 1;
	double frac = y - std::floor(y);
	for (int step = 0; step < 64; ++step) {
		if (q_cur > max_denominator) break;
		if (p_cur >= 1 && std::fabs(y - double(p_cur) / double(q_cur)) < tol) {
			long long g = std::gcd(p_cur, q_cur);
			return std::make_pair(int(p_cur / g), int(q_cur / g));
		}
		if (frac < 1e-15) break; // y is (numerically) exactly p_cur/q_cur
		const double inv = 1.0 / frac;
		const double digit = std::floor(inv);
		frac = inv - digit;
		const long long a_i = static_cast<long long>(digit);
		const long long p_next = a_i * p_cur + p_prev;
		const long long q_next = a_i * q_cur + q_prev;
		p_prev = p_cur; q_prev = q_cur;
		p_cur = p_next; q_cur = q_next;
	}
	return std::nullopt;
}

AmSystem from_resonance(const ResonantSystem& res) {
	require(std::isfinite(res.rho) && res.rho > 0.0 && res.rho < 1.0,
	        "rho must lie in (0,1), got " + std::to_string(res.rho));
	require(res.l >= 1 && res.k > res.l,
	        "need k > l >= 1, got k=" + std::to_string(res.k) + " l=" + std::to_string(res.l));
	require(std::gcd(res.k, res.l) == 1,
	        "k and l must be coprime, got k=" + std::to_string(res.k) + " l=" + std::to_string(res.l));
	require(res.p_minus > 0.0 && res.p_minus < 1.0, "p_minus must lie in (0,1)");
	const double a = std::pow(res.rho, res.l);
	const double b = std::pow(res.rho, -res.k);
	return new_system(a, b, a, b);
}

std::pair<double, double> positivity_window(int k, int l) {
	require(l >= 1 && k > l, "need k > l >= 1");
	require(std::gcd(k, l) == 1, "k and l must be coprime");
	const double denom = double(k + l);
	return {double(l) / denom, double(k) / denom};
}

namespace {

std::string fmt17(double v) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

} // namespace

std::string system_to_json(const AmSystem& sys) {
	std::ostringstream os;
	os << "{\"a_minus\":" << fmt17(sys.a_minus)
	   << ",\"b_minus\":" << fmt17(sys.b_minus)
	   << ",\"a_plus\":" << fmt17(sys.a_plus)
	   << ",\"b_plus\":" << fmt17(sys.b_plus) << "}";
	return os.str();
}

std::string resonant_to_json(const ResonantSystem& res) {
	std::ostringstream os;
	os << "{\"rho\":" << fmt17(res.rho)
	   << ",\"k\":" << res.k
	   << ",\"l\":" << res.l
	   << ",\"p_minus\":" << fmt17(res.p_minus) << "}";
	return os.str();
}

AmSystem system_from_json(const std::string& text) {
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(text);
	} catch (const nlohmann::json::exception& e) {
		throw ParameterOutOfRange(std::string("bad system JSON: ") + e.what());
	}
	for (const char* key : {"a_minus", "b_minus", "a_plus", "b_plus"})
		if (!j.contains(key) || !j[key].is_number())
			throw ParameterOutOfRange(std::string("system JSON missing numeric key: ") + key);
	return new_system(j["a_minus"].get<double>(), j["b_minus"].get<double>(),
	                  j["a_plus"].get<double>(), j["b_plus"].get<double>());
}

ResonantSystem resonant_from_json(const std::string& text) {
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(text);
	} catch (const nlohmann::json::exception& e) {
		throw ParameterOutOfRange(std::string("bad resonant JSON: ") + e.what());
	}
	for (const char* key : {"rho", "k", "l", "p_minus"})
		if (!j.contains(key) || !j[key].is_number())
			throw ParameterOutOfRange(std::string("resonant JSON missing numeric key: ") + key);
	ResonantSystem res{j["rho"].get<double>(), j["k"].get<int>(), j["l"].get<int>(),
	                   j["p_minus"].get<double>()};
	from_resonance(res); // validation side effect
	return res;
}

} // namespace amdyn
