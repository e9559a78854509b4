// Core system type: a pair of increasing piecewise-linear interval maps
// (f_minus, f_plus) on [0,1], each with one contracting and one expanding
// linear branch meeting at an interior kink, fixing both endpoints:
//
//   f_minus(x) = a_minus * x                 on [0, x_minus]
//                1 - b_minus * (1 - x)       on (x_minus, 1]
//   f_plus(x)  = b_plus * x                  on [0, x_plus]
//                1 - a_plus * (1 - x)        on (x_plus, 1]
//
// with 0 < a_minus, a_plus < 1 < b_minus, b_plus.  Kink abscissas are forced
// by continuity.  f_minus attracts toward 0, f_plus toward 1; iterating a
// random i.i.d. mixture of the two is the object of study of this library.

#ifndef AMDYN_AM_SYSTEM_HPP
#define AMDYN_AM_SYSTEM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace amdyn {

enum class Sign { minus, plus };

struct AmSystem {
	double a_minus = 0, b_minus = 0, a_plus = 0, b_plus = 0;
	// Derived, cached at construction:
	double x_minus = 0;  // kink of f_minus, (b_minus-1)/(b_minus-a_minus)
	double x_plus = 0;   // kink of f_plus,  (1-a_plus)/(b_plus-a_plus)
	double fm_xm = 0;    // f_minus(x_minus) = a_minus * x_minus
	double fp_xp = 0;    // f_plus(x_plus)   = 1 - a_plus * (1 - x_plus)
};

enum class SystemClass { Disjoint, Border, Overlapping };

struct LyapunovPair {
	double lambda0 = 0;  // exponent at the fixed point 0
	double lambda1 = 0;  // exponent at the fixed point 1
};

// Exactly self-similar subfamily: slopes are powers of one ratio rho,
//   a_minus = rho^l, b_plus = rho^-k, a_plus = rho^k... see from_resonance.
struct ResonantSystem {
	double rho = 0;
	int k = 0;
	int l = 0;
	double p_minus = 0.5;
};

// Validates 0 < a_* < 1 < b_* and precomputes kinks and kink images.
AmSystem new_system(double a_minus, double b_minus, double a_plus, double b_plus);

// Reflection x -> 1 - x; conjugates f_minus and f_plus into each other when
// the system is symmetric (a_minus == a_plus, b_minus == b_plus).
inline double reflect(double x) { return 1.0 - x; }

double apply(const AmSystem& sys, Sign s, double x);

// Inverse of the chosen map; well defined since each map is an increasing
// bijection of [0,1].
double apply_inverse(const AmSystem& sys, Sign s, double x);

// Exponents of the linearizations at the common fixed points 0 and 1 under
// the Bernoulli(p_minus) mixture:
//   lambda0 = p_minus*log(a_minus) + p_plus*log(b_plus)
//   lambda1 = p_minus*log(b_minus) + p_plus*log(a_plus)
// Both positive <=> both endpoints repel on average.
LyapunovPair lyapunov_exponents(const AmSystem& sys, double p_minus);

// Position of the kink images: Disjoint if f_minus(x_minus) < f_plus(x_plus),
// Border if equal within 1e-12, Overlapping otherwise.
SystemClass classify_type(const AmSystem& sys);

// Exact-rational border check for systems whose slopes are known fractions.
// Decides f_minus(x_minus) = f_plus(x_plus) by 128-bit cross multiplication,
// with no floating tolerance.  Each slope is num/den with positive den.
SystemClass classify_type_rational(long long am_num, long long am_den,
                                   long long bm_num, long long bm_den,
                                   long long ap_num, long long ap_den,
                                   long long bp_num, long long bp_den);

// Searches for a small coprime pair (k, l) with a^k * b^l = 1 for the two
// slopes acting at the given endpoint (0: a_minus & b_plus, 1: a_plus &
// b_minus), i.e. log-slope ratio within tol of -k/l.  Candidates are the
// continued-fraction convergents of the ratio, which is exhaustive for
// tol < 1/(2*max_denominator^2) by the best-approximation theorem.
std::optional<std::pair<int, int>> detect_resonance(const AmSystem& sys,
                                                    int endpoint,
                                                    int max_denominator,
                                                    double tol);

// Builds the symmetric system with a_minus = a_plus = rho^l and
// b_minus = b_plus = rho^(-k).  Requires 0 < rho < 1, coprime k > l >= 1,
// and p_minus inside (0,1).
AmSystem from_resonance(const ResonantSystem& res);

// Open interval of p_minus for which both endpoint exponents of the
// resonant system are positive: (l/(k+l), k/(k+l)).
std::pair<double, double> positivity_window(int k, int l);

// 17-significant-digit JSON round-trip of the defining slopes.
std::string system_to_json(const AmSystem& sys);
std::string resonant_to_json(const ResonantSystem& res);
AmSystem system_from_json(const std::string& text);
ResonantSystem resonant_from_json(const std::string& text);

} // namespace amdyn

#endif
