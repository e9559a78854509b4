// Resonant-case structure theory: critical contraction ratio, Hausdorff
// dimension of the attractor and of the stationary measure, the addressed
// interval hierarchy, its finite-depth covers, box-counting estimates,
// the pressure function, and the mass recurrence of the critical case.

#ifndef AMDYN_RESONANT_HPP
#define AMDYN_RESONANT_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "amdyn/interval_tree.hpp"

namespace amdyn {

// Root eta in (1/2, 1) of  eta^{k+l} - 2 eta^{k+1} + 2 eta - 1 = 0, the
// contraction ratio at which the interval hierarchy exactly tiles [0,1].
// Bisection to width 1e-14; the residual is checked below 1e-12.
double solve_eta(int k, int l);

struct SupportDimension {
	double value = 0;
	bool critical = false;  // rho equals the critical ratio: full measure support
};

// dim_H of the attractor: log(eta)/log(rho) for rho < eta, 1 at rho == eta
// (flagged), InvalidRegime beyond.
SupportDimension support_dimension(double rho, int k, int l);

// Interior roots in (0,1) of p_plus*x^{k+1} - x + p_minus (first component)
// and p_minus*x^{k+1} - x + p_plus (second).  When (k+1)*p_plus <= 1
// (resp. p_minus) the interior root merges into the trivial root at 1 and
// 1.0 is returned for that component.  Resonance (k:1) only.
std::pair<double, double> solve_eta_pm(int k, double p_minus);

// Exact cylinder-mass weights of the stationary measure for (k:1) resonance
// with p_minus strictly inside the positivity window.
struct SymbolicWeights {
	int k = 0;
	double p_minus = 0;
	double eta_minus = 0, eta_plus = 0;
	double c_minus = 0, c_plus = 0;          // base-interval mass scale factors
	std::vector<double> beta_minus;           // transition weights, index r-1, r=1..k
	std::vector<double> beta_plus;            // each family sums to 1
};

SymbolicWeights symbolic_weights(int k, double p_minus);

// Mass of the cylinder addressed by base index j != 0 and refinement word
// r_sequence (entries in 1..k): base mass c*eta^{|j|} times alternating
// beta factors, starting with the minus family for j < 0.
double cylinder_mass(const SymbolicWeights& w, int j,
                     const std::vector<int>& r_sequence);

// dim_H of the stationary measure: entropy over Lyapunov exponent of the
// induced refinement process, both expressed through the beta weights.
double measure_dimension(int k, double p_minus, double rho);

// --- Addressed intervals ----------------------------------------------------

// Composite refinement symbol: contraction phi_r pre-composed with a chain
// phi_{tail[0]}, ..., phi_{tail[n-1]} (tail entries in 1..l-1; tail empty
// whenever r == k).  For l == 1 every symbol is a bare phi_r.
struct RSymbol {
	int r = 0;
	std::vector<int> tail;
};

// Address of one interval: base index j (nonzero; negative side starts at
// the repelling endpoint 0), a suffix word over 1..l-1 selecting the copy
// inside the base J-interval, and a cylinder word of composite symbols.
struct IntervalCode {
	int j = 0;
	std::vector<int> suffix;
	std::vector<RSymbol> cylinder;
	std::string str() const;  // e.g. "j=-1;s=;c=2,1"  (tails dotted: "c=3.1,2")
};

struct AddressedInterval {
	IntervalCode code;
	double lo = 0, hi = 0;
	bool resolved = true;     // false: cover piece frozen at the length floor
	double parent_len = -1;   // length of the enclosing interval one level up
	double len() const { return hi - lo; }
};

// Base intervals I_(j, suffix) for |j| <= j_range and suffix length up to
// suffix_depth, sorted by position.  For l == 1 these are just the I_j.
std::vector<AddressedInterval> build_intervals(double rho, int k, int l,
                                               int j_range, int suffix_depth);

// Applies the composite contraction of one symbol.  The argument must lie
// in the canonical J copy (within 1e-12); tail entries act first.
double ifs_apply(double rho, int k, int l, const RSymbol& sym, double x);

// Finite-depth cover of the attractor restricted to |j| <= j_range.
// levels[d] holds the depth-d cylinder intervals that were resolved, plus
// the unresolved cover pieces whose refinement would first produce depth-d
// cylinders; a cover of the attractor piece at resolution d is the union of
// levels[d]'s resolved entries and every unresolved entry of levels[<= d].
// tail_length_bound sums the unresolved lengths; resolution_len is the
// largest length among frontier pieces (box counting must stay above it).
struct CantorApprox {
	double rho = 0;
	int k = 0, l = 0;
	int depth = 0;
	int j_range = 0;
	std::vector<std::vector<AddressedInterval>> levels;
	double tail_length_bound = 0;
	double resolution_len = 0;
	double base_len = 0;  // |J_{-1}|, the reference scale of one copy

	// Materializes the cover at resolution d: resolved depth-d cylinders plus
	// every unresolved piece frozen at shallower levels.
	std::vector<AddressedInterval> cover(int level) const;
	std::vector<AddressedInterval> deepest() const { return cover(depth); }
};

// length_floor <= 0 selects an automatic floor (0 for l == 1, where the
// cylinder tree is finite at each depth).
CantorApprox cantor_approx(double rho, int k, int l, int depth, int j_range,
                           double length_floor = 0.0);

// Box-counting exponent for the j = -1 copy: at scales
// delta_m = |J_-1| * rho^m down to the approximation's resolution, count the
// cover elements whose length first drops to <= delta_m along each branch,
// and regress log count on log(1/delta).  Returns 0 when no scale is usable
// (degenerate single-interval approximation); throws InsufficientDepth when
// only one scale is.
double box_dimension_estimate(const CantorApprox& approx);

// --- Pressure and the critical-case recurrence ------------------------------

// log of (rho^{lt} - 2 rho^{(k+1)t} + rho^{(k+l)t}) / (1 - 2 rho^t + rho^{lt});
// for l == 1 this reduces to log(rho^t + ... + rho^{kt}).  Defined for
// t > pressure_domain_start; OutsideDomain otherwise.
double pressure(double rho, int k, int l, double t);

// Infimum t0 of the pressure domain: 0 for l <= 2, else the root of
// 1 - 2 rho^t + rho^{lt}.
double pressure_domain_start(double rho, int k, int l);

// Zero of the pressure in (t0, 1]; equals log(eta)/log(rho) (the support
// dimension).  InvalidRegime if the pressure is still positive at t = 1.
double solve_pressure_zero(double rho, int k, int l);

// Residuals m_{j+k} - 2 m_j + m_{j-l} of the critical-case mass recurrence,
// for j = l+1 .. J-k given masses m_1..m_J (index 0 holds m_1).  Requires
// J >= k+l+2 so at least two residuals exist (InsufficientData).
std::vector<double> recurrence_residuals(const std::vector<double>& masses,
                                         int k, int l);

// End-to-end critical (5:2) analysis: the critical ratio, the exact integer
// factorization of the recurrence characteristic polynomial
//   x^7 - 2 x^2 + 1 = (x - 1)(x^3 + x^2 - 1)(x^3 + x + 1),
// and the two decay bases (the relevant cubic roots), all with residuals.
struct ResFullReport {
	double rho_star = 0;                      // critical ratio for (5,2)
	double rho_residual = 0;                  // critical-equation residual
	std::array<long long, 8> char_coeffs{};   // x^7..x^0 of the characteristic
	std::array<long long, 8> product_coeffs{};// expanded factor product
	bool factorization_exact = false;
	double alpha = 0;                         // root of x^3 + x^2 - 1 in (0,1)
	double beta = 0;                          // root of x^3 + x + 1 in (-1,0)
	double alpha_residual = 0, beta_residual = 0;  // in the degree-7 polynomial
};

ResFullReport res_full_analysis();

} // namespace amdyn

#endif
