// Topological conjugacy between two resonant systems with the same exponent
// pair: the homeomorphism h matches points by their address in the copy
// hierarchy and interpolates affinely across the (always order-isomorphic)
// gaps.  Requires both ratios strictly below the critical one.

#ifndef AMDYN_CONJUGACY_HPP
#define AMDYN_CONJUGACY_HPP

#include <cstdint>
#include <string>

#include "amdyn/am_system.hpp"
#include "amdyn/resonant.hpp"

namespace amdyn {

// Identifier of one gap of the hierarchy.  Top-level gaps: j == 0 is the
// central gap, j == -m (resp. +m) the gap between the base copies with
// indices -(m+1) and -m (mirrored for +).  Internal gaps belong to a node
// (its address) and a slot: 0 lies below the first child, i between
// children i-1 and i.
struct GapId {
	bool top_level = true;
	int j = 0;
	IntervalCode parent;
	int slot = 0;
	std::string str() const;
};

struct PointCode {
	enum class Kind { InLambda, InGap };
	Kind kind = Kind::InLambda;
	IntervalCode code;   // InLambda: address completed so far
	GapId gap;           // InGap
	double offset = 0;   // InGap: affine position of x inside the gap
	double lo = 0, hi = 0;  // bracketing interval / gap bounds
};

// Descends max_depth tree levels (or stops in a gap first).  Requires
// x in (0,1) and a strictly subcritical ratio.
PointCode locate(const ResonantSystem& sys, double x, int max_depth);

// Value of the conjugacy sending system F to system G at x, to within tol:
// identical descent in both hierarchies until the matched bracket in G is
// narrower than tol (or x falls in a gap, which maps affinely and exactly).
double evaluate_h(const ResonantSystem& F, const ResonantSystem& G,
                  double x, double tol);

struct ConjugacyReport {
	double max_residual = 0;  // sup |h(f_s(x)) - g_s(h(x))| over samples and signs
	bool monotone = false;    // strictly increasing beyond 2*tol separation
	std::size_t samples = 0;
	double tol = 0;
};

ConjugacyReport verify_conjugacy(const ResonantSystem& F, const ResonantSystem& G,
                                 std::size_t n_samples, double tol,
                                 std::uint64_t seed);

} // namespace amdyn

#endif
