// Random orbit machinery: i.i.d. sign words, orbit evaluation, side-jump
// detection for disjoint-type systems, synchronization of coupled orbits,
// and late-orbit (omega-limit) sampling.

#ifndef AMDYN_DYNAMICS_HPP
#define AMDYN_DYNAMICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amdyn/am_system.hpp"

namespace amdyn {

struct Word {
	std::vector<Sign> signs;
	std::uint64_t seed = 0;
	double p_minus = 0.5;
	std::size_t size() const { return signs.size(); }
};

// Bernoulli word: sign n is minus iff the n-th uniform draw is < p_minus.
Word sample_word(std::uint64_t seed, std::size_t n, double p_minus);

struct Orbit {
	double x0 = 0;
	Word word;
	std::vector<double> points;  // points[0] = x0, then one image per letter
};

Orbit orbit(const AmSystem& sys, double x0, const Word& word);

// A "jump" is a crossing of the central gap (f_minus(x_minus), f_plus(x_plus)):
// the orbit point switches from the left closed component [0, f_minus(x_minus)]
// to the right one [f_plus(x_plus), 1] or back.  Gap endpoints count as part of
// the adjacent closed components, so landing exactly on one is not a crossing
// by itself.  Requires a disjoint-type system (the gap must be nonempty).
struct JumpRecord {
	std::vector<std::size_t> times;  // indices into orbit.points where the side changed
	double gap_lo = 0;               // f_minus(x_minus)
	double gap_hi = 0;               // f_plus(x_plus)
};

JumpRecord detect_jumps(const AmSystem& sys, const Orbit& orb);

// |x_n - y_n| along the same word, one entry per step; under positive
// endpoint exponents the two coupled orbits synchronize and the gap tends
// to zero.
std::vector<double> synchronization_gap(const AmSystem& sys, double x0, double y0,
                                        const Word& word);

// Runs n_orbits independent Bernoulli(p_minus) words (stream seeds seed,
// seed+1, ...) from x0 and keeps the final `tail` points of every orbit that
// performed at least min_jumps side jumps.  The kept cloud approximates the
// attractor sampled by the stationary measure.  Threads only split the orbit
// loop; per-orbit seeding makes the result independent of the schedule.
std::vector<double> omega_limit_sample(const AmSystem& sys, double p_minus,
                                       double x0, std::size_t n_orbits,
                                       std::size_t length, std::size_t min_jumps,
                                       std::size_t tail, std::uint64_t seed,
                                       int threads = 1);

// One value per line at 12 significant digits, preceded by a comment header
// carrying the system slopes and the seed.
void export_points_csv(const std::string& path, const AmSystem& sys,
                       std::uint64_t seed, const std::vector<double>& values);

} // namespace amdyn

#endif
