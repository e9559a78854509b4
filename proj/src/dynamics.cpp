#include "amdyn/dynamics.hpp"
#include "amdyn/errors.hpp"
#include "amdyn/rng.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

namespace amdyn {

Word sample_word(std::uint64_t seed, std::size_t n, double p_minus) {
	if (!(p_minus >= 0.0 && p_minus <= 1.0))
		throw ParameterOutOfRange("sample_word: p_minus must lie in [0,1]");
	Word w;
	w.seed = seed;
	w.p_minus = p_minus;
	w.signs.reserve(n);
	SplitMix64 rng(seed);
	for (std::size_t i = 0; i < n; ++i)
		w.signs.push_back(rng.uniform01() < p_minus ? Sign::minus : Sign::plus);
	return w;
}

Orbit orbit(const AmSystem& sys, double x0, const Word& word) {
	if (!(x0 >= 0.0 && x0 <= 1.0))
		throw DomainError("orbit: x0 outside [0,1]");
	Orbit orb;
	orb.x0 = x0;
	orb.word = word;
	orb.points.reserve(word.size() + 1);
	orb.points.push_back(x0);
	double x = x0;
	for (Sign s : word.signs) {
		x = apply(sys, s, x);
		orb.points.push_back(x);
	}
	return orb;
}

namespace {

// -1 left component, +1 right component, 0 strictly inside the central gap.
// Gap endpoints belong to the adjacent closed components.
int side_of(double x, double lo, double hi) {
	if (x <= lo) return -1;
	if (x >= hi) return 1;
	return 0;
}

} // namespace

JumpRecord detect_jumps(const AmSystem& sys, const Orbit& orb) {
	if (classify_type(sys) != SystemClass::Disjoint)
		throw NotDisjointType("detect_jumps: system has no central gap");
	JumpRecord rec;
	rec.gap_lo = sys.fm_xm;
	rec.gap_hi = sys.fp_xp;
	if (orb.points.empty()) return rec;
	int prev = side_of(orb.points.front(), rec.gap_lo, rec.gap_hi);
	for (std::size_t t = 0; t + 1 < orb.points.size(); ++t) {
		const int next = side_of(orb.points[t + 1], rec.gap_lo, rec.gap_hi);
		if (next != 0) {
			if (prev != 0 && next != prev) rec.times.push_back(t);
			prev = next;
		}
		// next == 0: transient visit to the open gap, side carries over
	}
	return rec;
}

std::vector<double> synchronization_gap(const AmSystem& sys, double x0, double y0,
                                        const Word& word) {
	if (!(x0 >= 0.0 && x0 <= 1.0) || !(y0 >= 0.0 && y0 <= 1.0))
		throw DomainError("synchronization_gap: start points outside [0,1]");
	std::vector<double> gaps;
	gaps.reserve(word.size());
	double x = x0, y = y0;
	for (Sign s : word.signs) {
		x = apply(sys, s, x);
		y = apply(sys, s, y);
		gaps.push_back(std::fabs(x - y));
	}
	return gaps;
}

std::vector<double> omega_limit_sample(const AmSystem& sys, double p_minus,
                                       double x0, std::size_t n_orbits,
                                       std::size_t length, std::size_t min_jumps,
                                       std::size_t tail, std::uint64_t seed,
                                       int threads) {
	if (classify_type(sys) != SystemClass::Disjoint)
		throw NotDisjointType("omega_limit_sample: jump counting needs a central gap");
	if (tail > length)
		throw ParameterOutOfRange("omega_limit_sample: tail exceeds orbit length");
	if (threads < 1) threads = 1;

	std::vector<std::vector<double>> kept(n_orbits);
	auto worker = [&](std::size_t begin, std::size_t end) {
		for (std::size_t o = begin; o < end; ++o) {
			const Word w = sample_word(seed + o, length, p_minus);
			const Orbit orb = orbit(sys, x0, w);
			const JumpRecord jumps = detect_jumps(sys, orb);
			if (jumps.times.size() < min_jumps) continue;
			kept[o].assign(orb.points.end() - tail, orb.points.end());
		}
	};

	if (threads == 1 || n_orbits < 2) {
		worker(0, n_orbits);
	} else {
		std::vector<std::thread> pool;
		const std::size_t n = static_cast<std::size_t>(threads);
		for (std::size_t t = 0; t < n; ++t) {
			const std::size_t lo = n_orbits * t / n;
			const std::size_t hi = n_orbits * (t + 1) / n;
			pool.emplace_back(worker, lo, hi);
		}
		for (auto& th : pool) th.join();
	}

	std::vector<double> out;
	for (const auto& v : kept) out.insert(out.end(), v.begin(), v.end());
	return out;
}

void export_points_csv(const std::string& path, const AmSystem& sys,
                       std::uint64_t seed, const std::vector<double>& values) {
	std::ofstream os(path, std::ios::binary);
	if (!os) throw IoError("cannot open " + path + " for writing");
	char buf[160];
	std::snprintf(buf, sizeof buf,
	              "# a_minus=%.17g b_minus=%.17g a_plus=%.17g b_plus=%.17g seed=%llu\n",
	              sys.a_minus, sys.b_minus, sys.a_plus, sys.b_plus,
	              static_cast<unsigned long long>(seed));
	os << buf << "x\n";
	for (double v : values) {
		std::snprintf(buf, sizeof buf, "%.12g\n", v);
		os << buf;
	}
	if (!os) throw IoError("write failed for " + path);
}

} // namespace amdyn
