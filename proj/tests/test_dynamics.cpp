#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "amdyn/am_system.hpp"
#include "amdyn/dynamics.hpp"
#include "amdyn/errors.hpp"

using namespace amdyn;

TEST_CASE("words are reproducible and Bernoulli") {
	Word w1 = sample_word(123, 500, 0.3);
	Word w2 = sample_word(123, 500, 0.3);
	CHECK(w1.signs == w2.signs);
	CHECK(w1.seed == 123);
	CHECK(w1.p_minus == 0.3);

	Word w3 = sample_word(124, 500, 0.3);
	CHECK(w1.signs != w3.signs);

	Word all_minus = sample_word(5, 200, 1.0);
	Word all_plus = sample_word(5, 200, 0.0);
	for (Sign s : all_minus.signs) CHECK(s == Sign::minus);
	for (Sign s : all_plus.signs) CHECK(s == Sign::plus);

	// Frequency at n = 1e5: sd of the mean is ~0.00145, allow 4 sd.
	Word big = sample_word(777, 100000, 0.3);
	std::size_t minus_count = 0;
	for (Sign s : big.signs)
		if (s == Sign::minus) ++minus_count;
	double freq = static_cast<double>(minus_count) / 100000.0;
	CHECK(freq == doctest::Approx(0.3).epsilon(0.02));

	CHECK_THROWS_AS(sample_word(1, 10, -0.5), ParameterOutOfRange);
	CHECK_THROWS_AS(sample_word(1, 10, 1.5), ParameterOutOfRange);
}

TEST_CASE("orbit of 2/7 under two minus steps") {
	AmSystem sys = from_resonance({0.5, 2, 1, 0.5});
	Word w;
	w.signs = {Sign::minus, Sign::minus};
	Orbit orb = orbit(sys, 2.0 / 7.0, w);
	REQUIRE(orb.points.size() == 3);
	CHECK(orb.points[0] == 2.0 / 7.0);
	CHECK(orb.points[1] == 1.0 / 7.0);  // halving is exact
	CHECK(orb.points[2] == 1.0 / 14.0);
	CHECK(orb.x0 == 2.0 / 7.0);
	CHECK(orb.word.signs == w.signs);

	CHECK_THROWS_AS(orbit(sys, 1.5, w), DomainError);
	CHECK_THROWS_AS(orbit(sys, -0.1, w), DomainError);
}

TEST_CASE("jump detection on the disjoint 2:1 system") {
	AmSystem sys = from_resonance({0.5, 2, 1, 0.5});

	SUBCASE("gap bounds are the kink images") {
		Orbit orb = orbit(sys, 0.2, Word{});
		JumpRecord rec = detect_jumps(sys, orb);
		CHECK(rec.gap_lo == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
		CHECK(rec.gap_hi == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
		CHECK(rec.times.empty());
	}

	SUBCASE("a left-to-right crossing is one jump") {
		// f_plus(0.2) = 1 - 0.5*0.8 = 0.6 >= 4/7: side flips at step 0.
		Word w;
		w.signs = {Sign::plus};
		JumpRecord rec = detect_jumps(sys, orbit(sys, 0.2, w));
		REQUIRE(rec.times.size() == 1);
		CHECK(rec.times[0] == 0);
	}

	SUBCASE("starting inside the gap is not a jump") {
		Word w;
		w.signs = {Sign::minus};
		JumpRecord rec = detect_jumps(sys, orbit(sys, 0.5, w));
		CHECK(rec.times.empty());
	}

	SUBCASE("gap endpoints count as the adjacent component") {
		// 3/7 sits in the left closed component; one minus step keeps it left.
		Word w;
		w.signs = {Sign::minus};
		JumpRecord rec = detect_jumps(sys, orbit(sys, 3.0 / 7.0, w));
		CHECK(rec.times.empty());
	}

	SUBCASE("border systems have no gap to jump") {
		AmSystem border = new_system(2.0 / 3.0, 2.0, 2.0 / 3.0, 2.0);
		CHECK_THROWS_AS(detect_jumps(border, orbit(border, 0.2, Word{})),
		                NotDisjointType);
	}
}

TEST_CASE("coupled orbits synchronize under positive exponents") {
	AmSystem sys = from_resonance({0.5, 2, 1, 0.5});
	Word w = sample_word(2024, 5000, 0.5);
	std::vector<double> gaps = synchronization_gap(sys, 0.1, 0.9, w);
	REQUIRE(gaps.size() == w.size());
	CHECK(gaps.back() < 1e-6);
	CHECK(gaps.back() < gaps.front());
	CHECK_THROWS_AS(synchronization_gap(sys, -0.1, 0.5, w), DomainError);
}

TEST_CASE("omega-limit sampling is schedule independent") {
	AmSystem sys = from_resonance({0.5, 2, 1, 0.5});
	std::vector<double> serial = omega_limit_sample(sys, 0.5, 0.5, 40, 400, 1, 10, 99, 1);
	std::vector<double> threaded = omega_limit_sample(sys, 0.5, 0.5, 40, 400, 1, 10, 99, 3);
	CHECK(serial == threaded);
	for (double x : serial) {
		CHECK(x >= 0.0);
		CHECK(x <= 1.0);
	}
	// min_jumps = 0 keeps every orbit.
	std::vector<double> all = omega_limit_sample(sys, 0.5, 0.5, 40, 400, 0, 10, 99, 1);
	CHECK(all.size() == 400u);
	// Different seed, different cloud.
	std::vector<double> other = omega_limit_sample(sys, 0.5, 0.5, 40, 400, 0, 10, 100, 1);
	CHECK(all != other);
	CHECK_THROWS_AS(omega_limit_sample(sys, 0.5, 0.5, 4, 10, 0, 20, 1, 1),
	                ParameterOutOfRange);
}

TEST_CASE("csv export is stable byte for byte") {
	AmSystem sys = from_resonance({0.5, 2, 1, 0.5});
	std::vector<double> vals = {0.1, 0.25, 1.0 / 3.0};
	const std::string path = "amdyn_test_points.csv";
	export_points_csv(path, sys, 31, vals);
	std::ostringstream first;
	first << std::ifstream(path).rdbuf();
	export_points_csv(path, sys, 31, vals);
	std::ostringstream second;
	second << std::ifstream(path).rdbuf();
	std::remove(path.c_str());

	CHECK(first.str() == second.str());
	CHECK(first.str().find("seed") != std::string::npos);
	CHECK(first.str().find("0.333333333333") != std::string::npos);  // 12 digits
	std::size_t lines = 0;
	for (char c : first.str())
		if (c == '\n') ++lines;
	CHECK(lines >= vals.size());  // header plus one line per value
}
