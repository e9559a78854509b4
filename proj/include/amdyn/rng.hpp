// Seedable, portable random source used everywhere randomness is needed.
//
// This is splitmix64 (Steele/Lea/Flood 2014, public domain constants): a
// 64-bit Weyl sequence pushed through an avalanche mixer.  It is chosen over
// std::mt19937_64 because the output stream is fixed by these five constants
// alone — identical on every platform and standard library, which the
// reproducibility contract of this project requires.  Statistical quality is
// far beyond what orbit sampling needs.

#ifndef AMDYN_RNG_HPP
#define AMDYN_RNG_HPP

#include <cstdint>

namespace amdyn {

class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

	std::uint64_t next_u64() {
		std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
		z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
		z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
		return z ^ (z >> 31);
	}

	// Uniform double in [0,1): top 53 bits scaled by 2^-53.
	double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
	std::uint64_t state_;
};

} // namespace amdyn

#endif
