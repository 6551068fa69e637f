#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sensorlife {

double gain_pdf(double h2, double varsigma);
double gain_cdf(double h2, double varsigma);

// Maps a 64-bit draw to [0, 1) using its top 53 bits.
double unit_uniform(std::uint64_t bits);

double gain_from_uniform(double u, double varsigma);

// Inverse-CDF sampler over std::mt19937_64.
class GainSampler {
public:
    GainSampler(std::uint64_t seed, double varsigma);
    double operator()();
    double uniform();

private:
    std::mt19937_64 engine_;
    double varsigma_;
};

double sample_gain(GainSampler& sampler);

struct Quantizer {
    int b = 1;
    double varsigma = 1.0;
    std::vector<double> levels;  // 2^b + 1 entries, first 0, last +inf

    int intervals() const { return static_cast<int>(levels.size()) - 1; }
};

Quantizer build_quantizer(int b, double varsigma);

// 1-based index i with levels[i-1] <= h2 < levels[i].
int quantize(double h2, const Quantizer& q);

// Stateless 64-bit mixer used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sensorlife
