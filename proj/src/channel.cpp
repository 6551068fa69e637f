#include "sensorlife/channel.hpp"

#include <cmath>
#include <limits>
#include <algorithm>

#include "sensorlife/errors.hpp"

namespace sensorlife {

double gain_pdf(double h2, double varsigma) {
    if (h2 < 0.0) return 0.0;
    return std::exp(-h2 / varsigma) / varsigma;
}

double gain_cdf(double h2, double varsigma) {
    if (h2 <= 0.0) return 0.0;
    return -std::expm1(-h2 / varsigma);
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double gain_from_uniform(double u, double varsigma) { return -varsigma * std::log1p(-u); }

GainSampler::GainSampler(std::uint64_t seed, double varsigma) : engine_(seed), varsigma_(varsigma) {}

double GainSampler::uniform() { return unit_uniform(engine_()); }

double GainSampler::operator()() { return gain_from_uniform(uniform(), varsigma_); }

double sample_gain(GainSampler& sampler) { return sampler(); }

Quantizer build_quantizer(int b, double varsigma) {
    if (b < 1 || b > 16) throw ParameterError("feedback bits must lie in [1, 16]");
    if (!(varsigma > 0.0)) throw ParameterError("varsigma must be positive");
    Quantizer q;
    q.b = b;
    q.varsigma = varsigma;
    const int n = 1 << b;
    q.levels.reserve(n + 1);
    for (int i = 0; i < n; ++i)
        q.levels.push_back(-varsigma * std::log1p(-static_cast<double>(i) / n));
    q.levels.push_back(std::numeric_limits<double>::infinity());
    return q;
}

int quantize(double h2, const Quantizer& q) {
    // First level strictly above h2 closes the interval.
    auto it = std::upper_bound(q.levels.begin(), q.levels.end(), h2);
    int i = static_cast<int>(it - q.levels.begin());
    return std::clamp(i, 1, q.intervals());
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace sensorlife
