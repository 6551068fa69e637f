#include <doctest.h>

#include <cmath>
#include <vector>

#include "sensorlife/channel.hpp"
#include "sensorlife/errors.hpp"
#include "test_support.hpp"

using namespace sensorlife;
using testsupport::rel_close;

TEST_CASE("gain_pdf") {
    CHECK(gain_pdf(0, 1) == 1.0);
    CHECK(rel_close(gain_pdf(1, 1), 0.36788, 1e-4));
    for (double s : {0.5, 1.0, 3.0}) {
        // Simpson's rule on [0, 60 s]
        const int n = 20000;
        const double hi = 60 * s, h = hi / n;
        double sum = gain_pdf(0, s) + gain_pdf(hi, s);
        for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * gain_pdf(i * h, s);
        CHECK(std::abs(sum * h / 3 - 1.0) < 1e-9);
    }
}

TEST_CASE("inverse-CDF sampling") {
    CHECK(gain_from_uniform(0.0, 1.0) == 0.0);
    CHECK(rel_close(gain_from_uniform(0.5, 1.0), 0.69315, 1e-4));
    CHECK(unit_uniform(0) == 0.0);
    CHECK(unit_uniform(~0ULL) < 1.0);

    GainSampler s(42, 1.0);
    double sum = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_gain(s);
    CHECK(std::abs(sum / n - 1.0) < 0.005);
}

TEST_CASE("sampler is deterministic per seed") {
    GainSampler a(7, 2.0), b(7, 2.0), c(8, 2.0);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a();
        CHECK(x == b());
        differs = differs || x != c();
    }
    CHECK(differs);
}

TEST_CASE("build_quantizer") {
    const Quantizer q1 = build_quantizer(1, 1.0);
    REQUIRE(q1.levels.size() == 3);
    CHECK(q1.levels[0] == 0.0);
    CHECK(rel_close(q1.levels[1], std::log(2.0), 1e-15));
    CHECK(std::isinf(q1.levels[2]));

    const Quantizer q2 = build_quantizer(2, 1.0);
    REQUIRE(q2.levels.size() == 5);
    CHECK(rel_close(q2.levels[1], 0.28768, 1e-4));
    CHECK(rel_close(q2.levels[2], 0.69315, 1e-4));
    CHECK(rel_close(q2.levels[3], 1.38629, 1e-4));
    CHECK(rel_close(gain_cdf(q1.levels[1], 1.0), 0.5, 1e-15));

    for (int b = 1; b <= 10; ++b) {
        const double s = 0.3 * b;
        const Quantizer q = build_quantizer(b, s);
        CHECK(q.levels.size() == (1u << b) + 1);
        for (int i = 1; i < q.intervals(); ++i) {
            CHECK(q.levels[i] > q.levels[i - 1]);
            CHECK(rel_close(gain_cdf(q.levels[i], s), static_cast<double>(i) / (1 << b), 1e-12));
        }
    }
    CHECK_THROWS_AS(build_quantizer(0, 1.0), ParameterError);
    CHECK_THROWS_AS(build_quantizer(17, 1.0), ParameterError);
}

TEST_CASE("quantize") {
    const Quantizer q2 = build_quantizer(2, 1.0);
    CHECK(quantize(0.0, q2) == 1);
    CHECK(quantize(0.5, q2) == 2);
    CHECK(quantize(1e9, q2) == 4);
    for (int b = 1; b <= 8; ++b) {
        const Quantizer q = build_quantizer(b, 1.0);
        for (int i = 1; i <= q.intervals(); ++i) CHECK(quantize(q.levels[i - 1], q) == i);
    }
}

TEST_CASE("quantized gain never overestimates") {
    testsupport::Gen g(99);
    for (int b = 1; b <= 8; ++b) {
        const Quantizer q = build_quantizer(b, 1.3);
        for (int k = 0; k < 2000; ++k) {
            const double h2 = g.log_uniform(1e-8, 50.0);
            const int i = quantize(h2, q);
            CHECK(q.levels[i - 1] <= h2);
            CHECK(h2 < q.levels[i]);
        }
    }
}

TEST_CASE("interval frequencies are equal") {
    for (int b : {1, 3, 5}) {
        const Quantizer q = build_quantizer(b, 1.0);
        std::vector<long> counts(q.intervals(), 0);
        GainSampler s(1000 + b, 1.0);
        const long n = 1000000;
        for (long k = 0; k < n; ++k) ++counts[quantize(s(), q) - 1];
        const double p = 1.0 / q.intervals();
        const double se = std::sqrt(p * (1 - p) / n);
        for (long c : counts) CHECK(std::abs(static_cast<double>(c) / n - p) <= 3 * se + 1e-12);
    }
}
