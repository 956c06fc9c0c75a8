#include <catch2/catch_amalgamated.hpp>

#include "adceq/quantizer.hpp"

#include <cmath>
#include <complex>

using namespace adceq;

TEST_CASE("quantizer description for three bits") {
    const QuantizerSpec q = make_quantizer(3);
    CHECK(q.bits == 3);
    CHECK(q.level_count == 8);
    CHECK(q.delta == 2.0);
    REQUIRE(q.levels.size() == 8);
    const double expected[8] = {-7, -5, -3, -1, 1, 3, 5, 7};
    for (int i = 0; i < 8; ++i) CHECK(q.levels[i] == expected[i]);
    CHECK(q.top_level() == 7.0);
    CHECK(q.saturation_input() == 6.0);
    for (int i = 1; i < q.level_count; ++i)
        CHECK(q.threshold(i) == 2.0 * i - q.level_count);
}

TEST_CASE("bits outside the supported range are rejected") {
    CHECK_THROWS_AS(make_quantizer(0), invalid_input);
    CHECK_THROWS_AS(make_quantizer(17), invalid_input);
    CHECK_THROWS_AS(make_quantizer(-3), invalid_input);
    CHECK_NOTHROW(make_quantizer(1));
    CHECK_NOTHROW(make_quantizer(16));
}

TEST_CASE("one-bit quantizer is a sign slicer with ties up") {
    const QuantizerSpec q = make_quantizer(1);
    CHECK(quantize(q, 5.0) == 1.0);
    CHECK(quantize(q, 0.25) == 1.0);
    CHECK(quantize(q, 0.0) == 1.0);
    CHECK(quantize(q, -0.25) == -1.0);
    CHECK(quantize(q, -5.0) == -1.0);
}

TEST_CASE("three-bit mapping hits known points") {
    const QuantizerSpec q = make_quantizer(3);
    CHECK(quantize(q, 0.0) == 1.0);
    CHECK(quantize(q, 1.999) == 1.0);
    CHECK(quantize(q, 2.0) == 3.0);   // boundary resolves toward +inf
    CHECK(quantize(q, -2.0) == -1.0); // same rule on the negative side
    CHECK(quantize(q, 4.5) == 5.0);
    CHECK(quantize(q, 5.999) == 5.0);
    CHECK(quantize(q, 6.0) == 7.0);    // saturation begins
    CHECK(quantize(q, 1e12) == 7.0);
    CHECK(quantize(q, -6.0) == -5.0);  // strict inequality on the bottom side
    CHECK(quantize(q, -6.0000001) == -7.0);
    CHECK(quantize(q, -1e12) == -7.0);
}

TEST_CASE("quantizer output is always a valid level and within one step") {
    for (int bits = 1; bits <= 8; ++bits) {
        const QuantizerSpec q = make_quantizer(bits);
        const double top = q.top_level();
        double prev = -1e300;
        for (int i = -4000; i <= 4000; ++i) {
            const double s = 0.01 * static_cast<double>(i) * (top + 2.0) / 4.0;
            const double y = quantize(q, s);
            // output is one of the declared levels
            const double idx = (y + top) / 2.0;
            REQUIRE(idx == std::floor(idx));
            REQUIRE(idx >= 0.0);
            REQUIRE(idx < static_cast<double>(q.level_count));
            // monotone in the input
            REQUIRE(y >= prev);
            prev = y;
            // within half a step of the input until saturation kicks in
            if (std::abs(s) <= q.saturation_input()) REQUIRE(std::abs(y - s) <= 1.0);
        }
    }
}

TEST_CASE("quantizer is odd symmetric away from decision boundaries") {
    for (int bits = 1; bits <= 6; ++bits) {
        const QuantizerSpec q = make_quantizer(bits);
        for (int i = 0; i <= 500; ++i) {
            const double s = 0.013 + 0.037 * static_cast<double>(i);  // avoids even ints
            REQUIRE(quantize(q, -s) == -quantize(q, s));
        }
    }
}

TEST_CASE("complex quantization applies per real dimension") {
    const QuantizerSpec q = make_quantizer(2);
    const std::complex<double> y = quantize_complex(q, {0.4, -2.7});
    CHECK(y.real() == quantize(q, 0.4));
    CHECK(y.imag() == quantize(q, -2.7));
    CHECK(quantize(q, 0.4) == 1.0);
    CHECK(quantize(q, -2.7) == -3.0);
}

TEST_CASE("non-finite samples are rejected") {
    const QuantizerSpec q = make_quantizer(4);
    CHECK_THROWS_AS(quantize(q, std::nan("")), invalid_input);
    CHECK_THROWS_AS(quantize(q, std::numeric_limits<double>::infinity()), invalid_input);
}
