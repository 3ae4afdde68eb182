#include <doctest.h>

#include <cmath>

#include "betaspec/rng.hpp"
#include "betaspec/signed_log.hpp"

using namespace betaspec;

TEST_CASE("signed-log basics") {
    CHECK(SignedLog::zero().is_zero());
    CHECK(SignedLog::one().value() == 1.0);
    CHECK(SignedLog::from_value(-3.0).value() == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK((SignedLog::from_value(2.0) + SignedLog::from_value(-2.0)).is_zero());
    CHECK((SignedLog::from_value(5.0) * SignedLog::zero()).is_zero());
}

TEST_CASE("signed-log arithmetic agrees with plain doubles") {
    RngStream rng(1234, 0);
    for (int i = 0; i < 20000; ++i) {
        const double a = (rng.uniform01() - 0.5) * 20.0;
        const double b = (rng.uniform01() - 0.5) * 20.0;
        const SignedLog sa = SignedLog::from_value(a);
        const SignedLog sb = SignedLog::from_value(b);
        CHECK((sa + sb).value() == doctest::Approx(a + b).epsilon(1e-12));
        CHECK((sa - sb).value() == doctest::Approx(a - b).epsilon(1e-12));
        CHECK((sa * sb).value() == doctest::Approx(a * b).epsilon(1e-12));
        if (b != 0.0) {
            CHECK((sa / sb).value() == doctest::Approx(a / b).epsilon(1e-12));
        }
    }
}

TEST_CASE("signed-log survives magnitudes far beyond double range") {
    SignedLog big = SignedLog::from_log(1, 5000.0);   // e^5000
    SignedLog big2 = big * big;                       // e^10000
    CHECK(big2.logmag == doctest::Approx(10000.0));
    const SignedLog diff = big2 - big;                // still ~e^10000
    CHECK(diff.sign == 1);
    CHECK(diff.logmag == doctest::Approx(10000.0).epsilon(1e-12));
}

TEST_CASE("log-signed sequence indexing from a negative start") {
    LogSignedSequence seq(-1);
    seq.push_back(SignedLog::zero());             // index -1
    seq.push_back(SignedLog::one());              // index 0
    seq.push_back(SignedLog::from_value(-2.0));   // index 1
    CHECK(seq.start_index() == -1);
    CHECK(seq.max_index() == 1);
    CHECK(seq.sign(-1) == 0);
    CHECK(seq.at(0).value() == 1.0);
    CHECK(seq.at(1).value() == doctest::Approx(-2.0));
}
