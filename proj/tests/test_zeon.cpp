/**
 * Copyright 2026 permlab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "permlab/exact.hpp"
#include "permlab/grassmann.hpp"
#include "permlab/verify.hpp"
#include "permlab/zeon.hpp"

using namespace permlab;
using permtest::floored_rel_err;
using permtest::per_laplace;
using permtest::random_real_matrix;

TEST_CASE("zeon generators square to zero") {
    for (int mode = 0; mode < 3; ++mode) {
        const ZeonElement x =
            ZeonElement::monomial(3, 1u << mode, 0, Scalar{1.0, 0.0});
        const ZeonElement y =
            ZeonElement::monomial(3, 0, 1u << mode, Scalar{1.0, 0.0});
        CHECK((x * x).max_coeff_distance(ZeonElement(3)) == 0.0);
        CHECK((y * y).max_coeff_distance(ZeonElement(3)) == 0.0);
    }
}

TEST_CASE("zeon multiplication commutes and associates exactly") {
    // Integer coefficients keep every product exact in double arithmetic, so
    // commutativity and associativity can be asserted with bit equality.
    Rng rng(0xbead, 0);
    const auto random_integer_zeon = [&](int modes) {
        ZeonElement x(modes);
        for (unsigned s = 0; s < (1u << modes); ++s) {
            for (unsigned u = 0; u < (1u << modes); ++u) {
                const double c = static_cast<double>(rng.below(7)) - 3.0;
                x.coeff(s, u) = Scalar{c, 0.0};
            }
        }
        return x;
    };
    for (int rep = 0; rep < 20; ++rep) {
        const ZeonElement x = random_integer_zeon(3);
        const ZeonElement y = random_integer_zeon(3);
        const ZeonElement z = random_integer_zeon(3);
        CHECK((x * y).max_coeff_distance(y * x) == 0.0);
        CHECK(((x * y) * z).max_coeff_distance(x * (y * z)) == 0.0);
    }
}

TEST_CASE("zeon_exp truncates and matches the series") {
    const ZeonElement x =
        ZeonElement::monomial(2, 0b01, 0b01, Scalar{2.0, 0.0}) +
        ZeonElement::monomial(2, 0b10, 0b10, Scalar{3.0, 0.0});
    const ZeonElement ex = zeon_exp(x);
    // exp(2 s1 u1 + 3 s2 u2) = 1 + 2 s1 u1 + 3 s2 u2 + 6 s1 u1 s2 u2.
    CHECK(ex.coeff(0, 0) == Scalar{1.0, 0.0});
    CHECK(ex.coeff(0b01, 0b01) == Scalar{2.0, 0.0});
    CHECK(ex.coeff(0b10, 0b10) == Scalar{3.0, 0.0});
    CHECK(ex.coeff(0b11, 0b11) == Scalar{6.0, 0.0});
    CHECK(ex.coeff(0b01, 0b10) == Scalar{0.0, 0.0});
}

TEST_CASE("top coefficient of the quadratic exponential is the permanent") {
    SUBCASE("exhaustive 2x2 over {-1,0,1,2}") {
        for (const Matrix& a : permtest::corpus_2x2_m1012()) {
            const Scalar want = per_laplace(a);
            const Scalar got = berezin_top_coefficient(zeon_exp_quadratic(a));
            CHECK(floored_rel_err(got, want) < 1e-12);
        }
    }
    SUBCASE("random 3x3 and 4x4") {
        Rng rng(0xfeed, 1);
        for (std::size_t n = 3; n <= 4; ++n) {
            for (int rep = 0; rep < 10; ++rep) {
                const Matrix a = random_real_matrix(rng, n, -1.0, 1.0);
                const Scalar want = per_laplace(a);
                const Scalar got = berezin_top_coefficient(zeon_exp_quadratic(a));
                CHECK(floored_rel_err(got, want) < 1e-10);
            }
        }
    }
    SUBCASE("complex entries") {
        Matrix a(3, 3);
        Rng rng(0xfeed, 2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                a.at(i, j) = Scalar{rng.uniform() - 0.5, rng.uniform() - 0.5};
        CHECK(floored_rel_err(berezin_top_coefficient(zeon_exp_quadratic(a)),
                              per_laplace(a)) < 1e-12);
    }
}

TEST_CASE("grassmann generators anticommute and square to zero") {
    using G = SingleModeGrassmann;
    for (int i = 0; i < 4; ++i) {
        const G gi = G::generator(static_cast<G::Generator>(i));
        CHECK((gi * gi).max_coeff_distance(G()) == 0.0);
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const G gj = G::generator(static_cast<G::Generator>(j));
            const G anti = gi * gj + gj * gi;
            CHECK(anti.max_coeff_distance(G()) == 0.0);
        }
    }
}

TEST_CASE("composite pair is even: phi commutes with the odd generators") {
    using G = SingleModeGrassmann;
    const G phi = G::phi();
    for (int i = 0; i < 4; ++i) {
        const G gi = G::generator(static_cast<G::Generator>(i));
        CHECK((phi * gi).max_coeff_distance(gi * phi) == 0.0);
    }
    // phi* phi is the full four-generator monomial with the conventional sign.
    const G full = G::phi_star() * phi;
    CHECK(full.coeff(0b1111) != Scalar{0.0, 0.0});
    // (phi)^2 = 0: the pair is nilpotent like a single zeon symbol.
    CHECK((phi * phi).max_coeff_distance(G()) == 0.0);
}

TEST_CASE("grassmann_exp truncates correctly") {
    using G = SingleModeGrassmann;
    const G x = G::phi() * Scalar{2.0, 0.0};
    const G ex = grassmann_exp(x);
    // exp(2 phi) = 1 + 2 phi since phi^2 = 0.
    G want = G::constant(Scalar{1.0, 0.0}) + G::phi() * Scalar{2.0, 0.0};
    CHECK(ex.max_coeff_distance(want) == 0.0);
}

TEST_CASE("decoupling identities hold for every channel") {
    Rng rng(0x1dece, 4);
    const auto random_weight = [&]() {
        const double radius = 10.0 * std::sqrt(rng.uniform());
        const double angle = 2.0 * 3.14159265358979323846 * rng.uniform();
        return Scalar{radius * std::cos(angle), radius * std::sin(angle)};
    };
    std::vector<HsChannel> channels;
    channels.push_back({HsChannel::Kind::density_z2, 2});
    channels.push_back({HsChannel::Kind::zeon_composite_z2, 2});
    for (int p = 2; p <= 5; ++p) {
        channels.push_back({HsChannel::Kind::zp, p});
        channels.push_back({HsChannel::Kind::pairing_zp, p});
    }
    for (const HsChannel& channel : channels) {
        CAPTURE(channel.name());
        for (int rep = 0; rep < 25; ++rep) {
            const IdentityCheck check = verify_hs_identity(channel, random_weight());
            CHECK(check.ok);
            CHECK(check.max_residual <= 1e-12);
        }
    }
}

TEST_CASE("a corrupted root table is detected") {
    const HsChannel channel{HsChannel::Kind::zp, 3};
    const IdentityCheck honest = verify_hs_identity(channel, Scalar{1.5, 0.5});
    CHECK(honest.ok);
    const IdentityCheck corrupted =
        verify_hs_identity(channel, Scalar{1.5, 0.5}, Scalar{1e-3, 0.0});
    CHECK_FALSE(corrupted.ok);
    CHECK(corrupted.max_residual > 1e-12);
}

TEST_CASE("verification suite passes and respects max_n") {
    VerifyOptions options;
    options.max_n = 2;
    const VerifyReport report = run_verification(options);
    CHECK(report.all_ok());
    bool has_n4 = false;
    for (const CheckResult& c : report.checks) {
        if (c.name.find("n4") != std::string::npos) has_n4 = true;
    }
    CHECK_FALSE(has_n4);

    CHECK_THROWS_AS(run_verification(VerifyOptions{5, ""}), ParameterError);
    CHECK_THROWS_AS(run_verification(VerifyOptions{4, "bogus-fault"}),
                    ParameterError);
}

TEST_CASE("fault injection fails the zp identity first") {
    VerifyOptions options;
    options.fault = "omega-table";
    const VerifyReport report = run_verification(options);
    CHECK_FALSE(report.all_ok());
    CHECK(report.first_failure().find("zp") != std::string::npos);
}
