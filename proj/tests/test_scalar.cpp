#include <random>

#include "doctest.h"
#include "voalab/rational.hpp"

using namespace voalab;

TEST_CASE("phase values at the four supported denominators") {
    CHECK(phase(Rat(0)) == GaussScalar(1));
    CHECK(phase(make_rat(1, 2)) == GaussScalar(-1));
    CHECK(phase(make_rat(1, 4)) == GaussScalar::i());
    CHECK(phase(make_rat(3, 4)) == -GaussScalar::i());
    CHECK(phase(Rat(7)) == GaussScalar(1));
    CHECK(phase(make_rat(-1, 4)) == -GaussScalar::i());
    CHECK_THROWS_AS(phase(make_rat(1, 3)), PhaseError);
    CHECK_THROWS_AS(phase(make_rat(5, 8)), PhaseError);
}

TEST_CASE("field operations are exact") {
    GaussScalar one_plus_i(Rat(1), Rat(1));
    GaussScalar one_minus_i(Rat(1), Rat(-1));
    CHECK(one_plus_i * one_minus_i == GaussScalar(2));
    CHECK(GaussScalar::i().inv() == -GaussScalar::i());
    GaussScalar z(make_rat(3, 2), Rat(-5));
    CHECK(z.conj() == GaussScalar(make_rat(3, 2), Rat(5)));
    CHECK_THROWS_AS(GaussScalar(0).inv(), DivisionByZeroError);
}

TEST_CASE("phase is a homomorphism with period one") {
    std::vector<Rat> grid;
    for (int num = -8; num <= 8; ++num) {
        grid.push_back(make_rat(num, 1));
        grid.push_back(make_rat(num, 2));
        grid.push_back(make_rat(num, 4));
    }
    for (const auto& r : grid) {
        CHECK(phase(Rat(r + 1)) == phase(r));
        CHECK(phase(r) * phase(r).conj() == GaussScalar(1));
        for (const auto& s : grid) CHECK(phase(r) * phase(s) == phase(Rat(r + s)));
    }
}

namespace {

GaussScalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 12);
    return GaussScalar(make_rat(num(rng), den(rng)), make_rat(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("sampled field axioms") {
    std::mt19937 rng(20240811);
    for (int t = 0; t < 200; ++t) {
        GaussScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        if (!a.is_zero()) {
            CHECK(a * a.inv() == GaussScalar(1));
            CHECK((a * b) / a == b);
        }
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
}

TEST_CASE("canonical textual form round-trips") {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        GaussScalar a = random_scalar(rng);
        CHECK(parse_gauss(a.to_string()) == a);
    }
    CHECK(parse_gauss("3/2-5*i") == GaussScalar(make_rat(3, 2), Rat(-5)));
    CHECK(parse_gauss("i") == GaussScalar::i());
    CHECK(parse_gauss("-i") == -GaussScalar::i());
    CHECK(parse_gauss("0") == GaussScalar(0));
    CHECK(GaussScalar(make_rat(4, 2)).to_string() == "2");
    CHECK_THROWS_AS(parse_gauss("1/0"), Error);
    CHECK_THROWS_AS(parse_gauss("x+i"), ParseError);
}
