#include "doctest.h"

#include <set>
#include <stdexcept>

#include "hjelmslev/galois_ring.hpp"

using namespace hjelmslev;

namespace {

RingElement elem(const GaloisRing& R, std::initializer_list<int> c) {
    return R.from_coeffs(std::vector<int>(c));
}

}  // namespace

TEST_CASE("GR(16,4) products of known elements") {
    const GaloisRing R(parse_ring_spec("G16"));
    CHECK(R.order() == 16);
    CHECK(R.q() == 4);
    CHECK(R.characteristic() == 4);
    const RingElement X = R.generator();
    CHECK(R.mul(X, X) == elem(R, {3, 3}));
    CHECK(R.mul(R.from_int(2), elem(R, {2, 2})) == R.zero());
    CHECK(R.inverse(X) == elem(R, {3, 3}));
    CHECK(R.mul(X, R.inverse(X)) == R.one());
}

TEST_CASE("Z25 inverse of 7 is 18") {
    const GaloisRing R(parse_ring_spec("Z25"));
    CHECK(R.inverse(R.from_int(7)) == R.from_int(18));
    CHECK_THROWS_AS(R.inverse(R.from_int(10)), std::domain_error);
}

TEST_CASE("unit counts follow |R| - |R|/q") {
    for (const char* name : {"Z4", "Z8", "Z9", "G16", "Z25", "Z27", "F4"}) {
        const GaloisRing R(parse_ring_spec(name));
        int units = 0;
        for (RingElement a : R.elements()) units += R.is_unit(a) ? 1 : 0;
        CHECK_MESSAGE(units == R.order() - R.order() / R.q(), name);
    }
}

TEST_CASE("ring axioms hold exhaustively on small rings") {
    for (const char* name : {"Z4", "G16", "Z9", "F8"}) {
        const GaloisRing R(parse_ring_spec(name));
        const auto all = R.elements();
        for (RingElement a : all) {
            CHECK(R.add(a, R.neg(a)) == R.zero());
            CHECK(R.mul(a, R.one()) == a);
            for (RingElement b : all) {
                REQUIRE(R.mul(a, b) == R.mul(b, a));
                REQUIRE(R.sub(R.add(a, b), b) == a);
                for (RingElement c : all)
                    REQUIRE(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
            }
        }
    }
}

TEST_CASE("valuation and ideal chain") {
    const GaloisRing R(parse_ring_spec("Z27"));
    CHECK(R.valuation(R.zero()) == 3);
    CHECK(R.valuation(R.from_int(1)) == 0);
    CHECK(R.valuation(R.from_int(6)) == 1);
    CHECK(R.valuation(R.from_int(18)) == 2);
    for (RingElement a : R.elements()) CHECK(R.is_unit(a) == (R.valuation(a) == 0));
}

TEST_CASE("Teichmuller set and digit decomposition") {
    const GaloisRing R(parse_ring_spec("G16"));
    const auto T = R.teichmuller_set();
    REQUIRE(T.size() == 4);
    std::set<RingElement> residues;
    for (RingElement t : T) {
        CHECK(R.pow(t, 4) == t);
        residues.insert(R.residue(t));
    }
    CHECK(residues.size() == 4);
    const RingElement two = R.from_int(2);
    for (RingElement a : R.elements()) {
        const auto digits = R.teichmuller_decompose(a);
        REQUIRE(digits.size() == 2);
        CHECK(R.add(digits[0], R.mul(two, digits[1])) == a);
    }
}

TEST_CASE("residue is a ring homomorphism and lift is a section") {
    const GaloisRing R(parse_ring_spec("G16"));
    const GaloisRing& F = R.residue_field();
    CHECK(F.order() == 4);
    CHECK(F.m() == 1);
    for (RingElement a : R.elements())
        for (RingElement b : R.elements()) {
            REQUIRE(R.residue(R.add(a, b)) == F.add(R.residue(a), R.residue(b)));
            REQUIRE(R.residue(R.mul(a, b)) == F.mul(R.residue(a), R.residue(b)));
        }
    for (RingElement s : F.elements()) CHECK(R.residue(R.lift(s)) == s);
}

TEST_CASE("ring spec parsing and validation") {
    CHECK(parse_ring_spec("Z25") == make_ring_spec(5, 1, 2));
    CHECK(parse_ring_spec("GR(16,4)") == make_ring_spec(2, 2, 2));
    CHECK(parse_ring_spec("F4") == make_ring_spec(2, 2, 1));
    CHECK(parse_ring_spec(make_ring_spec(2, 2, 2).to_string()) == make_ring_spec(2, 2, 2));
    CHECK(default_modulus(2, 2) == std::vector<int>{1, 1, 1});
    CHECK_THROWS(parse_ring_spec("Z6"));
    CHECK_THROWS(parse_ring_spec("nonsense"));
    CHECK_THROWS(make_ring_spec(2, 2, 2, std::vector<int>{0, 0, 1}));
    CHECK_THROWS(make_ring_spec(4, 1, 2));
    CHECK(is_irreducible_mod_p(std::vector<int>{1, 1, 1}, 2));
    CHECK_FALSE(is_irreducible_mod_p(std::vector<int>{1, 0, 1}, 2));
}

TEST_CASE("out-of-range elements are rejected") {
    const GaloisRing R(parse_ring_spec("Z4"));
    CHECK_THROWS_AS(R.add(RingElement{4}, R.one()), std::out_of_range);
    CHECK_THROWS_AS(R.mul(R.one(), RingElement{100}), std::out_of_range);
}

TEST_CASE("formatting") {
    const GaloisRing Z(parse_ring_spec("Z9"));
    CHECK(Z.format(Z.from_int(7)) == "7");
    const GaloisRing R(parse_ring_spec("G16"));
    CHECK(R.coeffs(R.generator()) == std::vector<int>{0, 1});
}
