#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chaincode/bruteforce.hpp"
#include "chaincode/code.hpp"

using namespace chaincode;

namespace {

ring_ptr z4() {
    static ring_ptr r = make_ring({ring_family::integer_modular, 2, 1, 2, {}});
    return r;
}

ring_ptr z25() {
    static ring_ptr r = make_ring({ring_family::integer_modular, 5, 1, 2, {}});
    return r;
}

ring_ptr f2u4() {
    static ring_ptr r = make_ring({ring_family::poly_extension, 2, 1, 4, {}});
    return r;
}

rpoly P(const ring_ptr& r, std::vector<relem> c) {
    return make_rpoly(r, std::move(c));
}

// (z - 1)^e over the given ring.
rpoly z_minus_1_pow(const ring_ptr& r, std::uint32_t e) {
    rpoly acc = P(r, {1});
    rpoly base = P(r, {r->neg(r->one()), 1});
    for (std::uint32_t k = 0; k < e; ++k) acc = mul(acc, base);
    return acc;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> corners_of(
    const cyclic_code& C) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const canonical_entry& e : C.canonical_generators())
        out.emplace_back(e.i, e.t);
    return out;
}

} // namespace

TEST_CASE("two-generator code over Z_4, n = 3: full structure") {
    cyclic_code C =
        cyclic_code::build(z4(), 3, {P(z4(), {2}), P(z4(), {3, 1})});
    // Corners (1, 0) and (0, 1); the degree-1 generator's constant is
    // digit-reduced against the constant row 2, so 3 becomes 1.
    CHECK(corners_of(C) ==
          std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 0},
                                                               {0, 1}});
    REQUIRE(C.normal_form().size() == 2);
    CHECK(C.normal_form()[0] == P(z4(), {2}));
    CHECK(C.normal_form()[1] == P(z4(), {1, 1}));
    CHECK(C.rank() == 3);
    // |C| = |Tor_0| * |Tor_1| = 2^2 * 2^3.
    CHECK(C.cardinality_exponent() == 5);
    REQUIRE(C.torsion_tower().size() == 2);
    CHECK(C.torsion_tower()[0].gen == make_fpoly({1, 1}));
    CHECK(C.torsion_tower()[1].gen == make_fpoly({1}));
}

TEST_CASE("normal form is invariant across presentations") {
    // Same ideal of Z_4[z]/(z^3 - 1) presented four ways: reordered,
    // unit-scaled (3 is a unit), and padded with a redundant member
    // z(z+1) + 2.
    std::vector<std::vector<rpoly>> presentations = {
        {P(z4(), {2}), P(z4(), {3, 1})},
        {P(z4(), {3, 1}), P(z4(), {2})},
        {P(z4(), {2}), scale(P(z4(), {3, 1}), 3)},
        {P(z4(), {2}), P(z4(), {3, 1}), P(z4(), {2, 1, 1})},
    };
    cyclic_code first = cyclic_code::build(z4(), 3, presentations[0]);
    for (std::size_t k = 1; k < presentations.size(); ++k) {
        cyclic_code other = cyclic_code::build(z4(), 3, presentations[k]);
        CHECK(other.normal_form() == first.normal_form());
        REQUIRE(other.echelon_basis().size() ==
                first.echelon_basis().size());
        for (std::size_t i = 0; i < first.echelon_basis().size(); ++i) {
            CHECK(other.echelon_basis()[i].pivot_val ==
                  first.echelon_basis()[i].pivot_val);
            CHECK(other.echelon_basis()[i].poly ==
                  first.echelon_basis()[i].poly);
        }
    }
    // The normal form is idempotent: rebuilding from it gives it back.
    cyclic_code again = cyclic_code::build(z4(), 3, first.normal_form());
    CHECK(again.normal_form() == first.normal_form());
}

TEST_CASE("principal divisor code over Z_4, n = 3 is free") {
    // z - 1 divides z^3 - 1 exactly, so no extra corner appears.
    cyclic_code C = cyclic_code::build(z4(), 3, {P(z4(), {3, 1})});
    CHECK(corners_of(C) ==
          std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
    CHECK(C.rank() == 2);
    CHECK(C.cardinality_exponent() == 4);
    CHECK(C.torsion_tower()[0].gen == C.torsion_tower()[1].gen);
}

TEST_CASE("non-divisor principal code gains a wrap corner") {
    // (z-1)^3 does not divide z^4 - 1 over Z_4: multiplying by (z-1)
    // and reducing leaves 2(z^2+1), so a valuation-1 corner of degree
    // 2 appears above the monic degree-3 one.
    cyclic_code C = cyclic_code::build(z4(), 4, {z_minus_1_pow(z4(), 3)});
    CHECK(corners_of(C) ==
          std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 2},
                                                               {0, 3}});
    CHECK(C.rank() == 2);
    CHECK(C.cardinality_exponent() == 3);
    CHECK(C.torsion_tower()[1].gen == make_fpoly({1, 0, 1}));
}

TEST_CASE("reference structure: Z_25, n = 25, <5, (z-1)^24>") {
    cyclic_code C = cyclic_code::build(
        z25(), 25, {P(z25(), {5}), z_minus_1_pow(z25(), 24)});
    CHECK(corners_of(C) ==
          std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 0},
                                                               {0, 24}});
    CHECK(C.rank() == 25);
    CHECK(C.cardinality_exponent() == 26);
    CHECK(C.torsion_tower()[1].gen == make_fpoly({1}));
}

TEST_CASE("reference structure: F_2[u]/(u^4), n = 6, principal non-monic") {
    // g^2 (z^3 - 1) + g^3 (z^2 - 1); every element sits above
    // valuation 2, so the two bottom torsion codes are zero.
    ring_ptr r = f2u4();
    rpoly gen = add(mul_gamma_pow(P(r, {1, 0, 0, 1}), 2),
                    mul_gamma_pow(P(r, {1, 0, 1}), 3));
    cyclic_code C = cyclic_code::build(r, 6, {gen});
    CHECK(corners_of(C) ==
          std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}});
    CHECK(C.rank() == 3);
    CHECK(C.cardinality_exponent() == 6);
    REQUIRE(C.torsion_tower().size() == 4);
    CHECK(C.torsion_tower()[0].zero);
    CHECK(C.torsion_tower()[1].zero);
    CHECK(C.torsion_tower()[2].gen == make_fpoly({1, 0, 0, 1}));
    CHECK(C.torsion_tower()[3].gen == make_fpoly({1, 0, 0, 1}));
}

TEST_CASE("zero code, including one reached by reduction") {
    cyclic_code C = cyclic_code::build(z4(), 3, {P(z4(), {})});
    CHECK(C.is_zero_code());
    CHECK(C.cardinality_exponent() == 0);
    CHECK(C.rank() == 0);
    CHECK(C.contains(P(z4(), {})));
    CHECK_FALSE(C.contains(P(z4(), {1})));
    CHECK_THROWS_AS((void)C.canonical_generators(), input_error);
    CHECK_THROWS_AS((void)C.normal_form(), input_error);
    // z^3 + 3 is z^3 - 1, which reduces to zero mod z^3 - 1.
    cyclic_code D = cyclic_code::build(z4(), 3, {P(z4(), {3, 0, 0, 1})});
    CHECK(D.is_zero_code());
}

TEST_CASE("membership agrees with hand checks") {
    cyclic_code C =
        cyclic_code::build(z4(), 3, {P(z4(), {2}), P(z4(), {3, 1})});
    CHECK(C.contains(P(z4(), {0, 1, 1})));   // z(z+1)
    CHECK(C.contains(P(z4(), {2, 3, 1})));   // z^2+3z+2 = (z+1)(z+2)
    CHECK(C.contains(P(z4(), {0, 2})));      // 2z
    CHECK_FALSE(C.contains(P(z4(), {1})));   // units stay outside
    CHECK_FALSE(C.contains(P(z4(), {0, 1})));
    // Membership reduces mod z^n - 1 first.
    CHECK(C.contains(P(z4(), {0, 0, 0, 0, 1, 1}))); // z^5 + z^4 = z^2 + z
}

TEST_CASE("minimal spanning set spans and matches rank") {
    for (std::uint32_t n : {3u, 4u}) {
        std::vector<rpoly> gens =
            n == 3 ? std::vector<rpoly>{P(z4(), {2}), P(z4(), {3, 1})}
                   : std::vector<rpoly>{z_minus_1_pow(z4(), 3)};
        cyclic_code C = cyclic_code::build(z4(), n, gens);
        std::vector<rpoly> span = C.minimal_spanning_set();
        CHECK(span.size() == C.rank());
        // The z-shift multiples in the spanning set generate the whole
        // ideal as a module: compare against the dumb ideal closure.
        span_closure direct = close_ideal_span(z4(), n, gens);
        span_closure from_span = close_module_span(z4(), n, span);
        CHECK(from_span.same_set(direct));
    }
}

TEST_CASE("echelon reduction is a module operation with saturation") {
    // A single valuation-1 row over Z_4, n = 2: the basis keeps it
    // (its saturation 2 * (2z+2) = 0 adds nothing).
    std::vector<echelon_row> rows =
        echelon_reduce(z4(), 2, {P(z4(), {2, 2})});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].pivot_val == 1);
    CHECK(rows[0].poly == P(z4(), {2, 2}));
    // Redundant module combinations collapse to the same basis.
    std::vector<echelon_row> padded = echelon_reduce(
        z4(), 2, {P(z4(), {2, 2}), scale(P(z4(), {2, 2}), 3)});
    REQUIRE(padded.size() == 1);
    CHECK(padded[0].poly == rows[0].poly);
}

TEST_CASE("build rejects bad inputs") {
    CHECK_THROWS_AS(cyclic_code::build(z4(), 3, {}), input_error);
    CHECK_THROWS_AS(
        cyclic_code::build(z4(), 3, {P(f2u4(), {1})}), input_error);
    CHECK_THROWS_AS(cyclic_code::build(z4(), 0, {P(z4(), {1})}),
                    input_error);
}

TEST_CASE("structure agrees with the enumeration oracle on a mixed set") {
    // A couple of handpicked shapes whose full span is small enough to
    // enumerate: cardinality, torsion generators and membership all
    // have to match the dumb closure.
    struct shape {
        ring_ptr r;
        std::uint32_t n;
        std::vector<rpoly> gens;
    };
    ring_ptr z9 = make_ring({ring_family::integer_modular, 3, 1, 2, {}});
    std::vector<shape> shapes;
    shapes.push_back({z4(), 4, {z_minus_1_pow(z4(), 3)}});
    shapes.push_back({z9, 3, {P(z9, {3, 3})}});
    shapes.push_back({f2u4(), 2, {P(f2u4(), {4, 2})}});
    for (const shape& s : shapes) {
        cyclic_code C = cyclic_code::build(s.r, s.n, s.gens);
        span_closure oracle = close_ideal_span(s.r, s.n, s.gens);
        std::uint64_t card = 1;
        for (std::uint64_t k = 0; k < C.cardinality_exponent(); ++k)
            card *= s.r->p();
        CHECK(card == oracle.size());
        for (std::uint32_t l = 0; l < s.r->nu(); ++l) {
            const torsion_level& tl = C.torsion_tower()[l];
            fpoly expect = oracle.torsion_generator(l);
            if (tl.zero)
                CHECK(is_zero(expect));
            else
                CHECK(tl.gen == expect);
        }
    }
}
