#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "g2gaps/tuples.hpp"
#include "oracles.hpp"

using namespace g2gaps;

TEST_CASE("tuple construction") {
    CHECK_THROWS_AS(HTuple(std::vector<QuadInt>{}), ValidationError);
    CHECK_THROWS_AS(HTuple(std::vector<QuadInt>{{0, 0}, {0, 0}}), ValidationError);
    HTuple t = HTuple::from_integers({0, 2, 6});
    CHECK(t.k() == 3);
    CHECK(t.all_rational());
    CHECK(!HTuple(std::vector<QuadInt>{{0, 0}, {1, 1}}).all_rational());
}

TEST_CASE("admissibility of the corollary tuples") {
    HTuple pair = HTuple::from_integers({0, 2});
    for (const FieldParams& f : FieldParams::all()) CHECK(is_admissible(f, pair).admissible);

    HTuple triple = HTuple::from_integers({0, 2, 6});
    CHECK(is_admissible(FieldParams::make(-1), triple).admissible);
    CHECK(is_admissible(FieldParams::make(-2), triple).admissible);

    FieldParams f1 = FieldParams::make(-1);
    AdmissibleResult bad = is_admissible(f1, HTuple::from_integers({0, 1}));
    CHECK(!bad.admissible);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->nrm == 2);
    CHECK(f1.equal_up_to_units(bad.witness->gen, {1, 1}));
}

TEST_CASE("admissibility agrees with the residue-enumeration oracle") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<i64> coord(-6, 6);
    std::uniform_int_distribution<int> ksz(1, 4);
    for (const FieldParams& f : FieldParams::all()) {
        int done = 0;
        while (done < 150) {
            int k = ksz(rng);
            std::vector<QuadInt> shifts;
            std::set<std::pair<i64, i64>> used;
            while (static_cast<int>(shifts.size()) < k) {
                QuadInt h{coord(rng), coord(rng)};
                if (used.insert({h.a, h.b}).second) shifts.push_back(h);
            }
            HTuple t(shifts);
            bool lib = is_admissible(f, t).admissible;
            // paranoid oracle bound 2k
            bool oracle = oracles::admissible_oracle(f, shifts, 2 * k);
            CHECK(lib == oracle);
            ++done;
        }
    }
}

TEST_CASE("admissibility is invariant under translation and unit multiplication") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<i64> coord(-5, 5);
    for (const FieldParams& f : FieldParams::all()) {
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<QuadInt> shifts;
            std::set<std::pair<i64, i64>> used;
            while (shifts.size() < 3) {
                QuadInt h{coord(rng), coord(rng)};
                if (used.insert({h.a, h.b}).second) shifts.push_back(h);
            }
            HTuple t(shifts);
            bool base = is_admissible(f, t).admissible;

            QuadInt c{coord(rng), coord(rng)};
            std::vector<QuadInt> translated;
            for (const QuadInt& h : shifts) translated.push_back(f.add(h, c));
            CHECK(is_admissible(f, HTuple(translated)).admissible == base);

            for (const QuadInt& u : f.units()) {
                std::vector<QuadInt> scaled;
                for (const QuadInt& h : shifts) scaled.push_back(f.mul(h, u));
                CHECK(is_admissible(f, HTuple(scaled)).admissible == base);
            }
        }
    }
}

TEST_CASE("rational transfer check") {
    HTuple t026 = HTuple::from_integers({0, 2, 6});
    CHECK(is_admissible_in_Z({0, 2, 6}));
    for (const FieldParams& f : FieldParams::all()) {
        TransferCheck tc = rational_transfer_check(f, t026);
        CHECK(tc.admissible_in_Z);
        CHECK(tc.admissible_in_OK);
        CHECK(tc.transfer_holds());
    }
    // {0,1} is inadmissible in Z: the implication is vacuous
    TransferCheck tc01 = rational_transfer_check(FieldParams::make(-1), HTuple::from_integers({0, 1}));
    CHECK(!tc01.admissible_in_Z);
    CHECK(!tc01.admissible_in_OK);
    CHECK(tc01.transfer_holds());

    TransferCheck tc046 = rational_transfer_check(FieldParams::make(-1), HTuple::from_integers({0, 4, 6}));
    CHECK(tc046.admissible_in_Z);
    CHECK(tc046.admissible_in_OK);

    CHECK_THROWS_AS(rational_transfer_check(FieldParams::make(-1), HTuple(std::vector<QuadInt>{{0, 0}, {1, 1}})),
                    ValidationError);
}

TEST_CASE("modulus_m") {
    FieldParams f1 = FieldParams::make(-1);
    CHECK(modulus_m(f1, 5) == QuadInt{1, 1});
    QuadInt m10 = modulus_m(f1, 10);
    CHECK(f1.norm(m10) == 450); // norms 2 * 5 * 5 * 9
    FieldParams f7 = FieldParams::make(-7);
    CHECK(modulus_m(f7, 2) == QuadInt{1, 0}); // empty product
    CHECK_THROWS_AS(modulus_m(f1, 1), ValidationError);
}

TEST_CASE("choose_v0") {
    FieldParams f1 = FieldParams::make(-1);
    V0Result r = choose_v0(f1, HTuple::from_integers({0, 2}), 5);
    REQUIRE(r.ok);
    CHECK(r.v0 == QuadInt{1, 0});

    V0Result bad = choose_v0(f1, HTuple::from_integers({0, 1}), 5);
    CHECK(!bad.ok);
    REQUIRE(bad.obstruction.has_value());
    CHECK(bad.obstruction->nrm == 2);

    // empty modulus: v0 = 0
    for (const FieldParams& f : FieldParams::all()) {
        V0Result e = choose_v0(f, HTuple::from_integers({0, 2, 6}), 2);
        CHECK(e.ok);
        CHECK(e.v0 == QuadInt{0, 0});
    }

    // every returned v0 makes each v0 + h_i coprime to m, verified by
    // factorization
    for (const FieldParams& f : FieldParams::all()) {
        for (int D0 : {3, 5, 8, 11}) {
            HTuple t = HTuple::from_integers({0, 2});
            V0Result v = choose_v0(f, t, D0);
            REQUIRE(v.ok);
            QuadInt m = modulus_m(f, D0);
            if (f.is_unit(m)) continue;
            Factorization fm = factor_element(f, m);
            for (const QuadInt& h : t.shifts) {
                QuadInt s = f.add(v.v0, h);
                for (const auto& [p, e] : fm.factors) CHECK(!f.divides(p, s));
            }
        }
    }
}

TEST_CASE("residue systems") {
    FieldParams f1 = FieldParams::make(-1);
    ResidueSystem rs(f1, {1, 1});
    CHECK(rs.size() == 2);
    auto reps = rs.representatives();
    REQUIRE(reps.size() == 2);
    CHECK(reps[0] == QuadInt{0, 0});
    CHECK(reps[1] == QuadInt{1, 0});
    CHECK(rs.reduce({0, 1}) == QuadInt{1, 0}); // i = 1 mod (1+i)
    CHECK(rs.congruent({3, 2}, {0, 1}));

    // reduction is a homomorphism to the transversal for several moduli
    for (const FieldParams& f : FieldParams::all()) {
        for (QuadInt q : {QuadInt{2, 1}, QuadInt{3, 0}, QuadInt{1, 2}}) {
            if (f.norm(q) <= 1) continue;
            ResidueSystem r(f, q);
            CHECK(r.size() == f.norm(q));
            std::set<std::pair<i64, i64>> classes;
            for (const QuadInt& rep : r.representatives()) {
                CHECK(r.reduce(rep) == rep); // canonical form is stable
                classes.insert({rep.a, rep.b});
            }
            CHECK(static_cast<i64>(classes.size()) == r.size());
            // x - reduce(x) is divisible by q
            std::mt19937_64 rng(31);
            std::uniform_int_distribution<i64> coord(-50, 50);
            for (int i = 0; i < 200; ++i) {
                QuadInt x{coord(rng), coord(rng)};
                QuadInt red = r.reduce(x);
                CHECK(f.divides(q, f.sub(x, red)));
            }
        }
    }
}
