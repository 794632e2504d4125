#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "g2gaps/polynomial.hpp"

using namespace g2gaps;

TEST_CASE("simplex monomial integrals") {
    CHECK(simplex_monomial(2, {0, 0}) == mpq_class(1, 2));
    CHECK(simplex_monomial(2, {1, 1}) == mpq_class(1, 24));
    CHECK(simplex_monomial(1, {0}) == mpq_class(1));
    for (int n = 0; n <= 6; ++n) {
        // one-dimensional: int_0^1 x^n dx = n!/(1+n)! = 1/(n+1)
        CHECK(simplex_monomial(1, {n}) == mpq_class(1, n + 1));
    }
    CHECK(simplex_monomial(3, {0, 0, 0}) == mpq_class(1, 6));
    CHECK_THROWS_AS(simplex_monomial(2, {1}), ValidationError);
    CHECK_THROWS_AS(simplex_monomial(2, {-1, 0}), ValidationError);
}

TEST_CASE("polynomial arithmetic") {
    PolyF F = PolyF::quadratic_cutoff(2);
    CHECK(F.coeff({0, 0}) == 1);
    CHECK(F.coeff({1, 0}) == -1);
    CHECK(F.coeff({0, 2}) == 1);
    CHECK(F.degree() == 2);

    PolyF G = F * F;
    CHECK(G.degree() == 4);
    CHECK(G.coeff({0, 0}) == 1);
    CHECK(G.coeff({2, 2}) == 2); // x^2 * y^2 from the two square terms
    CHECK(G.coeff({1, 1}) == 2); // (-x)(-y) counted twice

    PolyF zero = F - F;
    CHECK(zero.is_zero());

    std::vector<long double> pt{0.25L, 0.5L};
    long double direct = 1 - 0.75L + 0.0625L + 0.25L;
    CHECK(std::abs(double(F.eval_raw(pt) - direct)) < 1e-18);
}

TEST_CASE("simplex support in evaluation") {
    PolyF F = PolyF::constant(2, 1);
    std::vector<long double> in{0.3L, 0.3L};
    std::vector<long double> out{0.8L, 0.8L};
    std::vector<long double> neg{-0.2L, 0.1L};
    CHECK(F.eval_simplex(in) == 1.0L);
    CHECK(F.eval_simplex(out) == 0.0L);
    CHECK(F.eval_simplex(neg) == 0.0L);
    // boundary included
    std::vector<long double> edge{1.0L, 0.0L};
    CHECK(F.eval_simplex(edge) == 1.0L);
}

TEST_CASE("antiderivative and substitutions") {
    PolyF F = PolyF::quadratic_cutoff(2);
    PolyF G = F.antiderivative(0);
    // d/dx G = F and G(0) = 0: check via evaluation
    std::vector<long double> p1{0.3L, 0.2L};
    std::vector<long double> p0{0.0L, 0.2L};
    CHECK(std::abs(double(G.eval_raw(p0))) == 0.0);

    // substitute the upper limit 1 - x2 into x1
    PolyF V = G.substitute_one_minus_others(0);
    // V(x2) = 5/6 - 2 x2 + 5/2 x2^2 - 4/3 x2^3
    CHECK(V.coeff({0, 0}) == mpq_class(5, 6));
    CHECK(V.coeff({0, 1}) == mpq_class(-2));
    CHECK(V.coeff({0, 2}) == mpq_class(5, 2));
    CHECK(V.coeff({0, 3}) == mpq_class(-4, 3));
    CHECK(V.coeff({1, 0}) == 0); // x1 eliminated

    // constant F: section length 1 - x2
    PolyF one = PolyF::constant(2, 1);
    PolyF Vone = one.antiderivative(0).substitute_one_minus_others(0);
    CHECK(Vone.coeff({0, 0}) == 1);
    CHECK(Vone.coeff({0, 1}) == -1);

    PolyF Gc = G.substitute_const(0, mpq_class(1, 2));
    std::vector<long double> phalf{0.5L, 0.2L};
    CHECK(std::abs(double(Gc.eval_raw(p1) - G.eval_raw(phalf))) < 1e-15);
}

TEST_CASE("exact simplex integration against Monte Carlo") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> unif(0, 1);
    std::uniform_int_distribution<int> cnum(-3, 3);
    for (int k : {2, 3}) {
        for (int trial = 0; trial < 4; ++trial) {
            // random polynomial of degree <= 3
            PolyF F(k);
            std::vector<int> e(static_cast<std::size_t>(k), 0);
            std::function<void(int, int)> gen = [&](int pos, int left) {
                if (pos == k) {
                    F.add_term(e, mpq_class(cnum(rng)));
                    return;
                }
                for (int d = 0; d <= left; ++d) {
                    e[static_cast<std::size_t>(pos)] = d;
                    gen(pos + 1, left - d);
                }
                e[static_cast<std::size_t>(pos)] = 0;
            };
            gen(0, 3);
            mpq_class exact = F.integrate_simplex();

            // Monte Carlo with rejection sampling over the unit box
            const int samples = 300000;
            long double sum = 0, sumsq = 0;
            std::vector<long double> x(static_cast<std::size_t>(k));
            for (int s = 0; s < samples; ++s) {
                long double tot = 0;
                for (auto& xi : x) {
                    xi = unif(rng);
                    tot += xi;
                }
                long double v = tot <= 1 ? F.eval_raw(x) : 0.0L;
                sum += v;
                sumsq += v * v;
            }
            long double mean = sum / samples;
            long double var = sumsq / samples - mean * mean;
            long double se = sqrtl(var / samples);
            long double got = mean; // box volume is 1
            CHECK(std::abs(double(got - mpq_get_d(exact.get_mpq_t()))) < double(3.5 * se + 1e-9));
        }
    }
}

TEST_CASE("symmetry detection") {
    CHECK(PolyF::quadratic_cutoff(2).is_symmetric());
    CHECK(PolyF::quadratic_cutoff(3).is_symmetric());
    PolyF asym(2);
    asym.add_term({1, 0}, 1);
    CHECK(!asym.is_symmetric());
    PolyF sym(2);
    sym.add_term({2, 1}, mpq_class(3, 7));
    sym.add_term({1, 2}, mpq_class(3, 7));
    CHECK(sym.is_symmetric());
}

TEST_CASE("parse and print round trip") {
    PolyF F = PolyF::parse(2, "1:0,0;-1:1,0;-1:0,1;1:2,0;1:0,2");
    CHECK(F == PolyF::quadratic_cutoff(2));
    PolyF half = PolyF::parse(2, "1/2:1,1");
    CHECK(half.coeff({1, 1}) == mpq_class(1, 2));
    CHECK(PolyF::parse(2, F.to_coeff_string()) == F);
    CHECK_THROWS_AS(PolyF::parse(2, "1:0"), ValidationError);
    CHECK_THROWS_AS(PolyF::parse(2, "nonsense"), ValidationError);
}
