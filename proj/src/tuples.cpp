#include "g2gaps/tuples.hpp"

#include <algorithm>
#include <set>

namespace g2gaps {

using namespace intmath;

HTuple::HTuple(std::vector<QuadInt> s) : shifts(std::move(s)) {
    if (shifts.empty())
        throw ValidationError("tuple needs k >= 1 shifts");
    for (std::size_t i = 0; i < shifts.size(); ++i)
        for (std::size_t j = i + 1; j < shifts.size(); ++j)
            if (shifts[i] == shifts[j])
                throw ValidationError("tuple shifts must be pairwise distinct");
}

HTuple HTuple::from_integers(const std::vector<i64>& hs) {
    std::vector<QuadInt> s;
    s.reserve(hs.size());
    for (i64 h : hs) s.push_back(QuadInt(h, 0));
    return HTuple(std::move(s));
}

bool HTuple::all_rational() const {
    return std::all_of(shifts.begin(), shifts.end(), [](const QuadInt& h) { return h.b == 0; });
}

AdmissibleResult is_admissible(const FieldParams& f, const HTuple& t) {
    const int k = t.k();
    for (const PrimeIdeal& P : prime_ideals_up_to(f, k)) {
        ResidueSystem rs(f, P.gen);
        std::set<std::pair<i64, i64>> classes;
        for (const QuadInt& h : t.shifts) {
            QuadInt r = rs.reduce(h);
            classes.insert({r.a, r.b});
        }
        if (static_cast<i64>(classes.size()) == P.nrm)
            return {false, P};
    }
    return {true, std::nullopt};
}

bool is_admissible_in_Z(const std::vector<i64>& hs) {
    const i64 k = static_cast<i64>(hs.size());
    for (i64 p : primes_up_to(k)) {
        std::set<i64> classes;
        for (i64 h : hs) classes.insert(mod_floor(h, p));
        if (static_cast<i64>(classes.size()) == p) return false;
    }
    return true;
}

TransferCheck rational_transfer_check(const FieldParams& f, const HTuple& t) {
    if (!t.all_rational())
        throw ValidationError("transfer check requires rational integer shifts");
    std::vector<i64> hs;
    for (const QuadInt& h : t.shifts) hs.push_back(h.a);
    TransferCheck out;
    out.admissible_in_Z = is_admissible_in_Z(hs);
    out.admissible_in_OK = is_admissible(f, t).admissible;
    return out;
}

QuadInt modulus_m(const FieldParams& f, int D0) {
    if (D0 < 2)
        throw ValidationError("modulus_m requires D0 >= 2");
    QuadInt m(1, 0);
    for (const PrimeIdeal& P : prime_ideals_up_to(f, D0 - 1))
        m = f.mul(m, P.gen);
    return f.canonical_associate(m);
}

V0Result choose_v0(const FieldParams& f, const HTuple& t, int D0) {
    V0Result out;
    auto primes = prime_ideals_up_to(f, D0 - 1);
    // feasibility per prime ideal: the classes -h_i must not exhaust O_K/p
    for (const PrimeIdeal& P : primes) {
        ResidueSystem rs(f, P.gen);
        std::set<std::pair<i64, i64>> forbidden;
        for (const QuadInt& h : t.shifts) {
            QuadInt r = rs.reduce(f.neg(h));
            forbidden.insert({r.a, r.b});
        }
        if (static_cast<i64>(forbidden.size()) == P.nrm) {
            out.ok = false;
            out.obstruction = P;
            return out;
        }
    }
    QuadInt m = modulus_m(f, D0);
    if (f.is_unit(m)) { // empty modulus: everything is a unit mod (1)
        out.ok = true;
        out.v0 = QuadInt(0, 0);
        return out;
    }
    ResidueSystem rs(f, m);
    for (const QuadInt& v : rs.representatives()) {
        bool good = true;
        for (const QuadInt& h : t.shifts) {
            QuadInt s = f.add(v, h);
            for (const PrimeIdeal& P : primes) {
                if (f.divides(P.gen, s)) { good = false; break; }
            }
            if (!good) break;
        }
        if (good) {
            out.ok = true;
            out.v0 = v;
            return out;
        }
    }
    throw ConsistencyError("choose_v0: CRT guarantees a residue but none was found");
}

} // namespace g2gaps
