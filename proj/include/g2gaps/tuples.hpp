#pragma once

#include <optional>
#include <vector>

#include "g2gaps/arithmetic.hpp"
#include "g2gaps/residues.hpp"

namespace g2gaps {

// A k-tuple of pairwise distinct shifts (h_1, ..., h_k).
struct HTuple {
    std::vector<QuadInt> shifts;

    HTuple() = default;
    explicit HTuple(std::vector<QuadInt> s);
    static HTuple from_integers(const std::vector<i64>& hs);

    int k() const { return static_cast<int>(shifts.size()); }
    bool all_rational() const;
};

struct AdmissibleResult {
    bool admissible = true;
    // the covering prime ideal, when not admissible
    std::optional<PrimeIdeal> witness;
};

// True iff for every prime ideal p with |p| <= k the shifts miss at least one
// residue class mod p (for |p| > k a k-tuple cannot cover all classes).
AdmissibleResult is_admissible(const FieldParams& f, const HTuple& t);

struct TransferCheck {
    bool admissible_in_Z = false;
    bool admissible_in_OK = false;
    // admissible over Z implies admissible over O_K
    bool transfer_holds() const { return !admissible_in_Z || admissible_in_OK; }
};

// Empirical check of the Z -> O_K admissibility transfer for a tuple of
// rational integers.
TransferCheck rational_transfer_check(const FieldParams& f, const HTuple& t);

// Admissibility in Z alone, for rational shifts.
bool is_admissible_in_Z(const std::vector<i64>& hs);

// Generator of m = prod of the prime ideals of norm < D0, canonical form.
// D0 <= 2 gives the empty product 1.
QuadInt modulus_m(const FieldParams& f, int D0);

struct V0Result {
    bool ok = false;
    QuadInt v0{0, 0};
    std::optional<PrimeIdeal> obstruction; // set when no v0 exists
};

// Lexicographically least canonical residue v0 mod m with every v0 + h_i a
// unit mod m.
V0Result choose_v0(const FieldParams& f, const HTuple& t, int D0);

} // namespace g2gaps
