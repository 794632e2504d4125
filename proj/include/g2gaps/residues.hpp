#pragma once

#include <vector>

#include "g2gaps/quadfield.hpp"

namespace g2gaps {

// Complete residue system modulo a nonzero element q: the lattice q*O_K is
// put in row Hermite form {(e, 0), (g, fb)} with e*fb = norm(q), and the
// canonical coset representatives are {(x, y) : 0 <= x < e, 0 <= y < fb},
// enumerated in lexicographic (x, y) order.
class ResidueSystem {
public:
    ResidueSystem(const FieldParams& f, const QuadInt& q);

    const QuadInt& modulus() const { return q_; }
    i64 size() const { return e_ * fb_; }

    // Canonical representative of z mod q.
    QuadInt reduce(const QuadInt& z) const;

    bool congruent(const QuadInt& x, const QuadInt& y) const {
        return reduce(x) == reduce(y);
    }

    // All residues, lexicographic in the canonical coordinates.
    std::vector<QuadInt> representatives() const;

private:
    FieldParams f_;
    QuadInt q_;
    i64 e_ = 1, g_ = 0, fb_ = 1; // lattice rows (e_, 0) and (g_, fb_)
};

} // namespace g2gaps
