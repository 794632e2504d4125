#include "g2gaps/residues.hpp"

namespace g2gaps {

using namespace intmath;

ResidueSystem::ResidueSystem(const FieldParams& f, const QuadInt& q) : f_(f), q_(q) {
    if (q.is_zero())
        throw ValidationError("residue system requires a nonzero modulus");
    // Lattice generators: q*1 and q*omega.
    QuadInt r1 = q;
    QuadInt r2 = f.mul(q, QuadInt(0, 1));
    i64 nq = f.norm(q);
    if (r1.b == 0 && r2.b == 0)
        throw ConsistencyError("degenerate modulus lattice");
    // fb = gcd of the b-coordinates; (g, fb) realized by a Bezout combination.
    i64 u, v;
    fb_ = ext_gcd(r1.b, r2.b, u, v);
    if (fb_ < 0) { fb_ = -fb_; u = -u; v = -v; }
    g_ = u * r1.a + v * r2.a;
    // e = index of the b=0 sublattice line: e*fb = norm(q).
    e_ = nq / fb_;
    g_ = mod_floor(g_, e_);
}

QuadInt ResidueSystem::reduce(const QuadInt& z) const {
    i64 k = floor_div(z.b, fb_);
    i64 y = z.b - k * fb_;
    i64 x = mod_floor(z.a - k * g_, e_);
    return {x, y};
}

std::vector<QuadInt> ResidueSystem::representatives() const {
    std::vector<QuadInt> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (i64 x = 0; x < e_; ++x)
        for (i64 y = 0; y < fb_; ++y)
            out.push_back({x, y});
    return out;
}

} // namespace g2gaps
