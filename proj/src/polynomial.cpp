#include "g2gaps/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace g2gaps {

mpq_class simplex_monomial(int k, const std::vector<int>& exps) {
    if (static_cast<int>(exps.size()) != k)
        throw ValidationError("exponent vector length must equal k");
    mpz_class num = 1;
    int total = k;
    for (int a : exps) {
        if (a < 0)
            throw ValidationError("exponents must be nonnegative");
        mpz_class fa;
        mpz_fac_ui(fa.get_mpz_t(), static_cast<unsigned long>(a));
        num *= fa;
        total += a;
    }
    mpz_class den;
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(total));
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

PolyF PolyF::quadratic_cutoff(int k) {
    PolyF p(k);
    p.add_term(std::vector<int>(k, 0), 1);
    for (int i = 0; i < k; ++i) {
        std::vector<int> e(k, 0);
        e[i] = 1;
        p.add_term(e, -1);
        e[i] = 2;
        p.add_term(e, 1);
    }
    return p;
}

PolyF PolyF::constant(int k, const mpq_class& c) {
    PolyF p(k);
    p.add_term(std::vector<int>(k, 0), c);
    return p;
}

PolyF PolyF::monomial(int k, std::vector<int> exps, const mpq_class& c) {
    PolyF p(k);
    p.add_term(std::move(exps), c);
    return p;
}

int PolyF::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void PolyF::add_term(std::vector<int> exps, const mpq_class& c) {
    if (static_cast<int>(exps.size()) != k_)
        throw ValidationError("exponent vector length must equal k");
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(std::move(exps), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

mpq_class PolyF::coeff(const std::vector<int>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

PolyF PolyF::operator+(const PolyF& o) const {
    if (k_ != o.k_) throw ValidationError("mixed arities");
    PolyF r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

PolyF PolyF::operator-(const PolyF& o) const { return *this + o.scaled(-1); }

PolyF PolyF::operator*(const PolyF& o) const {
    if (k_ != o.k_) throw ValidationError("mixed arities");
    PolyF r(k_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e(k_);
            for (int i = 0; i < k_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(std::move(e), c1 * c2);
        }
    }
    return r;
}

PolyF PolyF::scaled(const mpq_class& c) const {
    PolyF r(k_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

long double PolyF::eval_raw(std::span<const long double> x) const {
    if (static_cast<int>(x.size()) != k_)
        throw ValidationError("evaluation point arity mismatch");
    long double s = 0;
    for (const auto& [e, c] : terms_) {
        long double t = static_cast<long double>(mpq_get_d(c.get_mpq_t()));
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < e[i]; ++j) t *= x[i];
        s += t;
    }
    return s;
}

long double PolyF::eval_simplex(std::span<const long double> x) const {
    constexpr long double eps = 1e-12L;
    long double sum = 0;
    for (long double xi : x) {
        if (xi < -eps || xi > 1 + eps) return 0;
        sum += xi;
    }
    if (sum > 1 + eps) return 0;
    return eval_raw(x);
}

mpq_class PolyF::integrate_simplex() const {
    mpq_class s = 0;
    for (const auto& [e, c] : terms_) s += c * simplex_monomial(k_, e);
    return s;
}

PolyF PolyF::antiderivative(int m) const {
    PolyF r(k_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> e2 = e;
        e2[m] += 1;
        r.add_term(std::move(e2), c / mpq_class(e[m] + 1));
    }
    return r;
}

PolyF PolyF::substitute_const(int m, const mpq_class& v) const {
    PolyF r(k_);
    for (const auto& [e, c] : terms_) {
        mpq_class cc = c;
        for (int j = 0; j < e[m]; ++j) cc *= v;
        std::vector<int> e2 = e;
        e2[m] = 0;
        r.add_term(std::move(e2), cc);
    }
    return r;
}

PolyF PolyF::substitute_one_minus_others(int m) const {
    // (1 - sum_{j != m} x_j)^n expanded by repeated multiplication
    PolyF base(k_);
    base.add_term(std::vector<int>(k_, 0), 1);
    for (int j = 0; j < k_; ++j) {
        if (j == m) continue;
        std::vector<int> e(k_, 0);
        e[j] = 1;
        base.add_term(std::move(e), -1);
    }
    PolyF r(k_);
    for (const auto& [e, c] : terms_) {
        PolyF t(k_);
        std::vector<int> e2 = e;
        e2[m] = 0;
        t.add_term(std::move(e2), c);
        for (int j = 0; j < e[m]; ++j) t = t * base;
        r = r + t;
    }
    return r;
}

bool PolyF::is_symmetric() const {
    for (const auto& [e, c] : terms_) {
        std::vector<int> p = e;
        std::sort(p.begin(), p.end());
        do {
            if (coeff(p) != c) return false;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return true;
}

PolyF PolyF::parse(int k, const std::string& s) {
    PolyF p(k);
    std::stringstream ss(s);
    std::string term;
    while (std::getline(ss, term, ';')) {
        if (term.empty()) continue;
        auto colon = term.find(':');
        if (colon == std::string::npos)
            throw ValidationError("polynomial term needs the form coeff:e1,...,ek");
        mpq_class c(term.substr(0, colon));
        c.canonicalize();
        std::vector<int> exps;
        std::stringstream es(term.substr(colon + 1));
        std::string tok;
        while (std::getline(es, tok, ',')) exps.push_back(std::stoi(tok));
        if (static_cast<int>(exps.size()) != k)
            throw ValidationError("polynomial term has wrong arity");
        p.add_term(std::move(exps), c);
    }
    return p;
}

std::string PolyF::to_coeff_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << ";";
        first = false;
        os << c.get_str() << ":";
        for (int i = 0; i < k_; ++i) os << (i ? "," : "") << e[i];
    }
    return os.str();
}

} // namespace g2gaps
