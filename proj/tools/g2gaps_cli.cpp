// g2gaps command-line interface: field constants, norm-box sieving, element
// classification, gap-pair search, admissibility checks, sieve-functional
// evaluation, weight diagnostics and equidistribution reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "g2gaps/box_sieve.hpp"
#include "g2gaps/functional.hpp"
#include "g2gaps/gap_lab.hpp"
#include "g2gaps/residues.hpp"
#include "g2gaps/tuples.hpp"
#include "g2gaps/weights.hpp"

using namespace g2gaps;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum class Format { Text, Json, Csv };

struct GlobalOpts {
    Format format = Format::Text;
    std::string out_path;
    int threads = 0;
};

std::ostream& open_output(const GlobalOpts& g, std::ofstream& file) {
    if (g.out_path.empty()) return std::cout;
    std::string path = g.out_path;
    const char* dir = std::getenv("G2GAPS_OUTDIR");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    file.open(path);
    if (!file)
        throw ValidationError("cannot open output path: " + path);
    return file;
}

json meta(const std::string& command) {
    return json{{"tool", "g2gaps"}, {"version", kVersion}, {"command", command}};
}

void csv_head(std::ostream& os, const std::string& command, const std::string& header) {
    os << "# g2gaps " << kVersion << " " << command << "\n" << header << "\n";
}

mpq_class parse_mpq(const std::string& s) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ValidationError("not a rational number: " + s);
    }
}

QuadInt parse_elem(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ValidationError("element must be given as a,b over the integral basis");
    try {
        return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ValidationError("element must be given as a,b over the integral basis");
    }
}

HTuple parse_tuple(const std::string& ints, const std::string& elems) {
    if (!elems.empty()) {
        std::vector<QuadInt> shifts;
        std::stringstream ss(elems);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw ValidationError("element tuple entries have the form a:b;a:b");
            try {
                shifts.push_back(
                    {std::stoll(tok.substr(0, colon)), std::stoll(tok.substr(colon + 1))});
            } catch (const std::exception&) {
                throw ValidationError("element tuple entries have the form a:b;a:b");
            }
        }
        return HTuple(shifts);
    }
    std::vector<i64> hs;
    std::stringstream ss(ints);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            hs.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw ValidationError("tuple must be a comma list of integers");
        }
    }
    return HTuple::from_integers(hs);
}

std::string qstr(const mpq_class& q) { return q.get_str(); }

std::string elem_str(const QuadInt& x) {
    return std::to_string(x.a) + "," + std::to_string(x.b);
}

json field_json(const FieldParams& f) {
    return json{{"d", f.d()},
                {"disc", f.disc()},
                {"omega", f.omega_kind() == OmegaKind::SqrtD ? "sqrt(d)" : "(1+sqrt(d))/2"},
                {"w_K", f.w_K()},
                {"m_K", f.m_K()},
                {"h_K", f.h_K()},
                {"r1", f.r1()},
                {"r2", f.r2()},
                {"c_K_exact", f.c_K_exact_form()},
                {"c_K", format_real(f.c_K())}};
}

json census_json(const SieveCensus& c) {
    json bands = json::array();
    for (const BandRow& b : c.bands)
        bands.push_back(json{{"log2_lo", b.log2_lo},
                             {"total", b.total},
                             {"primes", b.primes},
                             {"g2", b.g2},
                             {"beta_ones", b.beta_ones}});
    return json{{"total", c.total},
                {"primes", c.primes},
                {"g2", c.g2},
                {"beta_ones", c.beta_ones},
                {"bands", bands}};
}

struct BetaFlags {
    std::string b = "1/2";
    std::string theta = "2/5";
    std::string eta = "1/250";
    double Yprime = 0; // 0: derive from eta as N^eta
};

void add_beta_flags(CLI::App* cmd, BetaFlags& bf) {
    cmd->add_option("--b", bf.b, "small-factor exponent b, rational in (theta/2, 1/2]");
    cmd->add_option("--theta", bf.theta, "level of distribution");
    cmd->add_option("--eta", bf.eta, "Y-window exponent (Y' = N^eta when --Yprime is absent)");
    cmd->add_option("--Yprime", bf.Yprime, "explicit lower embedding bound Y'");
}

BetaParams make_beta(const BetaFlags& bf, double N) {
    BetaParams p;
    p.b = parse_mpq(bf.b);
    p.theta = parse_mpq(bf.theta);
    p.eta = parse_mpq(bf.eta);
    p.Yprime = bf.Yprime > 0 ? bf.Yprime : std::pow(N, mpq_get_d(p.eta.get_mpq_t()));
    p.validate();
    return p;
}

const char* tag_str(int omega) {
    switch (omega) {
        case 0: return "unit";
        case 1: return "prime";
        case 2: return "g2";
        default: return "composite";
    }
}

// ---------------------------------------------------------------- field-info
int run_field_info(const GlobalOpts& g, int d) {
    FieldParams f = FieldParams::make(d);
    std::ofstream file;
    std::ostream& os = open_output(g, file);
    if (g.format == Format::Json) {
        json out{{"meta", meta("field-info")}, {"field", field_json(f)}};
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Csv) {
        csv_head(os, "field-info", "d,disc,omega,w_K,m_K,c_K_exact,c_K");
        os << f.d() << "," << f.disc() << ","
           << (f.omega_kind() == OmegaKind::SqrtD ? "sqrt(d)" : "(1+sqrt(d))/2") << "," << f.w_K()
           << "," << f.m_K() << "," << f.c_K_exact_form() << "," << format_real(f.c_K()) << "\n";
    } else {
        os << "field Q(sqrt(" << f.d() << "))\n"
           << "  disc      = " << f.disc() << "\n"
           << "  omega     = " << (f.omega_kind() == OmegaKind::SqrtD ? "sqrt(d)" : "(1+sqrt(d))/2")
           << "\n"
           << "  w_K = m_K = " << f.w_K() << "\n"
           << "  h_K = 1, r1 = 0, r2 = 1, R_K = 1\n"
           << "  c_K       = " << f.c_K_exact_form() << " = " << format_real(f.c_K()) << "\n"
           << "  units     = ";
        for (const QuadInt& u : f.units()) os << "(" << elem_str(u) << ") ";
        os << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------- sieve
int run_sieve(const GlobalOpts& g, int d, double N, const std::string& shell, bool emit,
              const BetaFlags& bf, i64 segment_size) {
    FieldParams f = FieldParams::make(d);
    BoxSpec box(N, shell == "dyadic" ? Shell::Dyadic : Shell::Full);
    BetaParams bp = make_beta(bf, N);
    SieveOptions opts;
    opts.threads = g.threads;
    opts.beta = &bp;
    if (segment_size > 0) opts.segment_size = segment_size;

    std::ofstream file;
    std::ostream& os = open_output(g, file);

    if (emit) {
        auto [lo, hi] = box.norm_range();
        NormClassifier cls(f, lo, hi);
        if (g.format == Format::Json) {
            json elems = json::array();
            enumerate_box(f, box, [&](const QuadInt& x, i64 n) {
                elems.push_back(json{{"a", x.a}, {"b", x.b}, {"norm", n},
                                     {"class", tag_str(cls.info(n).omega)}});
            });
            json out{{"meta", meta("sieve")},
                     {"census", census_json(census_box(f, box, opts))},
                     {"elements", elems}};
            os << out.dump(2) << "\n";
            return 0;
        }
        if (g.format == Format::Csv) csv_head(os, "sieve", "a,b,norm,class");
        enumerate_box(f, box, [&](const QuadInt& x, i64 n) {
            os << x.a << "," << x.b << "," << n << "," << tag_str(cls.info(n).omega) << "\n";
        });
        if (g.format == Format::Text) {
            SieveCensus c = census_box(f, box, opts);
            os << "total " << c.total << " primes " << c.primes << " g2 " << c.g2 << " beta "
               << c.beta_ones << "\n";
        }
        return 0;
    }

    SieveCensus c = census_box(f, box, opts);
    if (g.format == Format::Json) {
        json out{{"meta", meta("sieve")},
                 {"params",
                  json{{"d", d}, {"N", N}, {"shell", shell}, {"b", qstr(bp.b)},
                       {"theta", qstr(bp.theta)}, {"eta", qstr(bp.eta)}, {"Yprime", bp.Yprime}}},
                 {"census", census_json(c)}};
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Csv) {
        csv_head(os, "sieve", "band_log2,total,primes,g2,beta_ones");
        for (const BandRow& b : c.bands)
            os << b.log2_lo << "," << b.total << "," << b.primes << "," << b.g2 << ","
               << b.beta_ones << "\n";
        os << "all," << c.total << "," << c.primes << "," << c.g2 << "," << c.beta_ones << "\n";
    } else {
        os << "box " << (box.shell == Shell::Full ? "A0(" : "A(") << N << ") over Q(sqrt(" << d
           << "))\n";
        os << "  elements " << c.total << ", primes " << c.primes << ", g2 " << c.g2
           << ", beta=1 " << c.beta_ones << "\n";
        for (const BandRow& b : c.bands)
            os << "  norms [2^" << b.log2_lo << ", 2^" << b.log2_lo + 1 << "): total " << b.total
               << " primes " << b.primes << " g2 " << b.g2 << " beta " << b.beta_ones << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ classify
int run_classify(const GlobalOpts& g, int d, const std::string& elem) {
    FieldParams f = FieldParams::make(d);
    QuadInt x = parse_elem(elem);
    ElementClass c = classify(f, x);
    std::ofstream file;
    std::ostream& os = open_output(g, file);

    bool factorable = !x.is_zero() && !f.is_unit(x);
    Factorization fac;
    if (factorable) fac = factor_element(f, x);

    if (g.format == Format::Json) {
        json out{{"meta", meta("classify")},
                 {"element", elem_str(x)},
                 {"basis", f.omega_kind() == OmegaKind::SqrtD ? "sqrt(d)" : "(1+sqrt(d))/2"},
                 {"norm", f.norm(x)},
                 {"class", to_string(c.tag)},
                 {"big_omega", c.big_omega}};
        if (factorable) {
            json factors = json::array();
            for (const auto& [p, e] : fac.factors)
                factors.push_back(
                    json{{"prime", elem_str(p)}, {"norm", f.norm(p)}, {"exponent", e}});
            out["unit"] = elem_str(fac.unit);
            out["factors"] = factors;
        }
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Csv) {
        csv_head(os, "classify", "a,b,norm,class,big_omega,unit,factors");
        os << x.a << "," << x.b << "," << f.norm(x) << "," << to_string(c.tag) << ","
           << c.big_omega << ",";
        if (factorable) {
            os << elem_str(fac.unit) << ",";
            for (const auto& [p, e] : fac.factors) os << "(" << elem_str(p) << ")^" << e << " ";
        } else {
            os << ",";
        }
        os << "\n";
    } else {
        os << "(" << elem_str(x) << ") norm " << f.norm(x) << ": " << to_string(c.tag);
        if (c.tag != ElementTag::Zero && c.tag != ElementTag::Unit)
            os << " (Omega = " << c.big_omega << ")";
        os << "\n";
        if (factorable) {
            os << "  unit (" << elem_str(fac.unit) << ") *";
            for (const auto& [p, e] : fac.factors)
                os << " (" << elem_str(p) << ")^" << e;
            os << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------------- gaps
int run_gaps(const GlobalOpts& g, int d, const std::string& tuple, const std::string& elems,
             double Nmax, bool decompose, bool density, const BetaFlags& bf, i64 limit) {
    FieldParams f = FieldParams::make(d);
    HTuple t = parse_tuple(tuple, elems);
    std::ofstream file;
    std::ostream& os = open_output(g, file);

    if (density) {
        BetaParams bp = make_beta(bf, Nmax);
        auto bands = density_report(f, t, Nmax, bp);
        if (g.format == Format::Json) {
            json rows = json::array();
            for (const DensityBand& b : bands)
                rows.push_back(json{{"N", b.N}, {"total", b.total}, {"g2", b.g2},
                                    {"beta_ones", b.beta_ones}, {"gap_pairs", b.gap_pairs},
                                    {"cumulative_pairs", b.cumulative_pairs}});
            json out{{"meta", meta("gaps")}, {"density", rows}};
            os << out.dump(2) << "\n";
        } else {
            csv_head(os, "gaps --density", "N,total,g2,beta_ones,gap_pairs,cumulative_pairs");
            for (const DensityBand& b : bands)
                os << b.N << "," << b.total << "," << b.g2 << "," << b.beta_ones << ","
                   << b.gap_pairs << "," << b.cumulative_pairs << "\n";
        }
        return 0;
    }

    json jpairs = json::array();
    i64 count = 0;
    bool csv_started = false;
    find_gap_pairs(f, t, Nmax, [&](const GapPair& p) {
        if (limit > 0 && count >= limit) return;
        ++count;
        if (g.format == Format::Json) {
            json jp{{"alpha1", elem_str(p.alpha1)}, {"alpha2", elem_str(p.alpha2)},
                    {"diff", elem_str(p.diff)},     {"diff_abs", format_real(p.diff_abs)},
                    {"norm1", f.norm(p.alpha1)},    {"norm2", f.norm(p.alpha2)}};
            if (decompose) {
                CorollaryDecomposition c = corollary_decomposition(f, p);
                json sides = json::array();
                for (const auto* side : {&c.first, &c.second}) {
                    json jf = json::array();
                    for (const NormFormFactor& nf : *side)
                        jf.push_back(json{{"p", nf.p}, {"A", nf.A}, {"B", nf.B},
                                          {"inert", nf.inert}});
                    sides.push_back(jf);
                }
                jp["norm_form"] = json{{"scale", c.scale}, {"factors", sides}};
                if (c.rational_shift) {
                    jp["h"] = c.h;
                    jp["norm_identity_ok"] = c.norm_identity_ok;
                }
            }
            jpairs.push_back(jp);
            return;
        }
        if (g.format == Format::Csv) {
            if (!csv_started) {
                csv_head(os, "gaps",
                         "a1,b1,a2,b2,diff_a,diff_b,norm1,norm2,factors1,factors2");
                csv_started = true;
            }
            os << p.alpha1.a << "," << p.alpha1.b << "," << p.alpha2.a << "," << p.alpha2.b << ","
               << p.diff.a << "," << p.diff.b << "," << f.norm(p.alpha1) << ","
               << f.norm(p.alpha2) << ",";
            auto emit_factors = [&](const Factorization& fac) {
                bool first = true;
                for (const auto& [pe, e] : fac.factors) {
                    for (int i = 0; i < e; ++i) {
                        if (!first) os << ";";
                        os << "(" << elem_str(pe) << ")";
                        first = false;
                    }
                }
            };
            emit_factors(p.fac1);
            os << ",";
            emit_factors(p.fac2);
            os << "\n";
            return;
        }
        os << "(" << elem_str(p.alpha1) << ") ~ (" << elem_str(p.alpha2) << ")  diff ("
           << elem_str(p.diff) << ") |diff| = " << format_real(p.diff_abs) << "\n";
        if (decompose) {
            CorollaryDecomposition c = corollary_decomposition(f, p);
            auto show = [&](const char* name, const std::vector<NormFormFactor>& side) {
                os << "  " << name << ": ";
                for (const NormFormFactor& nf : side) {
                    if (nf.inert)
                        os << nf.p << " (inert, square of a rational prime) ";
                    else if (c.scale == 1)
                        os << nf.p << " = " << nf.A << "^2 + " << -f.d() << "*" << nf.B << "^2 ";
                    else
                        os << nf.p << " = (" << nf.A << "^2 + " << -f.d() << "*" << nf.B
                           << "^2)/4 ";
                }
                os << "\n";
            };
            show("alpha1", c.first);
            show("alpha2", c.second);
            if (c.rational_shift)
                os << "  norm identity (h = " << c.h << "): "
                   << (c.norm_identity_ok ? "ok" : "FAILED") << "\n";
        }
    });
    if (g.format == Format::Json) {
        json out{{"meta", meta("gaps")}, {"count", count}, {"pairs", jpairs}};
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Text) {
        os << count << " pairs\n";
    } else if (!csv_started) {
        csv_head(os, "gaps", "a1,b1,a2,b2,diff_a,diff_b,norm1,norm2,factors1,factors2");
    }
    return 0;
}

// ---------------------------------------------------------------- admissible
int run_admissible(const GlobalOpts& g, int d, const std::string& tuple,
                   const std::string& elems) {
    FieldParams f = FieldParams::make(d);
    HTuple t = parse_tuple(tuple, elems);
    AdmissibleResult r = is_admissible(f, t);
    std::ofstream file;
    std::ostream& os = open_output(g, file);

    std::optional<TransferCheck> tc;
    if (t.all_rational()) tc = rational_transfer_check(f, t);

    if (g.format == Format::Json) {
        json out{{"meta", meta("admissible")}, {"d", d}, {"admissible", r.admissible}};
        if (tc) {
            out["admissible_in_Z"] = tc->admissible_in_Z;
            out["transfer_holds"] = tc->transfer_holds();
        }
        if (r.witness)
            out["witness"] = json{{"gen", elem_str(r.witness->gen)}, {"norm", r.witness->nrm}};
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Csv) {
        csv_head(os, "admissible", "d,admissible,witness_gen,witness_norm");
        os << d << "," << (r.admissible ? "true" : "false") << ","
           << (r.witness ? elem_str(r.witness->gen) : "") << ","
           << (r.witness ? std::to_string(r.witness->nrm) : "") << "\n";
    } else {
        os << "tuple is " << (r.admissible ? "admissible" : "NOT admissible") << " over Q(sqrt("
           << d << "))\n";
        if (r.witness)
            os << "  covering prime ideal: (" << elem_str(r.witness->gen) << "), norm "
               << r.witness->nrm << "\n";
        if (tc)
            os << "  admissible in Z: " << (tc->admissible_in_Z ? "yes" : "no")
               << ", transfer holds: " << (tc->transfer_holds() ? "yes" : "no") << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- functional
json i3_json(const I3Result& r) {
    return json{{"rational_part", qstr(r.rational_part)},
                {"log_coeff_lower", qstr(r.c_log_lower)},
                {"log_coeff_upper", qstr(r.c_log_upper)},
                {"lower", qstr(r.lower)},
                {"B", qstr(r.B)},
                {"value", format_real(r.value)},
                {"quadrature", format_real(r.quadrature)}};
}

int run_functional(const GlobalOpts& g, int d, int mK, int k, const std::string& theta,
                   const std::string& eta, const std::string& rho, const std::string& Fspec) {
    PolyF F = Fspec.empty() ? PolyF::quadratic_cutoff(k) : PolyF::parse(k, Fspec);
    mpq_class th = parse_mpq(theta), et = parse_mpq(eta), rh = parse_mpq(rho);
    std::vector<int> mKs;
    if (d != 0) {
        mKs.push_back(FieldParams::make(d).m_K());
    } else if (mK > 0) {
        mKs.push_back(mK);
    } else {
        mKs = {2, 4, 6}; // the three possible Mitsui constants
    }

    std::ofstream file;
    std::ostream& os = open_output(g, file);
    std::vector<FunctionalReport> reps;
    for (int m : mKs) reps.push_back(criterion(F, th, et, rh, m));
    const FunctionalReport& r0 = reps.front();

    if (g.format == Format::Json) {
        json i2s = json::array(), i3s = json::array();
        for (std::size_t m = 0; m < r0.I2_per_m.size(); ++m) {
            i2s.push_back(json{{"q2", qstr(r0.I2_per_m[m].q2)},
                               {"value", format_real(r0.I2_per_m[m].value)}});
            i3s.push_back(i3_json(r0.I3_per_m[m]));
        }
        json crits = json::array();
        for (const FunctionalReport& r : reps)
            crits.push_back(json{{"m_K", r.m_K},
                                 {"Itilde", format_real(r.Itilde)},
                                 {"positive", r.positive}});
        json out{{"meta", meta("functional")},
                 {"params",
                  json{{"k", k}, {"theta", qstr(th)}, {"B", qstr(r0.B)}, {"eta", qstr(et)},
                       {"rho", qstr(rh)}, {"F", F.to_coeff_string()},
                       {"symmetric", r0.symmetric}}},
                 {"I1", json{{"exact", qstr(r0.I1_exact)}, {"value", format_real(r0.I1_value)}}},
                 {"I2_per_m", i2s},
                 {"I3_per_m", i3s},
                 {"criteria", crits}};
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Csv) {
        csv_head(os, "functional", "m_K,I1,I2_m1,I3_m1,Itilde,positive");
        for (const FunctionalReport& r : reps)
            os << r.m_K << "," << format_real(r.I1_value) << ","
               << format_real(r.I2_per_m[0].value) << "," << format_real(r.I3_per_m[0].value)
               << "," << format_real(r.Itilde) << "," << (r.positive ? "true" : "false") << "\n";
    } else {
        os << "k = " << k << ", theta = " << qstr(th) << " (B = " << qstr(r0.B)
           << "), eta = " << qstr(et) << ", rho = " << qstr(rh) << "\n";
        os << "F = " << F.to_coeff_string() << (r0.symmetric ? "  (symmetric)" : "") << "\n";
        os << "I1   = " << qstr(r0.I1_exact) << " = " << format_real(r0.I1_value) << "\n";
        os << "I2 (m=1) = " << qstr(r0.I2_per_m[0].q2) << " * log(" << qstr(r0.B - 1)
           << ") = " << format_real(r0.I2_per_m[0].value) << "\n";
        os << "I3 (m=1) = " << format_real(r0.I3_per_m[0].value)
           << "  (quadrature " << format_real(r0.I3_per_m[0].quadrature) << ")\n";
        for (const FunctionalReport& r : reps)
            os << "Itilde (m_K = " << r.m_K << ") = " << format_real(r.Itilde) << "  "
               << (r.positive ? "POSITIVE" : "not positive") << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------- weights
int run_weights(const GlobalOpts& g, int d, int k, double R, int D0, const std::string& tuple,
                const std::string& Fspec, double N, bool sums, bool table,
                const BetaFlags& bf) {
    WeightConfig cfg;
    cfg.field = FieldParams::make(d);
    cfg.k = k;
    cfg.R = R;
    cfg.D0 = D0;
    cfg.F = Fspec.empty() ? PolyF::quadratic_cutoff(k) : PolyF::parse(k, Fspec);
    cfg.tuple = parse_tuple(tuple, "");
    cfg.beta_params = make_beta(bf, N);
    WeightSystem ws(std::move(cfg));

    if (table) {
        // line-delimited weight-table records for inspection
        std::ofstream tfile;
        std::ostream& tos = open_output(g, tfile);
        if (g.format == Format::Csv)
            csv_head(tos, "weights --table", "generators,norm_product,y,lambda");
        for (const IdealTuple& dt : ws.lambda_support()) {
            i64 pn = 1;
            std::string gens;
            for (std::uint32_t i : dt) {
                const Ideal& I = ws.table()[i];
                pn *= I.nrm;
                if (!gens.empty()) gens += ";";
                gens += "(" + elem_str(I.gen) + ")";
            }
            tos << gens << "," << pn << "," << format_real(ws.y_value(dt)) << ","
                << format_real(ws.lambda_value(dt)) << "\n";
        }
        return 0;
    }

    auto rep = ws.inversion_check();

    double S1 = 0, S2 = 0;
    if (sums) {
        S1 = ws.empirical_S1(N);
        S2 = ws.empirical_S2(N);
    }

    std::ofstream file;
    std::ostream& os = open_output(g, file);
    if (g.format == Format::Json) {
        json out{{"meta", meta("weights")},
                 {"params", json{{"d", d}, {"k", k}, {"R", R}, {"D0", D0}}},
                 {"modulus", elem_str(ws.modulus())},
                 {"v0", elem_str(ws.v0())},
                 {"tuples_checked", rep.tuples_checked},
                 {"max_inversion_discrepancy", format_real(rep.max_abs_discrepancy)},
                 {"lambda_max", format_real(rep.lambda_max)},
                 {"y_max", format_real(rep.y_max)}};
        if (sums) {
            out["N"] = N;
            out["S1"] = format_real(S1);
            out["S2"] = format_real(S2);
        }
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Csv) {
        csv_head(os, "weights",
                 "d,k,R,D0,tuples_checked,max_discrepancy,lambda_max,y_max,S1,S2");
        os << d << "," << k << "," << R << "," << D0 << "," << rep.tuples_checked << ","
           << format_real(rep.max_abs_discrepancy) << "," << format_real(rep.lambda_max) << ","
           << format_real(rep.y_max) << "," << (sums ? format_real(S1) : "") << ","
           << (sums ? format_real(S2) : "") << "\n";
    } else {
        os << "weights over Q(sqrt(" << d << ")), k = " << k << ", R = " << R << ", D0 = " << D0
           << "\n"
           << "  modulus m = (" << elem_str(ws.modulus()) << "), v0 = (" << elem_str(ws.v0())
           << ")\n"
           << "  inversion check over " << rep.tuples_checked
           << " tuples: max discrepancy = " << format_real(rep.max_abs_discrepancy) << "\n"
           << "  lambda_max = " << format_real(rep.lambda_max)
           << ", y_max = " << format_real(rep.y_max) << "\n";
        if (sums)
            os << "  S1(A(" << N << ")) = " << format_real(S1) << ", S2 = " << format_real(S2)
               << "\n";
    }
    if (rep.max_abs_discrepancy > 1e-9)
        throw ConsistencyError("lambda inversion discrepancy above 1e-9");
    return 0;
}

// ------------------------------------------------------------------ equidist
int run_equidist(const GlobalOpts& g, int d, double N, i64 Q, const std::string& which,
                 const BetaFlags& bf) {
    FieldParams f = FieldParams::make(d);
    BetaParams bp = make_beta(bf, N);
    EquidistTarget target = which == "beta" ? EquidistTarget::Beta : EquidistTarget::Primes;
    EquidistReport rep = equidist_report(f, N, Q, target, bp);

    std::ofstream file;
    std::ostream& os = open_output(g, file);
    if (g.format == Format::Json) {
        json rows = json::array();
        for (const EquidistRow& r : rep.rows)
            rows.push_back(json{{"modulus", elem_str(r.modulus_gen)},
                                {"norm", r.modulus_norm},
                                {"phi", r.phi},
                                {"max_abs_eps", format_real(r.max_abs_eps)},
                                {"main_term", format_real(r.main_term)},
                                {"eps_star_sampled", format_real(r.eps_star_sampled)}});
        json out{{"meta", meta("equidist")},
                 {"params", json{{"d", d}, {"N", N}, {"Q", Q}, {"which", which}}},
                 {"total", rep.total},
                 {"rows", rows},
                 {"aggregate_max_eps", format_real(rep.aggregate_max_eps)},
                 {"aggregate_eps_star", format_real(rep.aggregate_eps_star)}};
        os << out.dump(2) << "\n";
    } else if (g.format == Format::Csv) {
        csv_head(os, "equidist",
                 "modulus_a,modulus_b,norm,phi,max_abs_eps,main_term,eps_star_sampled");
        for (const EquidistRow& r : rep.rows)
            os << r.modulus_gen.a << "," << r.modulus_gen.b << "," << r.modulus_norm << ","
               << r.phi << "," << format_real(r.max_abs_eps) << "," << format_real(r.main_term)
               << "," << format_real(r.eps_star_sampled) << "\n";
    } else {
        os << (target == EquidistTarget::Beta ? "beta" : "prime")
           << " equidistribution over A(" << N << "), moduli of norm <= " << Q << "\n"
           << "  total = " << rep.total << "\n";
        for (const EquidistRow& r : rep.rows)
            os << "  q = (" << elem_str(r.modulus_gen) << ") |q| = " << r.modulus_norm
               << " phi = " << r.phi << "  max|eps| = " << format_real(r.max_abs_eps)
               << "  eps* = " << format_real(r.eps_star_sampled) << "\n";
        os << "  aggregate max|eps| = " << format_real(rep.aggregate_max_eps)
           << ", aggregate eps* = " << format_real(rep.aggregate_eps_star) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"g2-number gap laboratory for the nine class-number-one imaginary "
                 "quadratic fields"};
    app.set_config("--config", "", "key-value config file");
    app.set_version_flag("--version", std::string("g2gaps ") + kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    std::string format = "text";
    app.add_option("--format", format, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", g.out_path,
                   "output file (relative paths join G2GAPS_OUTDIR when set)");
    app.add_option("--threads", g.threads, "worker thread cap (0 = hardware)");

    int fi_d = -1;
    CLI::App* fi = app.add_subcommand("field-info", "field constants");
    fi->add_option("--d", fi_d, "field discriminant parameter d")->required();

    int sv_d = -1;
    double sv_N = 100;
    std::string sv_shell = "full";
    bool sv_emit = false;
    i64 sv_seg = 0;
    BetaFlags sv_beta;
    CLI::App* sv = app.add_subcommand("sieve", "census of a norm box");
    sv->add_option("--d", sv_d)->required();
    sv->add_option("--N", sv_N, "box bound")->required();
    sv->add_option("--shell", sv_shell, "full = A0(N), dyadic = A(N)")
        ->check(CLI::IsMember({"full", "dyadic"}));
    sv->add_flag("--emit", sv_emit, "stream a,b,norm,class records");
    sv->add_option("--segment-size", sv_seg, "sieve segment length in norms");
    add_beta_flags(sv, sv_beta);

    int cl_d = -1;
    std::string cl_elem;
    CLI::App* cl = app.add_subcommand("classify", "factor a single element");
    cl->add_option("--d", cl_d)->required();
    cl->add_option("--elem", cl_elem, "element as a,b")->required();

    int gp_d = -1;
    std::string gp_tuple = "0,2";
    std::string gp_elems;
    double gp_Nmax = 100;
    bool gp_dec = false, gp_density = false;
    i64 gp_limit = 0;
    BetaFlags gp_beta;
    CLI::App* gp = app.add_subcommand("gaps", "search G2 pairs within embedding distance 2");
    gp->add_option("--d", gp_d)->required();
    gp->add_option("--tuple", gp_tuple, "shift tuple, comma list of integers");
    gp->add_option("--elems", gp_elems, "shift tuple of elements a:b;a:b");
    gp->add_option("--Nmax", gp_Nmax, "scan A0(Nmax)");
    gp->add_flag("--decompose", gp_dec, "emit the norm-form decompositions");
    gp->add_flag("--density", gp_density, "dyadic band density table instead of pairs");
    gp->add_option("--limit", gp_limit, "emit at most this many pairs");
    add_beta_flags(gp, gp_beta);

    int ad_d = -1;
    std::string ad_tuple = "0,2";
    std::string ad_elems;
    CLI::App* ad = app.add_subcommand("admissible", "tuple admissibility over O_K");
    ad->add_option("--d", ad_d)->required();
    ad->add_option("--tuple", ad_tuple);
    ad->add_option("--elems", ad_elems);

    int fn_d = 0, fn_mK = 0, fn_k = 2;
    std::string fn_theta = "2/5", fn_eta = "1/250", fn_rho = "1", fn_F;
    CLI::App* fn =
        app.add_subcommand("functional", "sieve functionals and the positivity criterion");
    fn->add_option("--d", fn_d, "take m_K from this field");
    fn->add_option("--mK", fn_mK, "Mitsui constant override");
    fn->add_option("--k", fn_k);
    fn->add_option("--theta", fn_theta);
    fn->add_option("--eta", fn_eta);
    fn->add_option("--rho", fn_rho);
    fn->add_option("--F", fn_F, "cutoff polynomial, coeff:e1,..,ek;...");

    int wt_d = -1, wt_k = 2, wt_D0 = 3;
    double wt_R = 30, wt_N = 30;
    std::string wt_tuple = "0,2", wt_F;
    bool wt_sums = false;
    BetaFlags wt_beta;
    CLI::App* wt = app.add_subcommand("weights", "lambda/y tables, inversion check, S1/S2");
    wt->add_option("--d", wt_d)->required();
    wt->add_option("--k", wt_k);
    wt->add_option("--R", wt_R);
    wt->add_option("--D0", wt_D0);
    wt->add_option("--tuple", wt_tuple);
    wt->add_option("--F", wt_F);
    wt->add_option("--N", wt_N, "shell bound for the empirical sums");
    wt->add_flag("--sums", wt_sums, "evaluate S1 and S2 directly");
    bool wt_table = false;
    wt->add_flag("--table", wt_table, "dump the lambda support table as records");
    add_beta_flags(wt, wt_beta);

    int eq_d = -1;
    double eq_N = 100;
    i64 eq_Q = 50;
    std::string eq_which = "primes";
    BetaFlags eq_beta;
    CLI::App* eq = app.add_subcommand("equidist", "residue equidistribution diagnostics");
    eq->add_option("--d", eq_d)->required();
    eq->add_option("--N", eq_N)->required();
    eq->add_option("--Q", eq_Q, "modulus norm bound");
    eq->add_option("--which", eq_which)->check(CLI::IsMember({"primes", "beta"}));
    add_beta_flags(eq, eq_beta);

    try {
        app.parse(argc, argv);
        g.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

        if (*fi) return run_field_info(g, fi_d);
        if (*sv) return run_sieve(g, sv_d, sv_N, sv_shell, sv_emit, sv_beta, sv_seg);
        if (*cl) return run_classify(g, cl_d, cl_elem);
        if (*gp)
            return run_gaps(g, gp_d, gp_tuple, gp_elems, gp_Nmax, gp_dec, gp_density, gp_beta,
                            gp_limit);
        if (*ad) return run_admissible(g, ad_d, ad_tuple, ad_elems);
        if (*fn) return run_functional(g, fn_d, fn_mK, fn_k, fn_theta, fn_eta, fn_rho, fn_F);
        if (*wt)
            return run_weights(g, wt_d, wt_k, wt_R, wt_D0, wt_tuple, wt_F, wt_N, wt_sums,
                               wt_table, wt_beta);
        if (*eq) return run_equidist(g, eq_d, eq_N, eq_Q, eq_which, eq_beta);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
