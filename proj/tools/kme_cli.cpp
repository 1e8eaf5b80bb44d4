// Command-line front end: reproducible JSON/CSV tables for the root-system,
// Weyl, special-function and series operations, plus the convergence scanner.
//
// Exit codes: 0 success, 2 domain error (machine-readable JSON on stderr),
// 64 malformed flags.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kme/kme.hpp"

using namespace kme;

namespace {

std::string fmt(double v) {
    if (!std::isfinite(v)) return v > 0 ? "\"inf\"" : (v < 0 ? "\"-inf\"" : "\"nan\"");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_csv(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') (out += '\\') += c;
        else if (c == '\n') out += "\\n";
        else out += c;
    }
    return out += '"';
}

std::string jcplx(Complex z) {
    return "{\"re\":" + fmt(z.real()) + ",\"im\":" + fmt(z.imag()) + "}";
}

std::string jbool(bool b) { return b ? "true" : "false"; }

struct Options {
    int m = 3;
    std::string format = "json";
    double rel_tol = 1e-10;
    Precision prec() const {
        Precision p;
        p.rel_tol = rel_tol;
        return p;
    }
};

std::string report_header(const Options& opt, const std::string& command) {
    return "{\"command\":" + jstr(command) + ",\"m\":" + std::to_string(opt.m) +
           ",\"rel_tol\":" + fmt(opt.rel_tol);
}

std::string truncated_sum_json(const TruncatedSum& t) {
    return "{\"value\":" + jcplx(t.value) + ",\"terms_used\":" + std::to_string(t.terms_used) +
           ",\"max_length\":" + std::to_string(t.max_length) +
           ",\"last_term_mag\":" + fmt(t.last_term_mag) +
           ",\"tail_ratio\":" + fmt(t.tail_ratio) + ",\"converged\":" + jbool(t.converged) + "}";
}

std::string truncated_sum_csv(const TruncatedSum& t) {
    std::string out =
        "value_re,value_im,terms_used,max_length,last_term_mag,tail_ratio,converged\n";
    out += fmt_csv(t.value.real()) + "," + fmt_csv(t.value.imag()) + "," +
           std::to_string(t.terms_used) + "," + std::to_string(t.max_length) + "," +
           fmt_csv(t.last_term_mag) + "," + fmt_csv(t.tail_ratio) + "," +
           (t.converged ? "true" : "false") + "\n";
    return out;
}

std::string run_roots(const Options& opt, int box) {
    const auto cd = new_cartan(opt.m);
    std::vector<RootVec> roots;
    for (int c1 = -box; c1 <= box; ++c1)
        for (int c2 = -box; c2 <= box; ++c2) {
            const RootVec a{c1, c2};
            if (!a.is_zero() && is_real_root(cd, a)) roots.push_back(a);
        }
    if (opt.format == "csv") {
        std::string out = "c1,c2,positive\n";
        for (const auto& r : roots)
            out += r.c1.str() + "," + r.c2.str() + "," + (r.is_positive() ? "true" : "false") +
                   "\n";
        return out;
    }
    std::string out = report_header(opt, "roots") + ",\"gamma\":" + fmt(cd.gamma) +
                      ",\"srange_threshold\":" + fmt(srange_threshold(cd)) +
                      ",\"lemma75_D\":" + fmt(lemma75_D(cd)) + ",\"rho\":[" +
                      fmt(rho(cd).s1.real()) + "," + fmt(rho(cd).s2.real()) + "],\"varpi2\":[" +
                      fmt(varpi2(cd).s1.real()) + "," + fmt(varpi2(cd).s2.real()) +
                      "],\"box\":" + std::to_string(box) + ",\"roots\":[";
    for (size_t i = 0; i < roots.size(); ++i) {
        if (i) out += ",";
        out += "{\"c1\":" + roots[i].c1.str() + ",\"c2\":" + roots[i].c2.str() +
               ",\"positive\":" + jbool(roots[i].is_positive()) + "}";
    }
    return out + "]}";
}

std::string run_weyl(const Options& opt, int max_length, bool with_action) {
    const auto cd = new_cartan(opt.m);
    const auto elements = enumerate_W(max_length);

    const auto oracle = [&](const WeylElt& w, int i) {
        RootVec v = alpha(i);
        const auto word = reduced_word(w);
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            v = simple_reflection(cd, *it, v);
        return v;
    };

    std::string out;
    if (opt.format == "csv") {
        out = "name,length,wa1_c1,wa1_c2,wa2_c1,wa2_c2,wrho_c1,wrho_c2,inv_size";
        if (with_action) out += ",oracle1_c1,oracle1_c2,oracle2_c1,oracle2_c2,matches";
        out += "\n";
    } else {
        out = report_header(opt, "weyl") + ",\"max_length\":" + std::to_string(max_length) +
              ",\"action_oracle\":" + jbool(with_action) + ",\"elements\":[";
    }
    bool first = true;
    for (const auto& w : elements) {
        const RootVec w1 = act(cd, w, alpha(1));
        const RootVec w2 = act(cd, w, alpha(2));
        const auto shift = w_rho_shift_coeffs(cd, w);
        const auto inv = inversion_set(cd, w);
        if (opt.format == "csv") {
            out += word_name(w) + "," + std::to_string(length(w)) + "," + w1.c1.str() + "," +
                   w1.c2.str() + "," + w2.c1.str() + "," + w2.c2.str() + "," + shift[0].str() +
                   "," + shift[1].str() + "," + std::to_string(inv.size());
            if (with_action) {
                const RootVec o1 = oracle(w, 1);
                const RootVec o2 = oracle(w, 2);
                out += "," + o1.c1.str() + "," + o1.c2.str() + "," + o2.c1.str() + "," +
                       o2.c2.str() + "," + ((o1 == w1 && o2 == w2) ? "true" : "false");
            }
            out += "\n";
        } else {
            if (!first) out += ",";
            first = false;
            out += "{\"name\":" + jstr(word_name(w)) + ",\"length\":" +
                   std::to_string(length(w)) + ",\"wa1\":[\"" + w1.c1.str() + "\",\"" +
                   w1.c2.str() + "\"],\"wa2\":[\"" + w2.c1.str() + "\",\"" + w2.c2.str() +
                   "\"],\"wrho_minus_rho\":[\"" + shift[0].str() + "\",\"" + shift[1].str() +
                   "\"],\"inv_size\":" + std::to_string(inv.size());
            if (with_action) {
                const RootVec o1 = oracle(w, 1);
                const RootVec o2 = oracle(w, 2);
                out += ",\"oracle1\":[\"" + o1.c1.str() + "\",\"" + o1.c2.str() +
                       "\"],\"oracle2\":[\"" + o2.c1.str() + "\",\"" + o2.c2.str() +
                       "\"],\"matches\":" + jbool(o1 == w1 && o2 == w2);
            }
            out += "}";
        }
    }
    if (opt.format != "csv") out += "]}";
    return out;
}

std::string run_specfun_check(const Options& opt) {
    const Precision prec = opt.prec();
    struct Row {
        std::string name;
        Complex got, want;
    };
    std::vector<Row> rows;

    const std::vector<Complex> grid{0.2, 0.5, 0.8, 2.0, 3.0, 4.0, 5.0, Complex(2.0, 3.0)};
    for (Complex s : grid) {
        char nm[64];
        std::snprintf(nm, sizeof nm, "xi_funceq_s=%g%+gi", s.real(), s.imag());
        rows.push_back({nm, xi(s, prec), xi(1.0 - s, prec)});
    }
    for (double y : {0.5, 1.0, 2.0, 5.0}) {
        char nm[64];
        std::snprintf(nm, sizeof nm, "bessel_k_half_y=%g", y);
        rows.push_back({nm, bessel_k(0.5, y, prec),
                        std::sqrt(detail::kPi / (2.0 * y)) * std::exp(-y)});
    }
    rows.push_back({"bessel_sym_0.7_2", bessel_k(0.7, 2.0, prec), bessel_k(-0.7, 2.0, prec)});
    rows.push_back({"zeta_2", zeta_fn(2.0, prec), detail::kPi * detail::kPi / 6.0});
    rows.push_back({"zeta_-1", zeta_fn(-1.0, prec), -1.0 / 12.0});
    const auto primes = primes_up_to(10000);
    for (long long n : {1, 6, 12})
        for (double s : {2.5, 3.0}) {
            Complex prod = 1.0;
            for (int p : primes) prod *= whittaker_p(p, n, s);
            char nm[64];
            std::snprintf(nm, sizeof nm, "euler_product_n=%lld_s=%g", n, s);
            rows.push_back({nm, prod, divisor_power_sum(1.0 - s, n) / zeta_fn(s, prec)});
        }

    if (opt.format == "csv") {
        std::string out = "check,got_re,got_im,want_re,want_im,abs_err\n";
        for (const auto& r : rows)
            out += r.name + "," + fmt_csv(r.got.real()) + "," + fmt_csv(r.got.imag()) + "," +
                   fmt_csv(r.want.real()) + "," + fmt_csv(r.want.imag()) + "," +
                   fmt_csv(std::abs(r.got - r.want)) + "\n";
        return out;
    }
    std::string out = report_header(opt, "specfun-check") + ",\"checks\":[";
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) out += ",";
        out += "{\"check\":" + jstr(rows[i].name) + ",\"got\":" + jcplx(rows[i].got) +
               ",\"want\":" + jcplx(rows[i].want) +
               ",\"abs_err\":" + fmt(std::abs(rows[i].got - rows[i].want)) + "}";
    }
    return out + "]}";
}

std::string params_json(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out = "{";
    for (size_t i = 0; i < kv.size(); ++i) {
        if (i) out += ",";
        out += jstr(kv[i].first) + ":" + kv[i].second;
    }
    return out + "}";
}

std::string run_constant_term(const Options& opt, const std::pair<double, double>& nu,
                              const std::pair<double, double>& a, int max_length) {
    const auto cd = new_cartan(opt.m);
    const auto t = constant_term(cd, Weight{nu.first, nu.second},
                                 make_torus(a.first, a.second), opt.prec(), max_length);
    if (opt.format == "csv") return truncated_sum_csv(t);
    return report_header(opt, "constant-term") + ",\"params\":" +
           params_json({{"nu", "[" + fmt(nu.first) + "," + fmt(nu.second) + "]"},
                        {"a", "[" + fmt(a.first) + "," + fmt(a.second) + "]"},
                        {"max_length", std::to_string(max_length)}}) +
           ",\"result\":" + truncated_sum_json(t) + "}";
}

std::string run_fourier(const Options& opt, int i, long long n,
                        const std::pair<double, double>& nu, const std::pair<double, double>& a,
                        int max_length) {
    const auto cd = new_cartan(opt.m);
    const auto t = fourier_coeff(cd, i, n, Weight{nu.first, nu.second},
                                 make_torus(a.first, a.second), opt.prec(), max_length);
    if (opt.format == "csv") return truncated_sum_csv(t);
    return report_header(opt, "fourier") + ",\"params\":" +
           params_json({{"i", std::to_string(i)},
                        {"n", std::to_string(n)},
                        {"nu", "[" + fmt(nu.first) + "," + fmt(nu.second) + "]"},
                        {"a", "[" + fmt(a.first) + "," + fmt(a.second) + "]"},
                        {"max_length", std::to_string(max_length)}}) +
           ",\"result\":" + truncated_sum_json(t) + "}";
}

std::string run_cuspidal(const Options& opt, Complex s, const std::pair<double, double>& a,
                         int max_length, bool force) {
    const auto cd = new_cartan(opt.m);
    const auto t = cuspidal_constant_term(cd, s, make_torus(a.first, a.second), opt.prec(),
                                          max_length, force);
    if (opt.format == "csv") return truncated_sum_csv(t);
    return report_header(opt, "cuspidal") + ",\"params\":" +
           params_json({{"s", jcplx(s)},
                        {"a", "[" + fmt(a.first) + "," + fmt(a.second) + "]"},
                        {"max_length", std::to_string(max_length)},
                        {"force", force ? "true" : "false"}}) +
           ",\"srange_threshold\":" + fmt(srange_threshold(cd)) +
           ",\"lemma75_D\":" + fmt(lemma75_D(cd)) + ",\"result\":" + truncated_sum_json(t) + "}";
}

std::string run_scan(const Options& opt, bool cuspidal, double from, double to, double step,
                     const std::pair<double, double>& a, int max_length) {
    const auto cd = new_cartan(opt.m);
    if (!(step > 0.0)) throw DomainError("scan step must be positive");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double v = from + k * step;
        if (v > to + 0.5 * step) break;
        grid.push_back(v);
        if (grid.size() > 100000) throw DomainError("scan grid too large");
    }
    const TorusPoint at = make_torus(a.first, a.second);
    std::vector<ConvergenceReport> reports;
    if (cuspidal) {
        std::vector<Complex> ss(grid.begin(), grid.end());
        reports = scan_convergence_cuspidal(cd, ss, at, opt.prec(), max_length);
    } else {
        std::vector<Weight> nus;
        for (double t : grid) {
            const double sc = t / (2.0 - cd.m);
            nus.push_back(Weight{sc, sc});
        }
        reports = scan_convergence(cd, nus, at, opt.prec(), max_length);
    }
    if (opt.format == "csv") {
        std::string out = "param,verdict,bands,final_re,final_im\n";
        for (const auto& r : reports) {
            const Complex fin =
                r.partial_sums.empty() ? Complex{0.0, 0.0} : r.partial_sums.back().second;
            out += fmt_csv(r.param.real()) + std::string(",") + verdict_name(r.verdict) + "," +
                   std::to_string(r.partial_sums.size()) + "," + fmt_csv(fin.real()) + "," +
                   fmt_csv(fin.imag()) + "\n";
        }
        return out;
    }
    std::string out = report_header(opt, "scan") + ",\"cuspidal\":" + jbool(cuspidal) +
                      ",\"a\":[" + fmt(a.first) + "," + fmt(a.second) +
                      "],\"max_length\":" + std::to_string(max_length) + ",\"points\":[";
    for (size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        if (i) out += ",";
        out += "{\"param\":" + fmt(r.param.real()) + ",\"verdict\":" +
               jstr(verdict_name(r.verdict)) + ",\"partial_sums\":[";
        for (size_t j = 0; j < r.partial_sums.size(); ++j) {
            if (j) out += ",";
            out += "{\"length\":" + std::to_string(r.partial_sums[j].first) +
                   ",\"value\":" + jcplx(r.partial_sums[j].second) + "}";
        }
        out += "]}";
    }
    return out + "]}";
}

std::pair<double, double> parse_pair(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError(flag, "expected two comma-separated reals");
    try {
        size_t used = 0;
        const double x = std::stod(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(text);
        const std::string rest = text.substr(comma + 1);
        const double y = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        return {x, y};
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected two comma-separated reals, got '" + text + "'");
    }
}

Complex parse_scalar(const std::string& text, const std::string& flag) {
    try {
        if (text.find(',') == std::string::npos) {
            size_t used = 0;
            const double x = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {x, 0.0};
        }
        const auto [re, im] = parse_pair(text, flag);
        return {re, im};
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected a real or 're,im' pair, got '" + text + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    if (const char* env = std::getenv("EISEN_REL_TOL")) opt.rel_tol = std::atof(env);

    CLI::App app{"rank-2 hyperbolic Kac-Moody Eisenstein series toolkit"};
    app.require_subcommand(1);
    app.add_option("--m", opt.m, "off-diagonal Cartan entry magnitude (>= 3)");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--rel-tol", opt.rel_tol, "target relative tolerance");

    int box = 10;
    auto* roots = app.add_subcommand("roots", "real roots in a coordinate box");
    roots->add_option("--box", box, "coordinate bound")->check(CLI::Range(1, 500));

    int weyl_len = 6;
    bool with_action = false;
    auto* weyl = app.add_subcommand("weyl", "canonical Weyl elements, actions, inversion sets");
    weyl->add_option("--max-length", weyl_len, "length cutoff")->check(CLI::Range(0, 200));
    weyl->add_flag("--action", with_action, "include the reflection-composition oracle columns");

    auto* spec = app.add_subcommand("specfun-check", "special-function identity table");

    std::string nu_text = "3,3", a_text = "2,2", s_text = "-3";
    int max_length = 20;
    auto* ct = app.add_subcommand("constant-term", "truncated constant term E#_nu(a)");
    ct->add_option("--nu", nu_text, "nu coordinates s1,s2 in the simple-root basis");
    ct->add_option("--a", a_text, "torus point x1,x2");
    ct->add_option("--max-length", max_length, "Weyl-length cutoff")->check(CLI::Range(0, 200));

    int fi = 1;
    long long fn = 1;
    auto* fc = app.add_subcommand("fourier", "degenerate Fourier coefficient E_{nu,psi_{i,n}}(a)");
    fc->add_option("--i", fi, "simple-root index of the character")->check(CLI::Range(1, 2));
    fc->add_option("--n", fn, "character frequency (nonzero)");
    fc->add_option("--nu", nu_text, "nu coordinates s1,s2");
    fc->add_option("--a", a_text, "torus point x1,x2");
    fc->add_option("--max-length", max_length, "Weyl-length cutoff")->check(CLI::Range(0, 200));

    bool force = false;
    auto* cu = app.add_subcommand("cuspidal", "cuspidal constant term E#_s(a) over W1");
    cu->add_option("--s", s_text, "parameter s (real or 're,im')");
    cu->add_option("--a", a_text, "torus point x1,x2");
    cu->add_option("--max-length", max_length, "Weyl-length cutoff")->check(CLI::Range(0, 200));
    cu->add_flag("--force", force, "evaluate outside Re s < -2");

    bool scan_cuspidal = false;
    double s_from = -3.0, s_to = 0.0, s_step = 0.1;
    int scan_len = 16;
    auto* sc = app.add_subcommand("scan", "convergence-region explorer");
    sc->add_flag("--cuspidal", scan_cuspidal, "scan the cuspidal parameter s instead of nu");
    sc->add_option("--s-from", s_from, "grid start: nu(h_{alpha_i}) (or s with --cuspidal)");
    sc->add_option("--s-to", s_to, "grid end");
    sc->add_option("--step", s_step, "grid step (> 0)");
    sc->add_option("--a", a_text, "torus point x1,x2");
    sc->add_option("--max-length", scan_len, "Weyl-length cutoff")->check(CLI::Range(0, 200));

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return 64;
    }

    try {
        std::string out;
        if (app.got_subcommand(roots)) out = run_roots(opt, box);
        else if (app.got_subcommand(weyl)) out = run_weyl(opt, weyl_len, with_action);
        else if (app.got_subcommand(spec)) out = run_specfun_check(opt);
        else if (app.got_subcommand(ct))
            out = run_constant_term(opt, parse_pair(nu_text, "--nu"), parse_pair(a_text, "--a"),
                                    max_length);
        else if (app.got_subcommand(fc))
            out = run_fourier(opt, fi, fn, parse_pair(nu_text, "--nu"), parse_pair(a_text, "--a"),
                              max_length);
        else if (app.got_subcommand(cu))
            out = run_cuspidal(opt, parse_scalar(s_text, "--s"), parse_pair(a_text, "--a"),
                               max_length, force);
        else if (app.got_subcommand(sc))
            out = run_scan(opt, scan_cuspidal, s_from, s_to, s_step, parse_pair(a_text, "--a"),
                           scan_len);
        std::cout << out;
        if (!out.empty() && out.back() != '\n') std::cout << "\n";
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return 64;
    } catch (const Error& e) {
        std::cerr << "{\"code\":" << jstr(e.code()) << ",\"message\":" << jstr(e.what())
                  << ",\"context\":" << jstr(app.get_subcommands().empty()
                                                 ? std::string("kme")
                                                 : app.get_subcommands()[0]->get_name())
                  << "}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"code\":\"Internal\",\"message\":" << jstr(e.what())
                  << ",\"context\":\"kme\"}\n";
        return 1;
    }
}
