#include "hypinv/verify.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hypinv/genfun.hpp"
#include "hypinv/hyperfun.hpp"
#include "hypinv/invpair.hpp"
#include "hypinv/numfield.hpp"
#include "hypinv/powerseries.hpp"
#include "hypinv/queueapp.hpp"

namespace hypinv {

namespace {

// Max that refuses to swallow NaN: a NaN deviation must dominate so the
// downstream tolerance comparison fails instead of silently passing.
double worse(double acc, double dev) {
    if (std::isnan(dev)) return std::numeric_limits<double>::infinity();
    return std::max(acc, dev);
}

Rat rand_rat(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    return Rat(num(gen), den(gen));
}

// A rational draw r with r + j != 0 for every integer 1 <= j <= n_max.
Rat rand_rat_regular(std::mt19937_64& gen, int n_max) {
    for (;;) {
        Rat r = rand_rat(gen);
        bool ok = true;
        for (int j = 1; j <= n_max && ok; ++j)
            if (r + Rat(j) == Rat(0)) ok = false;
        if (ok) return r;
    }
}

std::string params_text(const Params<Rat>& p) {
    std::ostringstream os;
    os << "x=" << p.x.to_text() << " nu=" << p.nu.to_text()
       << " alpha=" << p.alpha.to_text() << " beta=" << p.beta.to_text()
       << " gamma=" << p.gamma.to_text();
    return os.str();
}

}  // namespace

SuiteReport run_suite_pair(std::uint64_t seed, int tuples, int n_max) {
    SuiteReport rep;
    rep.suite = "pair";
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    for (int i = 0; i < tuples; ++i) {
        Params<Rat> p{rand_rat(gen), rand_rat(gen), rand_rat(gen),
                      rand_rat_regular(gen, n_max), rand_rat_regular(gen, n_max)};
        TriMatrix<Rat> A = build_A(p, n_max);
        TriMatrix<Rat> B = build_B(p, n_max);
        bool ab = is_identity(mat_mul(A, B));
        bool ba = is_identity(mat_mul(B, A));
        CheckResult c;
        c.name = "exact product identity both ways, draw " + std::to_string(i);
        c.pass = ab && ba;
        c.detail = params_text(p) + (c.pass ? "" : (std::string(" A*B=Id:") +
                   (ab ? "yes" : "NO") + " B*A=Id:" + (ba ? "yes" : "NO")));
        rep.add(std::move(c));
    }
    return rep;
}

SuiteReport run_suite_criterion(std::uint64_t seed, int n_max,
                                std::optional<std::pair<int, int>> perturb) {
    SuiteReport rep;
    rep.suite = "criterion";
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    Params<Rat> p{rand_rat(gen), rand_rat(gen), rand_rat(gen),
                  rand_rat_regular(gen, n_max), rand_rat_regular(gen, n_max)};
    auto specs = pair_sequences(p);

    {
        CriterionReport cr = criterion_check(specs.first, specs.second, n_max);
        CheckResult c;
        c.name = "coefficient-extraction delta pattern, n_max = " +
                 std::to_string(n_max);
        c.pass = cr.pass;
        c.detail = params_text(p);
        if (!cr.pass) {
            c.detail += " failing cells:";
            for (const auto& f : cr.failures)
                c.detail += " (" + std::to_string(f.n) + "," + std::to_string(f.k) + ")";
        }
        rep.add(std::move(c));
    }

    if (perturb) {
        int m0 = perturb->first, k0 = perturb->second;
        if (m0 < 1 || k0 < 1 || k0 + m0 > n_max)
            throw DomainError("perturbation (m,k) must satisfy m >= 1, k >= 1, m+k <= n_max");
        SequenceSpec<Rat> b2 = specs.second;
        auto orig = specs.second.generator;
        b2.generator = [orig, m0, k0](int m, int n, int k) {
            Rat v = orig(m, n, k);
            if (m == m0 && k == k0) v += Rat(1);
            return v;
        };
        CriterionReport cr = criterion_check(specs.first, b2, n_max);
        // The +1 on b[m0; k0] shifts the degree-(n-k0) coefficient at cell
        // (n, k0) by a(n-k0-m0; n, k0) / ((n-k0-m0)! m0!), so the cell flips
        // exactly when that companion value is nonzero (always at n = k0+m0,
        // where the companion sequence starts at 1).
        bool flips_match = !cr.pass;
        std::size_t expect = 0;
        for (int n = k0 + m0; n <= n_max; ++n) {
            bool predicted = !FieldTraits<Rat>::is_zero(
                specs.first.generator(n - k0 - m0, n, k0));
            bool found = false;
            for (const auto& f : cr.failures)
                if (f.n == n && f.k == k0) found = true;
            if (found != predicted) flips_match = false;
            if (predicted) ++expect;
        }
        if (cr.failures.size() != expect) flips_match = false;

        CheckResult c;
        c.name = "delta pattern with b[" + std::to_string(m0) + "; k=" +
                 std::to_string(k0) + "] perturbed by +1";
        c.pass = cr.pass;  // fails by construction: the suite must go red
        c.detail = "failing cells:";
        for (const auto& f : cr.failures)
            c.detail += " (" + std::to_string(f.n) + "," + std::to_string(f.k) + ")";
        c.detail += flips_match
                        ? " — exactly the predicted cells (n, k0), n >= k0+m0, "
                          "with nonvanishing companion coefficient"
                        : " — DOES NOT match the predicted cell set";
        rep.add(std::move(c));
    }
    return rep;
}

SuiteReport run_suite_lemma1(std::uint64_t seed, int samples) {
    SuiteReport rep;
    rep.suite = "lemma1";
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    std::uniform_int_distribution<int> UN(1, 12);
    std::uniform_real_distribution<double> PH(0.0, 6.283185307179586);
    const double offsets[7] = {0.0, 1e-12, 1e-9, 1e-7, 1e-5, 3e-4, 1e-3};

    double worst = 0.0;
    int worst_i = -1;
    for (int i = 0; i < samples; ++i) {
        int N = UN(gen);
        C53 lam(U(gen), U(gen));
        C53 mu;
        if (i % 4 == 0) {
            double off = offsets[(i / 4) % 7];
            double ph = PH(gen);
            mu = lam + C53(off * std::cos(ph), off * std::sin(ph));
        } else {
            mu = C53(U(gen), U(gen));
        }
        C53 closed = d_closed(N, lam, mu);
        C53 direct = d_sum_direct(N, lam, mu);
        double rel = abs_approx(closed - direct) / std::max(abs_approx(direct), 1e-300);
        if (rel > worst) {
            worst = rel;
            worst_i = i;
        }
    }
    {
        CheckResult c;
        c.name = "closed form vs defining sum, " + std::to_string(samples) +
                 " samples incl. near-coincident";
        c.pass = worst < 1e-10;
        c.detail = "worst relative deviation " + std::to_string(worst) +
                   " at sample " + std::to_string(worst_i);
        rep.add(std::move(c));
    }

    bool zeros_exact = true;
    double unit_worst = 0.0;
    for (int d = 1; d <= 10; ++d) {
        int N = d + 1;
        for (int m = 0; m <= d; ++m)
            for (int mp = 0; mp <= d - m; ++mp) {
                C53 got = d_closed(N, C53(double(m), 0.0), C53(double(d - mp), 0.0));
                if (m + mp < d) {
                    if (abs_approx(got) != 0.0) zeros_exact = false;
                } else {
                    double sgn = (m % 2 == 0) ? 1.0 : -1.0;
                    unit_worst = std::max(unit_worst, abs_approx(got - C53(sgn, 0.0)));
                }
            }
    }
    {
        CheckResult c;
        c.name = "integer-coincidence zero pattern (exact zeros)";
        c.pass = zeros_exact;
        c.detail = zeros_exact ? "all interior integer cases are bit-exact zero"
                               : "nonzero value in the zero pattern";
        rep.add(std::move(c));
    }
    {
        CheckResult c;
        c.name = "integer-coincidence signed units";
        c.pass = unit_worst < 1e-12;
        c.detail = "worst |D - (-1)^m| = " + std::to_string(unit_worst);
        rep.add(std::move(c));
    }
    return rep;
}

SuiteReport run_suite_theta(std::uint64_t seed, int residual_points,
                            int omega_points) {
    SuiteReport rep;
    rep.suite = "theta";
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U01(0.0, 1.0);
    std::uniform_real_distribution<double> PH(0.0, 6.283185307179586);
    const C53 nus[6] = {C53(-2, 0), C53(-0.5, 0), C53(0.3, 0),
                        C53(0.7, 0), C53(1.5, 0),  C53(2, 1)};
    using std::exp;
    using std::log;

    // scalar Newton residuals
    {
        double worst = 0.0;
        for (int i = 0; i < residual_points; ++i) {
            C53 nu = nus[i % 6];
            double R = psi_nu(nu).radius;
            double r = 0.9 * R * U01(gen);
            double ph = PH(gen);
            C53 w(r * std::cos(ph), r * std::sin(ph));
            C53 th = theta_newton(nu, w);
            C53 resid = C53(1, 0) - th + w * exp((C53(1, 0) - nu) * log(th));
            worst = worse(worst, abs_approx(resid));
        }
        CheckResult c;
        c.name = "implicit-equation residual, " + std::to_string(residual_points) +
                 " in-radius points";
        c.pass = worst < 1e-13;
        c.detail = "worst |1 - Theta + w Theta^{1-nu}| = " + std::to_string(worst);
        rep.add(std::move(c));
    }

    // series partial sums vs scalar closed form
    {
        double worst = 0.0;
        const int terms = 220;
        for (const C53& nu : nus) {
            Series<C53> sig = sigma_series(nu, terms);
            double R = psi_nu(nu).radius;
            for (int i = 0; i < 30; ++i) {
                double r = 0.76 * R * U01(gen);
                double ph = PH(gen);
                C53 w(r * std::cos(ph), r * std::sin(ph));
                C53 partial(0, 0), wp(1, 0);
                for (int b = 1; b <= terms; ++b) {
                    wp *= w;
                    partial += sig.coeff(b) * wp;
                }
                C53 closed = sigma_closed(nu, w);
                double dev = abs_approx(partial - closed) /
                             std::max(1.0, abs_approx(closed));
                worst = worse(worst, dev);
            }
        }
        CheckResult c;
        c.name = "coefficient partial sums vs scalar evaluation";
        c.pass = worst < 1e-10;
        c.detail = "worst deviation " + std::to_string(worst) + " over 6 nu x 30 points";
        rep.add(std::move(c));
    }

    // nu = -1 leading coefficients
    {
        Series<Rat> sig = sigma_series(Rat(-1), 4);
        bool ok = sig.coeff(1) == Rat(1) && sig.coeff(2) == Rat(3) &&
                  sig.coeff(3) == Rat(10) && sig.coeff(4) == Rat(35);
        CheckResult c;
        c.name = "nu = -1 leading coefficients 1, 3, 10, 35";
        c.pass = ok;
        c.detail = sig.coeff(1).to_text() + ", " + sig.coeff(2).to_text() + ", " +
                   sig.coeff(3).to_text() + ", " + sig.coeff(4).to_text();
        rep.add(std::move(c));
    }

    // root test vs radius law
    {
        double worst = 0.0;
        std::string detail;
        for (double nu : {-2.0, -1.0, -0.5, 0.3, 0.7, 1.5}) {
            RootTestResult rt = sigma_root_test(nu, 400, 10);
            worst = worse(worst, rt.rel_dev);
            detail += "nu=" + std::to_string(nu) + ": " +
                      std::to_string(100 * rt.rel_dev) + "% ";
        }
        CheckResult c;
        c.name = "coefficient root test vs radius law at b = 400";
        c.pass = worst < 0.02;
        c.detail = detail;
        rep.add(std::move(c));
    }

    // exact reversion identities for the inverse map
    {
        bool all = true;
        std::string detail;
        for (int i = 0; i < 20; ++i) {
            Rat x = rand_rat(gen);
            while (x == Rat(0)) x = rand_rat(gen);
            Rat nu = rand_rat(gen);
            Series<Rat> om = omega_series(x, nu, 20);
            Series<Rat> oc = omega_closed_series(x, nu, 20);
            Series<Rat> xi = xi_series(x, nu, 20);
            bool ok = (om == oc) && (compose(xi, om) == Series<Rat>::variable(20));
            if (!ok) {
                all = false;
                detail += " draw " + std::to_string(i) + " x=" + x.to_text() +
                          " nu=" + nu.to_text();
            }
        }
        CheckResult c;
        c.name = "series reversion matches closed-form inverse, order 20, 20 draws";
        c.pass = all;
        c.detail = all ? "termwise equal; composition is the identity series" : detail;
        rep.add(std::move(c));
    }

    // scalar inverse-map round trips
    {
        double worst = 0.0;
        for (int i = 0; i < omega_points; ++i) {
            C53 nu = nus[i % 6];
            double R = psi_nu(nu).radius;
            double x = 0.1 + 0.8 * U01(gen);
            double r = 0.9 * (R / x) * U01(gen);
            double ph = PH(gen);
            C53 xi(r * std::cos(ph), r * std::sin(ph));
            C53 om = omega_closed(C53(x, 0), nu, xi);
            C53 back = xi_eval(C53(x, 0), nu, om);
            worst = worse(worst, abs_approx(back - xi));
        }
        CheckResult c;
        c.name = "scalar inverse-map round trip, " + std::to_string(omega_points) +
                 " points";
        c.pass = worst < 1e-10;
        c.detail = "worst |Xi(Omega(xi)) - xi| = " + std::to_string(worst);
        rep.add(std::move(c));
    }
    return rep;
}

SuiteReport run_suite_ogf(std::uint64_t seed, int draws, int order) {
    SuiteReport rep;
    rep.suite = "ogf";
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    for (int i = 0; i < draws; ++i) {
        Rat x = rand_rat(gen);
        while (x == Rat(0)) x = rand_rat(gen);
        Rat nu = rand_rat(gen);
        Rat beta = rand_rat_regular(gen, order);
        Rat gamma = rand_rat_regular(gen, order);
        Params<Rat> p{x, nu, gamma, beta, gamma};  // alpha = gamma

        std::vector<Rat> T(10), S(10);
        for (auto& t : T) t = rand_rat(gen);
        for (auto& s : S) s = rand_rat(gen);
        std::vector<Rat> Tpad = T, Spad = S;
        Tpad.resize(order, Rat(0));
        Spad.resize(order, Rat(0));

        Series<Rat> gs = ogf_S_from_T(T, x, nu, beta, gamma, order);
        std::vector<Rat> s_oracle = hypinv::apply(build_B(p, order), Tpad);
        bool ok_s = gs.coeff(0) == Rat(0);
        for (int n = 1; n <= order; ++n)
            if (!(gs.coeff(n) == s_oracle[n - 1])) ok_s = false;

        Series<Rat> gt = ogf_T_from_S(S, x, nu, beta, gamma, order);
        std::vector<Rat> t_oracle = hypinv::apply(build_A(p, order), Spad);
        bool ok_t = gt.coeff(0) == Rat(0);
        for (int n = 1; n <= order; ++n)
            if (!(gt.coeff(n) == t_oracle[n - 1])) ok_t = false;

        CheckResult c;
        c.name = "OGF transforms match matrix action, draw " + std::to_string(i);
        c.pass = ok_s && ok_t;
        c.detail = params_text(p) +
                   (c.pass ? "" : std::string(" forward:") + (ok_s ? "ok" : "MISMATCH") +
                                      " inverse:" + (ok_t ? "ok" : "MISMATCH"));
        rep.add(std::move(c));
    }
    return rep;
}

SuiteReport run_suite_egf(std::uint64_t seed, int draws) {
    SuiteReport rep;
    rep.suite = "egf";
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U01(0.0, 1.0);
    std::uniform_int_distribution<int> UT(-5, 5);
    const int trunc = 40;

    for (int i = 0; i < draws; ++i) {
        double x = 0.05 + 0.9 * U01(gen);
        double nu = -2.0 + 4.0 * U01(gen);
        double beta = -0.95 + 3.0 * U01(gen);
        double gamma = -0.95 + 3.0 * U01(gen);
        std::vector<C53> T(6);
        for (auto& t : T) t = C53(double(UT(gen)), 0.0);

        Params<C53> p{C53(x, 0), C53(nu, 0), C53(0, 0), C53(beta, 0), C53(gamma, 0)};
        TriMatrix<C53> B = build_B(p, trunc);
        std::vector<C53> Tpad = T;
        Tpad.resize(trunc, C53(0, 0));
        std::vector<C53> S = hypinv::apply(B, Tpad);

        double worst = 0.0;
        for (double zv : {0.1, 0.5, 1.0}) {
            C53 z(zv, 0.0);
            C53 egf = egf_S(T, p.x, p.nu, p.beta, p.gamma, z);
            C53 direct(0, 0), zp(1, 0);
            for (int n = 1; n <= trunc; ++n) {
                zp *= z / C53(double(n), 0);
                direct += S[n - 1] * zp;
            }
            double dev = abs_approx(egf - direct) / std::max(1.0, abs_approx(direct));
            worst = worse(worst, dev);
        }
        CheckResult c;
        c.name = "EGF formula vs direct summation, draw " + std::to_string(i);
        c.pass = worst < 1e-9;
        c.detail = "x=" + std::to_string(x) + " nu=" + std::to_string(nu) +
                   " beta=" + std::to_string(beta) + " gamma=" + std::to_string(gamma) +
                   " worst deviation " + std::to_string(worst);
        rep.add(std::move(c));
    }
    return rep;
}

nlohmann::json report_to_json(const SuiteReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return nlohmann::json{{"suite", r.suite},
                          {"seed", r.seed},
                          {"pass", r.pass},
                          {"checks", checks}};
}

}  // namespace hypinv
