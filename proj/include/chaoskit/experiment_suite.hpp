#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "chaoskit/block_report.hpp"
#include "chaoskit/chaos_expansion.hpp"
#include "chaoskit/chaos_form.hpp"
#include "chaoskit/chaos_vector.hpp"
#include "chaoskit/covariance_model.hpp"
#include "chaoskit/experiments.hpp"
#include "chaoskit/hermite_sums.hpp"
#include "chaoskit/identities.hpp"
#include "chaoskit/independence.hpp"
#include "chaoskit/limit_experiments.hpp"
#include "chaoskit/rosenblatt.hpp"
#include "chaoskit/sampler.hpp"
#include "chaoskit/stein.hpp"

namespace chaoskit {

namespace suite_detail {

inline SymmetricTensor off_diagonal_family(int n) {
    SymmetricTensor f(2, 2 * n);
    for (int k = 1; k <= n; ++k) f.set({2 * k - 1, 2 * k}, 0.5 / std::sqrt(n));
    return f;
}

inline SymmetricTensor chi2_half_diag() {
    SymmetricTensor f(2, 2);
    f.set({1, 1}, 0.5);
    f.set({2, 2}, 0.5);
    return f;
}

inline std::pair<SymmetricTensor, SymmetricTensor> rm33_pair() {
    SymmetricTensor f1(2, 2), f2(2, 2);
    f1.set({1, 1}, -0.5);
    f1.set({1, 2}, 0.5);
    f1.set({2, 2}, 0.5);
    f2.set({1, 1}, 0.5);
    f2.set({1, 2}, 0.5);
    f2.set({2, 2}, -0.5);
    return {f1, f2};
}

inline ChaosForm uniform_form(int d) {
    ChaosForm a(2, d);
    const double c = 1.0 / std::sqrt(2.0 * d * (d - 1.0));
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) a.set({i, j}, c);
    return a;
}

// --- individual experiments --------------------------------------------------

inline void run_fourth_moment(const ResolvedParams& p, Reporter& rep) {
    const auto ns = p.get_int_list("n");
    const std::size_t samples = static_cast<std::size_t>(p.get_int("samples"));
    for (std::int64_t n : ns) {
        const auto f = off_diagonal_family(static_cast<int>(n));
        const double k4 = fourth_cumulant(2, f);
        rep.add_row(n, 0, "kappa4", k4);
        rep.add_row(n, 0, "kappa4_target", 6.0 / static_cast<double>(n));
        rep.add_check("kappa4_analytic_n" + std::to_string(n), k4,
                      6.0 / static_cast<double>(n), 1e-12);
        if (samples > 0) {
            ChaosVectorSpec v(f.dim());
            v.add(2, f);
            const auto s =
                sample_vector(v, samples, p.seed(), fnv1a64("fourth-moment"), p.workers());
            const double ks = ks_distance(s.columns[0]);
            rep.add_row(n, 0, "ks_normal", ks);
            if (n == 1) {
                Metric m;
                m.name = "ks_far_from_normal_n1";
                m.value = ks;
                m.target = 0.05;
                m.pass = ks > 0.05;
                rep.add_metric(std::move(m));
            } else if (n == ns.back()) {
                Metric m;
                m.name = "ks_close_to_normal_n" + std::to_string(n);
                m.value = ks;
                m.target = 0.02;
                m.pass = ks < 0.02;
                rep.add_metric(std::move(m));
            }
        }
    }
}

inline void run_counterexample_rm33(const ResolvedParams& p, Reporter& rep) {
    (void)p;
    const auto [f1, f2] = rm33_pair();
    const double ip = inner(f1, f2);
    const auto c = contract(f1, f2, 1);
    const double plain_sq = c.norm_sq();
    const double sym_norm = symmetrize(c).norm();
    rep.add_row(0, 0, "inner_f1_f2", ip);
    rep.add_row(0, 0, "contraction_norm_sq", plain_sq);
    rep.add_row(0, 0, "sym_contraction_norm", sym_norm);
    rep.add_check("inner_f1_f2", ip, 0.0, 0.0);
    rep.add_check("sym_contraction_norm", sym_norm, 0.0, 0.0);
    rep.add_check("contraction_norm_sq", plain_sq, 0.5, 0.0);
    rep.add_check("ustunel_zakai_gap", ustunel_zakai_gap(2, f1, 2, f2), 0.5, 1e-15);
}

inline void run_multiplication_formula(const ResolvedParams& p, Reporter& rep) {
    const int pairs = static_cast<int>(p.get_int("pairs"));
    const int draws = static_cast<int>(p.get_int("draws"));
    double worst = 0.0;
    RngStream shapes(p.seed(), "mult-shapes", 0);
    for (int t = 0; t < pairs; ++t) {
        const int d = 2 + static_cast<int>(shapes.next_u64() % 4);
        const int po = 1 + static_cast<int>(shapes.next_u64() % 3);
        const int qo = 1 + static_cast<int>(shapes.next_u64() % 3);
        RngStream tensors(p.seed(), "mult-tensors", t);
        const auto f = random_symmetric_tensor(tensors, po, d, 4);
        const auto g = random_symmetric_tensor(tensors, qo, d, 4);
        const auto expansion = multiply(po, f, qo, g);
        RngStream dr(p.seed(), "mult-draws", t);
        for (int k = 0; k < draws; ++k) {
            IsonormalDraw xi(d);
            for (auto& x : xi) x = dr.normal();
            const double lhs = evaluate_chaos(f, xi) * evaluate_chaos(g, xi);
            const double rhs = evaluate(expansion, xi);
            worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        }
    }
    rep.add_row(pairs, 0, "worst_relative_gap", worst);
    Metric m;
    m.name = "pathwise_product_identity";
    m.value = worst;
    m.target = 0.0;
    m.tol = 1e-8;
    m.pass = worst <= 1e-8;
    rep.add_metric(std::move(m));
}

inline void run_breuer_major(const ResolvedParams& p, Reporter& rep) {
    const double rho = p.get_double("rho");
    const int q = static_cast<int>(p.get_int("q"));
    const auto ns = p.get_int_list("n");
    const int replicates = static_cast<int>(p.get_int("replicates"));
    const std::int64_t n_ratio = p.get_int("n_ratio");
    const auto model = CovarianceModel::geometric(rho);

    const double a_closed = breuer_major_constant(model, q, true);
    const double a_series = breuer_major_constant(model, q, false);
    rep.add_row(0, 0, "a_q_sq_closed", a_closed * a_closed);
    rep.add_row(0, 0, "a_q_sq_series", a_series * a_series);
    rep.add_check("a_q_sq_series_vs_closed", a_series * a_series, a_closed * a_closed,
                  1e-10);

    for (std::int64_t n : ns) {
        const auto samples = sample_partial_sums(model, static_cast<std::size_t>(n), {q},
                                                 replicates, p.seed(), "breuer-major",
                                                 p.workers());
        const auto& col = samples.columns[0];
        for (int r = 0; r < replicates; ++r)
            rep.add_row(n, r, "s_q_normalized", col[r]);
        std::vector<double> sq(col.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = col[i] * col[i];
        const auto ms = mean_se(sq);
        // columns carry the exact finite-n normalization, so the target is 1
        rep.add_se_check("mc_variance_ratio_n" + std::to_string(n), ms.mean, ms.se, 1.0,
                         4.0);
    }

    const double ratio =
        finite_n_variance(model, q, static_cast<std::size_t>(n_ratio)) /
        static_cast<double>(n_ratio);
    rep.add_row(n_ratio, 0, "variance_over_n", ratio);
    Metric m;
    m.name = "variance_ratio_vs_a_q_sq";
    m.value = ratio;
    m.target = a_closed * a_closed;
    m.tol = 0.05 * a_closed * a_closed;
    m.pass = std::abs(ratio - m.target) <= m.tol;
    rep.add_metric(std::move(m));
}

inline void run_taqqu(const ResolvedParams& p, Reporter& rep) {
    const double D = p.get_double("D");
    const std::size_t n = static_cast<std::size_t>(p.get_int("n"));
    const int replicates = static_cast<int>(p.get_int("replicates"));
    const int resolution = static_cast<int>(p.get_int("resolution"));
    const auto model = CovarianceModel::long_range(D);

    const auto tn = taqqu_normalizer(model, n);
    const double ratio = finite_n_variance(model, 2, n) / std::pow(n, 2.0 - 2.0 * D);
    rep.add_row(static_cast<std::int64_t>(n), 0, "variance_ratio", ratio);
    rep.add_row(static_cast<std::int64_t>(n), 0, "variance_ratio_over_paper_bD2",
                ratio / (tn.b_D * tn.b_D));
    // exact integral-comparison limit: 2 b_D^2 (see decisions notes: the
    // half-sized literal value in the criterion drops the q! = 2 factor)
    const double target = 2.0 * tn.b_D * tn.b_D;
    Metric vm;
    vm.name = "variance_ratio_vs_2bD2";
    vm.value = ratio;
    vm.target = target;
    vm.tol = 0.10 * target;
    vm.pass = std::abs(ratio - target) <= vm.tol;
    rep.add_metric(std::move(vm));

    const auto quad = rosenblatt_cumulants(1.0 - D, resolution);
    rep.add_row(static_cast<std::int64_t>(n), 0, "kernel_c_H", quad.c_H);
    rep.add_row(static_cast<std::int64_t>(n), 0, "kernel_kappa3", quad.kappa3);
    rep.add_row(static_cast<std::int64_t>(n), 0, "kernel_kappa4", quad.kappa4);

    const auto samples =
        sample_partial_sums(model, n, {2}, replicates, p.seed(), "taqqu", p.workers());
    const auto& col = samples.columns[0];
    for (int r = 0; r < replicates; ++r)
        rep.add_row(static_cast<std::int64_t>(n), r, "s_2_normalized", col[r]);

    const auto k3 = sample_kappa3(col);
    rep.add_se_check("kappa3_vs_kernel", k3.value, k3.se, quad.kappa3, 4.0,
                     quad.kappa3_grid_tol);
    const auto k4 = sample_kappa4(col);
    Metric m4;
    m4.name = "kappa4_above_zero";
    m4.value = k4.value;
    m4.se = k4.se;
    m4.target = 0.0;
    m4.pass = k4.value > 3.0 * k4.se;
    rep.add_metric(std::move(m4));
}

inline void run_joint_limits(const ResolvedParams& p, Reporter& rep) {
    const double D = p.get_double("D");
    const int q = static_cast<int>(p.get_int("q"));
    const std::size_t n = static_cast<std::size_t>(p.get_int("n"));
    const int replicates = static_cast<int>(p.get_int("replicates"));
    const auto model = CovarianceModel::long_range(D);

    const auto samples = sample_partial_sums(model, n, {q, 2}, replicates, p.seed(),
                                             "joint", p.workers());
    for (int r = 0; r < replicates; ++r) {
        rep.add_row(static_cast<std::int64_t>(n), r, "s_q_normalized",
                    samples.columns[0][r]);
        rep.add_row(static_cast<std::int64_t>(n), r, "s_2_normalized",
                    samples.columns[1][r]);
    }
    const auto report = joint_experiment(model, q, n, replicates, p.seed(), p.workers());

    Metric ks1;
    ks1.name = "ks_first_coordinate";
    ks1.value = report.ks_first;
    ks1.target = 0.05;
    ks1.pass = report.ks_first < 0.05;
    rep.add_metric(std::move(ks1));

    if (report.case_id == 1) {
        Metric ks2;
        ks2.name = "ks_second_coordinate";
        ks2.value = report.ks_second;
        ks2.target = 0.05;
        ks2.pass = report.ks_second < 0.05;
        rep.add_metric(std::move(ks2));
    } else {
        Metric k4;
        k4.name = "kappa4_second_above_zero";
        k4.value = report.kappa4_second.value;
        k4.se = report.kappa4_second.se;
        k4.target = 0.0;
        k4.pass = report.kappa4_second.value > 3.0 * report.kappa4_second.se;
        rep.add_metric(std::move(k4));
        rep.add_row(static_cast<std::int64_t>(n), 0, "kappa3_second",
                    report.kappa3_second.value);
        rep.add_row(static_cast<std::int64_t>(n), 0, "kappa4_second",
                    report.kappa4_second.value);
    }

    rep.add_se_check("cross_covariance", report.cross_cov.mean, report.cross_cov.se, 0.0,
                     4.0);
    rep.add_se_check("cov_squares", report.cov_squares, report.cov_squares_se, 0.0, 4.0);
}

inline void run_chi_squared(const ResolvedParams& p, Reporter& rep) {
    const auto nus = p.get_int_list("nu");
    const std::size_t samples = static_cast<std::size_t>(p.get_int("samples"));
    rep.add_check("c_2", chi2_cq(2), 1.0, 0.0);
    for (std::int64_t nu : nus) {
        SymmetricTensor f(2, static_cast<int>(nu));
        for (int i = 1; i <= nu; ++i) f.set({i, i}, 1.0);
        const auto crit = chi2_criteria(2, f, static_cast<double>(nu));
        rep.add_row(nu, 0, "mid_gap", crit.mid_gap);
        rep.add_check("mid_gap_nu" + std::to_string(nu), crit.mid_gap, 0.0, 0.0);

        const auto targets = chi2_target_moments(static_cast<double>(nu));
        std::vector<double> m2(samples), m43(samples);
        parallel_for(samples, p.workers(), [&](std::size_t t) {
            RngStream rng(p.seed(), fnv1a64("chi2") + static_cast<std::uint64_t>(nu), t);
            const double g = rng.centered_chi_square(static_cast<double>(nu));
            m2[t] = g * g;
            m43[t] = g * g * g * g - 12.0 * g * g * g;
        });
        const auto e2 = mean_se(m2);
        rep.add_row(nu, 0, "second_moment", e2.mean);
        rep.add_se_check("second_moment_nu" + std::to_string(nu), e2.mean, e2.se,
                         targets.second_moment, 4.0);
        const auto e43 = mean_se(m43);
        rep.add_row(nu, 0, "fourth_minus_12_third", e43.mean);
        rep.add_se_check("fourth_minus_12_third_nu" + std::to_string(nu), e43.mean,
                         e43.se, targets.fourth_minus_12_third, 4.0);
    }
}

// the five fixed vector specs for the Stein-bound experiment
inline std::vector<std::pair<std::string, ChaosVectorSpec>> stein_specs() {
    std::vector<std::pair<std::string, ChaosVectorSpec>> out;
    {
        ChaosVectorSpec v(2);  // correlated Gaussian pair
        SymmetricTensor e1(1, 2), g(1, 2);
        e1.set({1}, 1.0);
        g.set({1}, 0.6);
        g.set({2}, 0.8);
        v.add(1, e1);
        v.add(1, g);
        out.emplace_back("gaussian_pair", v);
    }
    {
        ChaosVectorSpec v(2);  // single chi-square-type second chaos
        v.add(2, chi2_half_diag());
        out.emplace_back("chi2_single", v);
    }
    {
        ChaosVectorSpec v(8);  // two orthogonal second-chaos components
        v.add(2, off_diagonal_family(2));
        SymmetricTensor g(2, 8);
        g.set({5, 5}, 0.5);
        g.set({6, 6}, 0.5);
        v.add(2, g);
        out.emplace_back("second_chaos_pair", v);
    }
    {
        ChaosVectorSpec v(4);  // mixed orders 1 and 2
        SymmetricTensor e1(1, 4);
        e1.set({1}, 1.0);
        v.add(1, e1);
        SymmetricTensor f(2, 4);
        f.set({2, 3}, 0.5);
        f.set({3, 4}, 0.5);
        v.add(2, f);
        out.emplace_back("mixed_orders", v);
    }
    {
        ChaosVectorSpec v(6);  // three components, nearly Gaussian tail pair
        SymmetricTensor e1(1, 6), e2(1, 6);
        e1.set({1}, 2.0);  // variance 4
        e2.set({2}, 1.0);
        v.add(1, e1);
        v.add(1, e2);
        v.add(2, off_diagonal_family(1));
        out.emplace_back("three_components", v);
    }
    return out;
}

inline void run_stein_bounds(const ResolvedParams& p, Reporter& rep) {
    const std::size_t samples = static_cast<std::size_t>(p.get_int("samples"));
    int spec_id = 0;
    for (const auto& [name, v] : stein_specs()) {
        ++spec_id;
        const auto sigma = covariance_of(v);
        const int d = sigma.size();

        bool pure_gaussian = true;
        for (const auto& [q, f] : v.components) pure_gaussian = pure_gaussian && q == 1;

        // h1 = min(1, |x|) (1-Lipschitz), h2 = sum sin(x_i) (Lipschitz constant
        // sqrt(d), second-derivative sup 1)
        const auto h1 = [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v_ : x) s += v_ * v_;
            return std::min(1.0, std::sqrt(s));
        };
        const auto h2 = [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v_ : x) s += std::sin(v_);
            return s;
        };

        const auto chaos_samples =
            sample_vector(v, samples, p.seed(), fnv1a64("stein-F-" + name), p.workers());

        // Gaussian reference draws through the Cholesky factor of sigma
        const auto chol = cholesky(sigma);
        std::vector<std::vector<double>> normal_cols(
            d, std::vector<double>(samples));
        parallel_for(samples, p.workers(), [&](std::size_t t) {
            RngStream rng(p.seed(), fnv1a64("stein-N-" + name), t);
            std::vector<double> z(d);
            for (auto& x : z) x = rng.normal();
            for (int i = 0; i < d; ++i) {
                double s = 0.0;
                for (int j = 0; j <= i; ++j) s += chol[i][j] * z[j];
                normal_cols[i][t] = s;
            }
        });

        auto empirical_diff = [&](auto&& h) {
            std::vector<double> hf(samples), hn(samples);
            std::vector<double> xf(d), xn(d);
            for (std::size_t t = 0; t < samples; ++t) {
                for (int i = 0; i < d; ++i) {
                    xf[i] = chaos_samples.columns[i][t];
                    xn[i] = normal_cols[i][t];
                }
                hf[t] = h(xf);
                hn[t] = h(xn);
            }
            const auto mf = mean_se(hf);
            const auto mn = mean_se(hn);
            return MeanSe{mf.mean - mn.mean, std::sqrt(mf.se * mf.se + mn.se * mn.se)};
        };

        struct Case {
            const char* label;
            double bound;
            MeanSe diff;
        };
        std::vector<Case> cases;
        cases.push_back({"lip_min", stein_bound_lipschitz(v, sigma, 1.0), empirical_diff(h1)});
        cases.push_back({"lip_sin",
                         stein_bound_lipschitz(v, sigma, std::sqrt(static_cast<double>(d))),
                         empirical_diff(h2)});
        cases.push_back({"c2_sin", stein_bound_c2(v, sigma, 1.0), empirical_diff(h2)});

        for (const auto& c : cases) {
            rep.add_row(spec_id, 0, std::string(c.label) + "_bound", c.bound);
            rep.add_row(spec_id, 0, std::string(c.label) + "_emp_diff", c.diff.mean);
            Metric m;
            m.name = name + "_" + c.label;
            m.value = std::abs(c.diff.mean);
            m.se = c.diff.se;
            m.target = c.bound;
            m.pass = std::abs(c.diff.mean) - 3.0 * c.diff.se <= c.bound;
            rep.add_metric(std::move(m));
        }
        if (pure_gaussian) {
            rep.add_check(name + "_bound_exactly_zero",
                          stein_bound_lipschitz(v, sigma, 1.0), 0.0, 0.0);
        }
    }
}

inline void run_hypercontractivity(const ResolvedParams& p, Reporter& rep) {
    const auto qs = p.get_int_list("q");
    const auto rs = p.get_int_list("r");
    const int tensors = static_cast<int>(p.get_int("tensors"));
    const std::size_t samples = static_cast<std::size_t>(p.get_int("samples"));
    for (std::int64_t q : qs) {
        for (std::int64_t r : rs) {
            double min_slack = std::numeric_limits<double>::infinity();
            for (int t = 0; t < tensors; ++t) {
                RngStream rng(p.seed(), fnv1a64("hc-tensors"),
                              static_cast<std::uint64_t>(q * 1000 + r * 100 + t));
                auto f = random_symmetric_tensor(rng, static_cast<int>(q), 6, 4);
                if (f.nnz() == 0) f.set(MultiIndex(q, 1), 1.0);
                const auto check = hypercontractivity_check(
                    static_cast<int>(q), f, static_cast<int>(r), samples,
                    p.seed() + static_cast<std::uint64_t>(t));
                min_slack = std::min(min_slack,
                                     check.rhs + 3.0 * check.lhs_se - check.lhs);
            }
            rep.add_row(q, r, "min_slack", min_slack);
            Metric m;
            m.name = "q" + std::to_string(q) + "_r" + std::to_string(r);
            m.value = min_slack;
            m.target = 0.0;
            m.pass = min_slack >= 0.0;
            rep.add_metric(std::move(m));
        }
    }
}

inline void run_discrete_counterexample(const ResolvedParams& p, Reporter& rep) {
    (void)p;
    const auto [a1, a2] = counterexample_pair();
    const auto law = InnovationLaw::rademacher();
    const auto gap = moment_gap_enumerate(a1, a2, 2, 2, law);
    rep.add_row(0, 0, "moment_gap_22", gap.gap);
    rep.add_check("moment_gap_22", gap.gap, -0.25, 0.0);
    rep.add_check("mixed_contraction_r1", mixed_contraction_norm(a1, a2, 1), 0.0, 0.0);
    rep.add_check("mixed_contraction_r2", mixed_contraction_norm(a1, a2, 2), 0.0, 0.0);
    rep.add_check("max_influence", std::max(max_influence(a1), max_influence(a2)), 0.125,
                  0.0);
    rep.add_check("variance_q1", a1.variance(), 0.5, 0.0);
}

inline void run_lindeberg(const ResolvedParams& p, Reporter& rep) {
    const int d_small = static_cast<int>(p.get_int("d_small"));
    const int d_large = static_cast<int>(p.get_int("d_large"));
    const std::size_t samples = static_cast<std::size_t>(p.get_int("samples"));
    const auto law = InnovationLaw::rademacher();

    auto run_one = [&](int d) {
        const auto a = uniform_form(d);
        return lindeberg_gap(a, a, 2, 2, law, samples, p.seed(), p.workers());
    };
    const auto g_small = run_one(d_small);
    const auto g_large = run_one(d_large);
    rep.add_row(d_small, 0, "delta", g_small.delta);
    rep.add_row(d_large, 0, "delta", g_large.delta);

    // analytic delta for the uniform family: 4 (8 - 6d) / (d (d-1))
    auto analytic = [](int d) {
        return 4.0 * (8.0 - 6.0 * d) / (static_cast<double>(d) * (d - 1.0));
    };
    rep.add_se_check("delta_d" + std::to_string(d_small), g_small.delta, g_small.se,
                     analytic(d_small), 5.0);
    rep.add_se_check("delta_d" + std::to_string(d_large), g_large.delta, g_large.se,
                     analytic(d_large), 5.0);

    Metric m;
    m.name = "influence_decay_shrinks_delta";
    m.value = std::abs(g_large.delta);
    m.target = std::abs(g_small.delta);
    m.pass = std::abs(g_large.delta) < std::abs(g_small.delta);
    rep.add_metric(std::move(m));
}

inline void run_independence_report(const ResolvedParams& p, Reporter& rep) {
    const std::string preset = p.get_string("preset");
    ChaosVectorSpec v(2);
    bool expect_independent = false;
    if (preset == "rm33") {
        const auto [f1, f2] = rm33_pair();
        v = ChaosVectorSpec(2);
        v.add(2, f1);
        v.add(2, f2);
    } else if (preset == "orthogonal") {
        v = ChaosVectorSpec(4);
        SymmetricTensor f(2, 4), g(2, 4);
        f.set({1, 2}, 1.0);
        g.set({3, 4}, 1.0);
        v.add(2, f);
        v.add(2, g);
        expect_independent = true;
    } else if (preset == "repeated") {
        const auto f = off_diagonal_family(64);
        v = ChaosVectorSpec(128);
        v.add(2, f);
        v.add(2, f);
    } else {
        throw ConfigError("independence-report: unknown preset '" + preset + "'");
    }
    const auto report = block_independence_report(v, {{0}, {1}});
    for (const auto& pr : report.pairs) {
        rep.add_row(pr.i, pr.j, "cov_squares", pr.cov_squares);
        for (std::size_t r = 0; r < pr.contraction_norms.size(); ++r)
            rep.add_row(pr.i, pr.j, "contraction_norm_r" + std::to_string(r + 1),
                        pr.contraction_norms[r]);
    }
    Metric m;
    m.name = "flag_matches_expectation";
    m.value = report.all_independent ? 1.0 : 0.0;
    m.target = expect_independent ? 1.0 : 0.0;
    m.pass = report.all_independent == expect_independent;
    rep.add_metric(std::move(m));
}

inline void run_sample_chaos(const ResolvedParams& p, Reporter& rep) {
    const std::size_t samples = static_cast<std::size_t>(p.get_int("samples"));
    ChaosVectorSpec v(2);
    SymmetricTensor e1(1, 2);
    e1.set({1}, 1.0);
    v.add(1, e1);
    v.add(2, chi2_half_diag());
    const auto s = sample_vector(v, samples, p.seed(), fnv1a64("sample-chaos"), p.workers());
    write_samples_csv(rep.artifact_path(p.get_string("csv_path")), s);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<double> sq(s.rows());
        for (std::size_t t = 0; t < s.rows(); ++t)
            sq[t] = s.columns[i][t] * s.columns[i][t];
        const auto ms = mean_se(sq);
        rep.add_se_check("second_moment_comp" + std::to_string(i + 1), ms.mean, ms.se,
                         second_moment(v.components[i].first, v.components[i].second),
                         4.0);
    }
}

}  // namespace suite_detail

inline const std::map<std::string, Experiment>& experiment_registry() {
    static const std::map<std::string, Experiment> registry = [] {
        std::map<std::string, Experiment> r;
        auto put = [&r](Experiment e) { r[e.name] = std::move(e); };

        put({"fourth-moment",
             "fourth-cumulant decay 6/n of the off-diagonal averaging family, with "
             "KS distance of exact chaos samples to the standard normal",
             {{"n", "comma-separated family sizes", "1,4,16,64"},
              {"samples", "Monte Carlo draws per KS check (0 disables sampling)",
               "100000"}},
             suite_detail::run_fourth_moment});

        put({"counterexample-rm33",
             "orthogonal second-order pair whose symmetrized contraction vanishes "
             "while the contraction itself does not",
             {},
             suite_detail::run_counterexample_rm33});

        put({"multiplication-formula",
             "pathwise identity between products of chaos evaluations and their "
             "product expansion",
             {{"pairs", "number of random tensor pairs", "50"},
              {"draws", "shared Gaussian draws per pair", "100"}},
             suite_detail::run_multiplication_formula});

        put({"breuer-major",
             "normalized partial sums of a Hermite-subordinated geometric-covariance "
             "sequence against the exact finite-n variance and the limit constant",
             {{"rho", "geometric covariance parameter", "0.5"},
              {"q", "Hermite rank", "2"},
              {"n", "comma-separated path lengths for the MC check", "256,4096"},
              {"replicates", "paths per length", "200"},
              {"n_ratio", "length for the deterministic ratio check", "32768"}},
             suite_detail::run_breuer_major});

        put({"taqqu",
             "long-range rank-2 partial sums: variance growth, and empirical third/"
             "fourth cumulants against the kernel quadrature",
             {{"D", "regular-variation exponent in (0, 1/2)", "0.3"},
              {"n", "path length", "16384"},
              {"replicates", "number of paths", "200"},
              {"resolution", "kernel quadrature resolution", "512"}},
             suite_detail::run_taqqu});

        put({"joint-limits",
             "bivariate limits of (S_q, S_2): independent Gaussians for D > 1/2, "
             "Gaussian-plus-Rosenblatt for 1/q < D < 1/2",
             {{"D", "regular-variation exponent", "0.8"},
              {"q", "order of the first coordinate (>= 3)", "3"},
              {"n", "path length", "16384"},
              {"replicates", "number of paths", "1500"}},
             suite_detail::run_joint_limits});

        put({"chi-squared",
             "centered chi-square criteria: canonical zero-gap tensors and target "
             "moments of the centered gamma law",
             {{"nu", "comma-separated degrees of freedom", "1,2,4"},
              {"samples", "gamma draws per nu", "1000000"}},
             suite_detail::run_chi_squared});

        put({"stein-bounds",
             "normal-approximation bounds for five fixed chaos vectors against "
             "empirical expectation gaps",
             {{"samples", "Monte Carlo draws per spec", "100000"}},
             suite_detail::run_stein_bounds});

        put({"hypercontractivity",
             "empirical moment-norm ratios against the (r-1)^{q/2} bound",
             {{"q", "comma-separated chaos orders", "1,2,3"},
              {"r", "comma-separated moment orders", "3,4,6"},
              {"tensors", "random tensors per (q, r)", "10"},
              {"samples", "draws per tensor", "100000"}},
             suite_detail::run_hypercontractivity});

        put({"discrete-counterexample",
             "exact enumeration of the dependent-but-uncorrelated discrete pair: "
             "moment gap -1/4 with vanishing mixed contractions",
             {},
             suite_detail::run_discrete_counterexample});

        put({"lindeberg",
             "innovation-replacement gap of the uniform off-diagonal family at two "
             "sizes, with shared-seed coupling",
             {{"d_small", "small family size", "10"},
              {"d_large", "large family size", "50"},
              {"samples", "Monte Carlo draws per run", "400000"}},
             suite_detail::run_lindeberg});

        put({"independence-report",
             "closed-form pairwise independence diagnostics for a preset chaos "
             "vector (presets: rm33, orthogonal, repeated)",
             {{"preset", "which built-in vector to analyze", "rm33"}},
             suite_detail::run_independence_report});

        put({"sample-chaos",
             "streams exact chaos samples to CSV with a seeds sidecar",
             {{"samples", "number of draws", "1000"},
              {"csv_path", "output path for the sample matrix", "samples.csv"}},
             suite_detail::run_sample_chaos});

        return r;
    }();
    return registry;
}

// --- top-level runner ---------------------------------------------------------

struct RunResult {
    int exit_code;  // 0 pass, 1 metric failure, 2 config error, 3 numerical error
    std::string message;
    std::filesystem::path results_csv;
    std::filesystem::path summary_json;
};

inline std::filesystem::path resolve_out_dir(const ExperimentConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* root = std::getenv("CHAOSKIT_OUTPUT_ROOT"))
        return std::filesystem::path(root) / cfg.experiment;
    return std::filesystem::path("out") / cfg.experiment;
}

inline RunResult run_experiment(const ExperimentConfig& cfg) {
    RunResult res;
    res.exit_code = 0;
    try {
        const auto& registry = experiment_registry();
        auto it = registry.find(cfg.experiment);
        if (it == registry.end())
            throw ConfigError("unknown experiment '" + cfg.experiment + "'");
        if (!cfg.has_seed) throw ConfigError("seed is mandatory");
        if (cfg.workers < 1) throw ConfigError("workers must be >= 1");

        const ResolvedParams params(cfg.params, it->second.params, cfg.seed, cfg.workers);
        const auto out_dir = resolve_out_dir(cfg);
        std::filesystem::create_directories(out_dir);

        Reporter reporter;
        reporter.set_artifact_dir(out_dir);
        it->second.run(params, reporter);

        res.results_csv = out_dir / "results.csv";
        res.summary_json = out_dir / "summary.json";
        reporter.write_csv(res.results_csv);
        std::ofstream js(res.summary_json, std::ios::binary);
        js << reporter.summary_json(cfg.experiment, params).dump(2) << '\n';

        res.exit_code = reporter.all_pass() ? 0 : 1;
        res.message = reporter.all_pass() ? "all metrics passed" : "metric failures";
    } catch (const ConfigError& e) {
        res.exit_code = 2;
        res.message = e.what();
    } catch (const std::exception& e) {
        res.exit_code = 3;
        res.message = e.what();
    }
    return res;
}

// machine-readable listing: one "name<TAB>description" line per experiment
inline std::string list_experiments() {
    std::string out;
    for (const auto& [name, e] : experiment_registry()) {
        out += name;
        out += '\t';
        out += e.description;
        out += '\n';
    }
    return out;
}

// config template that parses back into a valid configuration
inline std::string describe_experiment(const std::string& name) {
    const auto& registry = experiment_registry();
    auto it = registry.find(name);
    if (it == registry.end()) throw ConfigError("unknown experiment '" + name + "'");
    std::string out;
    out += "# " + name + ": " + it->second.description + "\n";
    out += "experiment = " + name + "\n";
    out += "# seed: RNG seed (required)\n";
    out += "seed = 7\n";
    out += "# workers: parallel workers over replicates\n";
    out += "workers = 1\n";
    for (const auto& d : it->second.params) {
        out += "# " + d.key + ": " + d.description + "\n";
        out += d.key + " = " + d.default_value + "\n";
    }
    return out;
}

}  // namespace chaoskit
