#include <Eigen/Eigenvalues>
#include <fstream>
#include <random>

#include "doctest.h"
#include "sngp/gram.hpp"

using namespace sngp;

namespace {
Eigen::MatrixXd random_unit_rows(int rows, int cols, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd x(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) x(i, j) = nd(rng);
        x.row(i).normalize();
    }
    return x;
}
}  // namespace

TEST_CASE("input_gram basics") {
    Eigen::MatrixXd tr(2, 2);
    tr << 1, 0, 0, 1;
    Eigen::MatrixXd te(1, 2);
    te << 1, 0;
    const auto g = input_gram(tr, te);
    CHECK(g.layer == 0);
    CHECK(g.k_train.isApprox(Eigen::MatrixXd::Identity(2, 2)));
    CHECK(g.k_cross(0, 0) == doctest::Approx(g.train_norms_sq(0)));
    CHECK(g.k_cross(0, 1) == doctest::Approx(0.0).scale(1.0));

    // dot-product oracle on random inputs
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd a(5, 3), b(2, 3);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = nd(rng);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = nd(rng);
    const auto g2 = input_gram(a, b);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(g2.k_train(i, j) == doctest::Approx(a.row(i).dot(a.row(j))).epsilon(1e-15));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 5; ++j) CHECK(g2.k_cross(i, j) == doctest::Approx(b.row(i).dot(a.row(j))).epsilon(1e-15));
    CHECK(g2.k_train.diagonal().isApprox(g2.train_norms_sq));

    Eigen::MatrixXd bad(2, 2);
    bad << 1, 0, 0, 0;
    CHECK_THROWS_WITH_AS((void)input_gram(bad, te), doctest::Contains("row 1"), std::domain_error);
}

TEST_CASE("propagate matches scalar cosine_map on unit-norm inputs") {
    const double f = 0.3;
    const auto table = build_lookup(f);
    const double ss = table.sigma();
    const double tau = tau_from_f(f);

    Eigen::MatrixXd tr(2, 2);
    tr << 1, 0, 0, 1;  // orthogonal unit rows
    auto g = input_gram(tr, Eigen::MatrixXd(0, 2));
    g = propagate(g, table, ss);
    CHECK(g.layer == 1);
    CHECK(g.train_norms_sq(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.k_train(0, 1) == doctest::Approx(cosine_map(0.0, tau, ss)).epsilon(1e-7));

    // two propagations = scalar composition
    const auto g2 = propagate(g, table, ss);
    const double expect = cosine_map(cosine_map(0.0, tau, ss), tau, ss);
    CHECK(g2.k_train(0, 1) == doctest::Approx(expect).epsilon(1e-6));

    // rank-1 Gram (all cosines 1) is a fixed point at sigma*
    Eigen::MatrixXd same(3, 2);
    same << 1, 0, 1, 0, 1, 0;
    auto gr = input_gram(same, Eigen::MatrixXd(0, 2));
    const auto gr1 = propagate(gr, table, ss);
    CHECK((gr1.k_train - gr.k_train).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("propagate under non-sigma* scales norms but not cosines") {
    const double f = 0.25;
    const double tau = tau_from_f(f);
    const double ss = sigma_star(tau);
    const auto table = build_lookup(f);
    const double sigma = 0.7 * ss;

    const auto x = random_unit_rows(4, 3, 7);
    auto g0 = input_gram(x, Eigen::MatrixXd(0, 3));
    const auto g1 = propagate(g0, table, sigma);
    const auto g1_star = propagate(g0, table, ss);
    // cosines agree between the two sigma choices
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double c_a = g1.k_train(i, j) /
                               std::sqrt(g1.train_norms_sq(i) * g1.train_norms_sq(j));
            const double c_b = g1_star.k_train(i, j) /
                               std::sqrt(g1_star.train_norms_sq(i) * g1_star.train_norms_sq(j));
            CHECK(c_a == doctest::Approx(c_b).epsilon(1e-12));
        }
    // norms scale by (sigma/sigma*)^2 per layer
    CHECK(g1.train_norms_sq(0) ==
          doctest::Approx(0.49 * g1_star.train_norms_sq(0)).epsilon(1e-12));
}

TEST_CASE("gram_deep depth-1 equals kernel_single entrywise") {
    const auto cfg = KernelConfig::make(0.2, 1, 0.0, 0.05);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd tr(4, 3), te(2, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) tr(i, j) = nd(rng);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) te(i, j) = nd(rng);
    const auto g = gram_deep(tr, te, cfg);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(g.k_train(i, j) ==
                  doctest::Approx(kernel_single(tr.row(i), tr.row(j), cfg)).epsilon(1e-8));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(g.k_cross(i, j) ==
                  doctest::Approx(kernel_single(te.row(i), tr.row(j), cfg)).epsilon(1e-8));
}

TEST_CASE("gram_deep norm preservation and fixed-point convergence at depth 30") {
    const auto cfg = KernelConfig::make(0.1, 30);
    const auto x = random_unit_rows(12, 6, 21);
    const auto g = gram_deep(x, Eigen::MatrixXd(0, 6), cfg);
    CHECK(g.layer == 30);
    for (int i = 0; i < 12; ++i) CHECK(g.train_norms_sq(i) == doctest::Approx(1.0).epsilon(1e-8));

    // scalar fixed point by iterating the exact map to convergence
    const double tau = cfg.tau;
    double c_star = 0.0;
    for (int it = 0; it < 200; ++it) c_star = cosine_map(c_star, tau, cfg.sigma);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            if (i == j) continue;
            const double c = g.k_train(i, j) / std::sqrt(g.train_norms_sq(i) * g.train_norms_sq(j));
            CHECK(c == doctest::Approx(c_star).epsilon(1e-6));
        }
}

TEST_CASE("gram_deep applies the offset once at the end") {
    const auto x = random_unit_rows(3, 4, 2);
    const auto base = gram_deep(x, Eigen::MatrixXd(0, 4), KernelConfig::make(0.3, 2));
    const auto off = gram_deep(x, Eigen::MatrixXd(0, 4), KernelConfig::make(0.3, 2, 0.0, 1.25));
    CHECK((off.k_train - base.k_train).cwiseAbs().maxCoeff() == doctest::Approx(1.25).epsilon(1e-12));
    CHECK((off.k_train - base.k_train).cwiseAbs().minCoeff() == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(off.train_norms_sq(0) == doctest::Approx(base.train_norms_sq(0) + 1.25).epsilon(1e-12));
    CHECK(off.k_train.diagonal().isApprox(off.train_norms_sq));
}

TEST_CASE("deep Gram stays symmetric PSD across layers") {
    const auto x = random_unit_rows(200, 8, 33);
    const auto table = build_lookup(0.2);
    auto g = input_gram(x, Eigen::MatrixXd(0, 8));
    for (int layer = 0; layer < 8; ++layer) {
        g = propagate(g, table, table.sigma());
        const double asym = (g.k_train - g.k_train.transpose()).cwiseAbs().maxCoeff();
        CHECK(asym <= 1e-12 * g.k_train.cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.k_train);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8 * es.eigenvalues().maxCoeff());
        // post-activation representations are non-negatively correlated
        double min_cosine = 1.0;
        for (int i = 0; i < g.k_train.rows(); ++i)
            for (int j = 0; j < g.k_train.cols(); ++j)
                min_cosine = std::min(min_cosine,
                                      g.k_train(i, j) / std::sqrt(g.train_norms_sq(i) *
                                                                  g.train_norms_sq(j)));
        CHECK(min_cosine >= -1e-12);
    }
}

TEST_CASE("norm drift over 50 layers stays within 1e-8 at sigma*") {
    const auto x = random_unit_rows(8, 5, 77);
    const auto table = build_lookup(0.35);
    auto g = input_gram(x, Eigen::MatrixXd(0, 5));
    const Eigen::VectorXd norms0 = g.train_norms_sq;
    for (int layer = 0; layer < 50; ++layer) g = propagate(g, table, table.sigma());
    CHECK((g.train_norms_sq - norms0).cwiseAbs().maxCoeff() <= 1e-8 * norms0.maxCoeff());
}

TEST_CASE("gram csv export writes full precision") {
    Eigen::MatrixXd m(2, 2);
    m << 1.0 / 3.0, 2.0, -0.25, 1e-17;
    const auto path = std::filesystem::temp_directory_path() / "sngp_gram_test.csv";
    write_matrix_csv(m, path);
    std::ifstream in(path);
    std::string l1, l2;
    std::getline(in, l1);
    std::getline(in, l2);
    CHECK(l1 == "0.33333333333333331,2");
    CHECK(l2 == "-0.25,1.0000000000000001e-17");
    std::filesystem::remove(path);
}
