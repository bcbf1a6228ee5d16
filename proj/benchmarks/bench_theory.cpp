#include <benchmark/benchmark.h>

#include <random>

#include "sngp/spectral.hpp"
#include "sngp/theory.hpp"

namespace {

Eigen::VectorXd spectrum(int n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(1e-4, 1.0);
    Eigen::VectorXd eta(n);
    for (int i = 0; i < n; ++i) eta(i) = dist(rng);
    std::sort(eta.data(), eta.data() + n, std::greater<double>());
    return eta;
}

void KappaSolve(benchmark::State& state) {
    const auto eta = spectrum(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::solve_kappa(eta, static_cast<int>(eta.size()) / 3, 0.0));
    }
}
BENCHMARK(KappaSolve)->Arg(100)->Arg(1000)->Arg(10000);

void ModalErrors(benchmark::State& state) {
    const auto eta = spectrum(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::modal_errors(eta, static_cast<int>(eta.size()) / 3, 1e-4));
    }
}
BENCHMARK(ModalErrors)->Arg(1000)->Arg(10000);

void GradEg(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto eta = spectrum(n);
    const Eigen::VectorXd vsq = Eigen::VectorXd::Constant(n, 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::grad_eg(eta, vsq, n / 3, 0.0));
    }
}
BENCHMARK(GradEg)->Arg(100)->Arg(1000);

void SpectralDecompose(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(m, m);
    Eigen::MatrixXd k = a * a.transpose() / m;
    Eigen::MatrixXd y = Eigen::MatrixXd::Random(m, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::decompose(k, y));
    }
}
BENCHMARK(SpectralDecompose)->Arg(256)->Arg(512);

}  // namespace
