#include <benchmark/benchmark.h>

#include "tdual/reduction.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/random_data.hpp"

namespace {

using namespace tdual;

constexpr std::uint64_t kSeed = 20070401;

struct Fixture {
    tools::RandomData rd{kSeed};
    BundleChart ch;
    DualityPair d;
    Point p;

    explicit Fixture(std::size_t rank) : ch(make_chart(rank)), d(tools::dual_pair(ch)), p(ch.sample({kSeed, 1, 1e-9}).front()) {}

    BundleChart make_chart(std::size_t rank) {
        std::vector<std::string> fibers;
        for (std::size_t i = 0; i < rank; ++i) fibers.push_back("t" + std::to_string(i + 1));
        BundleChart c = tools::flat_chart("bench", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, fibers);
        for (std::size_t i = 0; i < rank; ++i) c.set_curvature(i, rd.closed_basic_two_form(c));
        return c;
    }
};

void BM_Tau(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    Form rho = f.rd.form(f.ch);
    for (auto _ : state) benchmark::DoNotOptimize(tau(rho, f.d));
}
BENCHMARK(BM_Tau)->Arg(1)->Arg(2);

void BM_TauMatrix(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tau_matrix(f.d, f.p));
}
BENCHMARK(BM_TauMatrix)->Arg(1)->Arg(2);

void BM_Phi(benchmark::State& state) {
    Fixture f(1);
    Section v = f.rd.section(f.ch);
    for (auto _ : state) benchmark::DoNotOptimize(phi(v, f.d));
}
BENCHMARK(BM_Phi);

void BM_CourantBracket(benchmark::State& state) {
    Fixture f(1);
    Section v = f.rd.section(f.ch);
    Section w = f.rd.section(f.ch);
    for (auto _ : state) benchmark::DoNotOptimize(courant_bracket(v, w, f.ch));
}
BENCHMARK(BM_CourantBracket);

void BM_Annihilator(benchmark::State& state) {
    Fixture f(1);
    PureSpinor rho = f.rd.spinor(f.ch, 2);
    for (auto _ : state) benchmark::DoNotOptimize(annihilator(rho.rho, f.p));
}
BENCHMARK(BM_Annihilator);

void BM_DualityViaReduction(benchmark::State& state) {
    Fixture f(1);
    for (auto _ : state) benchmark::DoNotOptimize(duality_via_reduction(f.d, f.p));
}
BENCHMARK(BM_DualityViaReduction);

}  // namespace
BENCHMARK_MAIN();
