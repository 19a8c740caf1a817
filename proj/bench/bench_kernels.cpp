#include "polyknot/io.hpp"
#include "polyknot/khovanov.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <random>

using namespace polyknot;

namespace {

const Direction kUp = Direction::parse("0,0,1");

// Random closed polygon with exactly k projected crossings along z.
GoodDiagram random_diagram(std::size_t k) {
    std::mt19937_64 rng(k);
    std::uniform_int_distribution<int> xy(-10, 10), z(-4, 4), size(8, 14);
    for (;;) {
        std::vector<Point3> pts;
        for (int s = size(rng); s > 0; --s) pts.push_back({Rational(xy(rng)), Rational(xy(rng)), Rational(z(rng))});
        PolygonalLink link({pts});
        if (!validate_link(link).empty() || !is_regular_direction(link, kUp).regular) continue;
        if (projected_crossings(link, make_chart(kUp)).size() != k) continue;
        return build_good_diagram(refine_to_good(link, kUp), kUp);
    }
}

const GoodDiagram& diagram(std::size_t k) {
    static std::map<std::size_t, GoodDiagram> cache;
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, random_diagram(k)).first;
    return it->second;
}

void BM_BuildCube(benchmark::State& state) {
    const GoodDiagram& d = diagram(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_cube(d));
}

void BM_BuildCubeSerial(benchmark::State& state) {
    const GoodDiagram& d = diagram(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_cube_serial(d));
}

void BM_Homology(benchmark::State& state) {
    KhovanovComplex cx = build_complex(build_cube(diagram(static_cast<std::size_t>(state.range(0)))));
    for (auto _ : state) benchmark::DoNotOptimize(homology(cx));
}

void BM_HomologySerial(benchmark::State& state) {
    KhovanovComplex cx = build_complex(build_cube(diagram(static_cast<std::size_t>(state.range(0)))));
    for (auto _ : state) benchmark::DoNotOptimize(homology_serial(cx));
}

}  // namespace

BENCHMARK(BM_BuildCube)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildCubeSerial)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Homology)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomologySerial)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
