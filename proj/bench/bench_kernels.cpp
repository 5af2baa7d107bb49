// Serial reference against OpenMP kernels. The third argument is the thread
// count; 1 runs the serial path.
#include "okb/io.hpp"
#include "okb/minkowski.hpp"
#include "okb/okounkov.hpp"
#include "okb/zariski.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <string>

namespace {

const okb::Instance& load(const std::string& name) {
    static std::map<std::string, okb::Instance> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, okb::load_instance(std::string(OKB_INSTANCE_DIR) + "/" + name + ".json")).first;
    return it->second;
}

const char* const kNames[] = {"bl2p2_flagA", "p1p1p1"};

void chambers(benchmark::State& st) {
    const auto& s = load(kNames[st.range(0)]).surface;
    const int jobs = static_cast<int>(st.range(1));
    for (auto _ : st) {
        auto out = jobs == 1 ? okb::enumerate_chambers(s) : okb::enumerate_chambers_parallel(s, jobs);
        benchmark::DoNotOptimize(out);
    }
}

void polygons(benchmark::State& st) {
    const auto& inst = load(kNames[st.range(0)]);
    const okb::OkounkovEngine engine(inst.surface, inst.flag.curve_class);
    const auto ds = okb::sample_pseudo_effective(inst.surface, 200, 7);
    const int jobs = static_cast<int>(st.range(1));
    for (auto _ : st) {
        auto out = jobs == 1 ? okb::okounkov_polygons_serial(engine, ds) : okb::okounkov_polygons_parallel(engine, ds, jobs);
        benchmark::DoNotOptimize(out);
    }
}

void verify(benchmark::State& st) {
    const auto& inst = load(kNames[st.range(0)]);
    const okb::OkounkovEngine engine(inst.surface, inst.flag.curve_class);
    const auto base = okb::compute_minkowski_base(engine);
    const int jobs = static_cast<int>(st.range(1));
    for (auto _ : st) {
        auto out = jobs == 1 ? okb::verify_minkowski(engine, base, 50, 1)
                             : okb::verify_minkowski_parallel(engine, base, 50, 1, jobs);
        benchmark::DoNotOptimize(out);
    }
}

void args(benchmark::internal::Benchmark* b) {
    for (int inst = 0; inst < 2; ++inst)
        for (int jobs : {1, 2, 4}) b->Args({inst, jobs});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(chambers)->Apply(args);
BENCHMARK(polygons)->Apply(args);
BENCHMARK(verify)->Apply(args);

BENCHMARK_MAIN();
