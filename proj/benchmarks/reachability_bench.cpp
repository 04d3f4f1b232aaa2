#include <benchmark/benchmark.h>

#include <cmath>

#include "voxql/slcs/checker.hpp"
#include "voxql/volume/mask.hpp"

namespace {

using namespace voxql;

// Radial intensity with a brighter off-center blob, so thresholds carve out
// nested shells plus a disconnected island.
volume::VoxelVolume synthetic_volume(std::uint32_t n) {
  std::vector<float> data(std::size_t{n} * n * n);
  const double c = (n - 1) / 2.0;
  std::size_t i = 0;
  for (std::uint32_t z = 0; z < n; ++z)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t x = 0; x < n; ++x, ++i) {
        const double r = std::sqrt((x - c) * (x - c) + (y - c) * (y - c) + (z - c) * (z - c)) / n;
        const double bx = x - 0.8 * n, by = y - 0.8 * n, bz = z - 0.8 * n;
        const double blob = std::exp(-(bx * bx + by * by + bz * bz) / (0.002 * n * n));
        data[i] = static_cast<float>(100.0 * (1.0 - r) + 80.0 * blob);
      }
  return volume::VoxelVolume({n, n, n}, {1, 1, 1}, std::move(data));
}

void BM_NestedReach(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto vol = synthetic_volume(n);
  for (auto _ : state) {
    slcs::ClosureModel model(spatial::ClosureSpace(spatial::GridSpec{vol.dims(), vol.spacing()}));
    model.set_atom("core", volume::mask_to_pointset(volume::threshold(vol, volume::Comparison::Greater, 90)));
    model.set_atom("tissue", volume::mask_to_pointset(volume::threshold(vol, volume::Comparison::Greater, 60)));
    model.set_atom("bright", volume::mask_to_pointset(volume::threshold(vol, volume::Comparison::Greater, 75)));
    using slcs::Formula;
    const auto f = Formula::forward_reach(
        Formula::conjunction(Formula::atom("bright"),
                             Formula::backward_reach(Formula::atom("core"), Formula::atom("tissue"))),
        Formula::atom("tissue"));
    benchmark::DoNotOptimize(slcs::check(model, f).count());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t{n} * n * n);
}

BENCHMARK(BM_NestedReach)->Arg(32)->Arg(96)->Arg(208)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
