#include <benchmark/benchmark.h>

#include <string>

#include "platoonsim/bus.hpp"

namespace bus = platoonsim::bus;

namespace {

bus::BusEnvelope control_message(std::size_t payload_bytes) {
  return {bus::Kind::kPub, "veh2", "veh/veh2/ctrl", std::string(payload_bytes, 'x'), 1'234'000'000};
}

void BM_Encode(benchmark::State& state) {
  const auto env = control_message(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bus::encode_frame(env));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Encode)->Arg(64)->Arg(300)->Arg(4096);

void BM_Decode(benchmark::State& state) {
  const auto frame = bus::encode_frame(control_message(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(bus::decode_frame(frame));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decode)->Arg(64)->Arg(300)->Arg(4096);

// Fan-out to N subscribers through the in-process broker.
void BM_BrokerFanOut(benchmark::State& state) {
  bus::Broker broker(128);
  std::size_t delivered = 0;
  for (int i = 0; i < state.range(0); ++i) {
    const auto id = "sub" + std::to_string(i);
    broker.connect(id, [&delivered](const bus::BusEnvelope&) { ++delivered; });
    broker.subscribe(id, "veh/+/ctrl");
  }
  const auto env = control_message(300);
  for (auto _ : state) broker.publish(env);
  benchmark::DoNotOptimize(delivered);
  state.SetItemsProcessed(static_cast<std::int64_t>(delivered));
}
BENCHMARK(BM_BrokerFanOut)->Arg(3)->Arg(32)->Arg(127);

}  // namespace
