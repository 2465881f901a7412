// bench_main.cpp — google-benchmark entry point

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
