// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

// Placeholder; kernel benchmarks land with the solver modules.

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
