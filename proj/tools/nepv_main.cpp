// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

// Placeholder entry point; the real command set lands with the io module.

#include <cstdio>

int main() {
  std::puts("nepv: command-line interface not wired up yet");
  return 2;
}
