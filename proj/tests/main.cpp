#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "bsl/numeric.hpp"

int main(int argc, char** argv) {
  bsl::precision::set_bits(256);
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
