// Runs every acceptance criterion through the C API, one PASS/FAIL line each.
#include <cstdio>
#include <cstdlib>

#include "wwv/wwv.h"

namespace {

void print(const wwv_criterion* c, void*) {
  std::printf("%s criterion %2d (%s) [%.1fs]: %s\n", c->pass ? "PASS" : "FAIL", c->id, c->key, c->seconds,
              c->detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  const char* selector = argc > 1 ? argv[1] : "all";
  int failed = 0;
  const wwv_status st = wwv_verify(selector, 20240601, print, nullptr, &failed);
  if (st != WWV_OK) {
    std::fprintf(stderr, "acceptance: %s\n", wwv_last_error());
    return 2;
  }
  std::printf("%d criteria failing\n", failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
