#pragma once

#include <ostream>

namespace reencoder {

// Built-in consistency suite: frozen regressions for the optical conventions,
// the herald classification tables, the closed-form mismatch oracle, and
// probability bookkeeping, plus fault-injection checks proving the regressions
// actually discriminate against wrong conventions. Prints one line per check;
// returns true when everything passes.
bool run_selftest(std::ostream& out);

}  // namespace reencoder
