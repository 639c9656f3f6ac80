#pragma once

#include <ostream>

namespace locuslab::cli {

// Quick property checks on fixed seeds. Prints one PASS/FAIL line per check
// and returns true iff all passed.
bool run_selftest(std::ostream& os);

}  // namespace locuslab::cli
