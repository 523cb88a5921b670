#pragma once

#include <ostream>

// Acceptance harness: every release-gating check with its tolerance pinned
// in code, one PASS/FAIL line per criterion. Used by the `verify` CLI
// subcommand and by the ctest acceptance binary.

namespace entlab::accept {

// Runs all criteria; returns true when every one passes.
bool run_all(std::ostream& out);

}  // namespace entlab::accept
