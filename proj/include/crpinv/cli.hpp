#pragma once

#include <iosfwd>

namespace crpinv
{

/// Entry point of the `crpinv` command line tool. Subcommands: factorize,
/// pinv, check {penrose,greville}, rpinv, bench. Returns the process exit
/// code; diagnostics go to `err` as a single line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace crpinv
