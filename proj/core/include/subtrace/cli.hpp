#pragma once

namespace subtrace {

/// Entry point behind the `subtrace` command. Subcommands:
///   simulate --config FILE [--clamp off|generic|class] [--seed N] --out DIR
///   compare  --config FILE [--amended-clamp generic|class] [--seed N] --out DIR
///   geometry --selfcheck [--instances N] [--seed N]
/// Exit codes: 0 success, 1 config error, 2 I/O error, 3 selfcheck failure.
int cli_main(int argc, const char* const* argv);

}  // namespace subtrace
