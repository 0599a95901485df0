#pragma once

#include <string>
#include <vector>

namespace fperr {

/// Full command-line front end, callable in-process so tests exercise the
/// exact code path of the installed binary. Arguments exclude argv[0].
/// Returns the process exit code: 0 = ran, 1 = usage error, 2 = bugs were
/// confirmed and --fail-on-bugs was given.
[[nodiscard]] int run_cli(const std::vector<std::string>& args);

} // namespace fperr
