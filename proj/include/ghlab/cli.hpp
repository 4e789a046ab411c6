#ifndef GHLAB_CLI_HPP
#define GHLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ghlab {

/// Exit contract: 0 verification passed, 1 mathematical failure,
/// 2 usage or I/O failure. Every subcommand is deterministic for a fixed
/// (config, flags, seed).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace ghlab

#endif
