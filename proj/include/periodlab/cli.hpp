#ifndef PERIODLAB_CLI_HPP
#define PERIODLAB_CLI_HPP

#include <string>
#include <vector>

namespace periodlab {

// Batch front-end.  Subcommands: form, ltwist, periods, zeros, kloosterman,
// moments, dist, verify.  Returns the process exit code: 0 when all requested
// checks pass, 1 on a check failure, 2 on usage or configuration errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace periodlab

#endif
