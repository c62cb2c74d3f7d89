#ifndef GRASSNEST_CLI_HPP
#define GRASSNEST_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace grassnest::cli
{

/// Exit status of a run.
enum Exit : int
{
    Pass = 0,
    VerifiedFailure = 1,
    UsageError = 2,
};

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace grassnest::cli

#endif
