#ifndef REOSCHED_CLI_HPP
#define REOSCHED_CLI_HPP

namespace reosched {

// Exit codes: 0 success, 1 validation found violations, 2 usage error,
// 3 infeasible model, 4 limit hit with no solution, 5 config/schema error,
// 6 file/ingestion error, 7 internal error.
int cli_main(int argc, const char* const* argv);

} // namespace reosched

#endif // REOSCHED_CLI_HPP
