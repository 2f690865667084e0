#pragma once

namespace covertext {

// Entry point for the covertext tool. Subcommands: run-local, serve,
// connect, eavesdrop, attack-demo, battery, selftest, bench.
// Exit codes: 0 success, 1 protocol/verification failure, 2 usage error.
int cli_main(int argc, char** argv);

}  // namespace covertext
