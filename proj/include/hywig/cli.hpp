#pragma once

namespace hywig {

// Entry point for the `hywig` binary. Subcommands: state, wigner, evolve,
// render, verify. Returns the process exit code: 0 ok, 2 invalid input,
// 3 numeric/truncation failure, 4 verification failure. Option precedence is
// flags > --config file > built-in defaults.
int run_cli(int argc, const char* const* argv);

} // namespace hywig
