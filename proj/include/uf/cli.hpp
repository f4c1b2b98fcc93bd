#pragma once

namespace uf {

/// Batch entry point. Exit codes: 0 success, 1 domain error, 2 budget
/// exhaustion, 3 usage error.
int cli_main(int argc, char** argv);

} // namespace uf
