#pragma once

#include <iosfwd>
#include <iostream>

namespace mbqc {

// Full command-line driver. Returns the process exit status: 0 when the
// requested analysis succeeds or holds, 1 when it is answered negatively
// (no flow, witness rejected, not deterministic), 2 for usage, parse, or
// parameter problems. Streams are injectable so tests can run it in-process;
// `in` stands in for stdin when the document argument is "-" or omitted.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            std::istream& in = std::cin);

} // namespace mbqc
