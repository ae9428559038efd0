#ifndef BRUSSELAB_CLI_HPP
#define BRUSSELAB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace brusselab {

inline constexpr const char* kVersion = "1.0.0";

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
    std::vector<double> values() const;
};

// Parses "a:b:n"; throws std::invalid_argument on malformed or
// non-increasing grids.
Grid parse_grid(const std::string& text);

// Entry point behind the executable; args[0] is the program name.
// Returns 0 on success, 2 on argument errors, 1 on numeric failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace brusselab

#endif
