#ifndef HOMLAB_CLI_HPP
#define HOMLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace homlab {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/**
 * Entry point of the command-line tool. `args` excludes the program name.
 * The result JSON goes to `out`; diagnostics go to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct PlotRow {
    double threshold = 0.0;
    int r = 0;
    long long betti = 0;
    std::string method;
};

/// CSV with header `threshold,r,betti,method`, rows in the given order.
void emit_plot_data(std::ostream& out, const std::vector<PlotRow>& rows);

} // namespace homlab

#endif
