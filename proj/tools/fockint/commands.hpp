#ifndef FOCKINT_TOOLS_COMMANDS_HPP
#define FOCKINT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fockint::cli {

enum class Format { kCsv, kJson };

struct GlobalOptions {
    Format format = Format::kCsv;
    std::string out_path;  // empty = stdout
    int threads = 0;       // 0 = auto
    std::uint64_t seed = 0;
    bool stamp = false;  // wall-clock timestamp in the record (off keeps outputs reproducible)
};

int cmd_ghom_dist(const GlobalOptions& g, int na, int nb, double t);
int cmd_ghom_scan(const GlobalOptions& g, int na, int nb, double t_min, double t_max, int steps);
int cmd_bell_surface(const GlobalOptions& g, int n_total, int steps);
int cmd_chsh(const GlobalOptions& g, int n_total, const std::vector<double>& settings,
             bool optimize, std::int64_t budget);
int cmd_qcurve(const GlobalOptions& g, int n_min, int n_max, int step, std::int64_t budget,
               bool emit_c);
int cmd_oracle_check(const GlobalOptions& g, int max_n);

}  // namespace fockint::cli

#endif  // FOCKINT_TOOLS_COMMANDS_HPP
