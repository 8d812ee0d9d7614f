#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zxi/estimation.hpp"

namespace zxi::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadConfig = 2;
inline constexpr int kNumerical = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct CheckSpec {
    bool variance_at_least_bound = false;
    double bound_tolerance_se = 3.0;
    double max_abs_bias = -1.0;  // negative: not checked
    double max_rmse = -1.0;
};

struct DelaySimConfig {
    ExperimentConfig experiment;
    CheckSpec check;
};

// Parses a schema-1 experiment config; unknown keys are errors.
DelaySimConfig parse_delay_sim_config(const std::string& json_text);

// Plot data for the pure function figures.
struct FigureTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string summary;
};
FigureTable figure_table(int id);
std::vector<int> figure_ids();

}  // namespace zxi::cli
