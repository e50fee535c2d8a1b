#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "gmrank/google_matrix.hpp"
#include "gmrank/ranking.hpp"

namespace gmrank::cli {

enum class Command { Rank, TwoDRank, Density, Correlator, Fit, Culture };

enum ExitCode : int {
    kSuccess = 0,
    kInvalidInput = 2,
    kNotConverged = 3,
};

struct RunConfig {
    Command command = Command::Rank;
    std::filesystem::path graph_path;
    std::filesystem::path labels_path;
    bool string_ids = false;
    double alpha = kDefaultAlpha;
    double tol = kDefaultTolerance;
    std::size_t max_iter = kDefaultMaxIterations;
    std::size_t top = 30;  // person-list length L
    std::size_t heroes = 3;
    std::size_t bins = kDefaultDensityBins;
    std::size_t k_min = 1;
    std::size_t k_max = 10;
    std::filesystem::path vector_path;     // fit: read a rank-vector file instead of a graph
    std::filesystem::path annotation_path; // culture
    std::optional<std::string> edition;    // culture: edition the --graph belongs to
    std::filesystem::path output_path = ".";
    bool deterministic = false;
};

std::string_view command_name(Command c);

/// Executes one batch run. Machine-readable results go to files under
/// config.output_path and a short summary to `out`; failures print a single
/// "error<TAB>kind<TAB>message" line to `err`.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv into a config and runs it.
int main(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace gmrank::cli
