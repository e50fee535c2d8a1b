#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gmrank/google_matrix.hpp"
#include "gmrank/graph.hpp"
#include "gmrank/ranking.hpp"

namespace gmrank::io {

/// 15 significant digits ("%.15g"), the precision of every exporter.
std::string format_probability(double p);

/// "rank_index<TAB>node_id<TAB>probability", descending probability.
/// `header` is written first as a '#' comment line when non-empty.
void write_rank_vector(std::ostream &out, const DirectedGraph &g, const RankVector &v, const RankIndex &index,
                       std::string_view header = {});

/// Reads the probability column of a rank-vector file and returns it sorted
/// descending (by_rank[K - 1]). A file with a single numeric column is also
/// accepted.
std::vector<double> read_rank_probabilities(std::istream &in);

/// Header comment, a "# boundaries" line, then `bins` rows of counts.
void write_density_grid(std::ostream &out, const DensityGrid &grid, std::string_view header = {});

} // namespace gmrank::io
