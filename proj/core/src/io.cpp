#include "gmrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <sstream>

#include "gmrank/error.hpp"

namespace gmrank::io {

std::string format_probability(double p) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.15g", p);
    return std::string(buf, static_cast<std::size_t>(len));
}

namespace {

void write_header(std::ostream &out, std::string_view header) {
    if (!header.empty())
        out << "# " << header << '\n';
}

} // namespace

void write_rank_vector(std::ostream &out, const DirectedGraph &g, const RankVector &v, const RankIndex &index,
                       std::string_view header) {
    write_header(out, header);
    for (std::size_t k = 0; k < index.size(); ++k) {
        const NodeId node = index.order[k];
        out << (k + 1) << '\t' << g.external_id(node) << '\t' << format_probability(v.probabilities[node]) << '\n';
    }
}

std::vector<double> read_rank_probabilities(std::istream &in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;)
            tokens.push_back(tok);
        if (tokens.empty() || tokens.front().front() == '#')
            continue;
        if (tokens.size() != 1 && tokens.size() != 3)
            throw ParseError(line_no, "expected 'rank node probability' or a single probability");
        const std::string &tok = tokens.back();
        double p = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), p);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || !(p >= 0.0))
            throw ParseError(line_no, "'" + tok + "' is not a non-negative probability");
        values.push_back(p);
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

void write_density_grid(std::ostream &out, const DensityGrid &grid, std::string_view header) {
    write_header(out, header);
    out << "# boundaries";
    for (double e : grid.k_edges)
        out << '\t' << format_probability(e);
    out << '\n';
    for (std::size_t row = 0; row < grid.bins; ++row) {
        for (std::size_t col = 0; col < grid.bins; ++col) {
            if (col > 0)
                out << '\t';
            out << grid.at(row, col);
        }
        out << '\n';
    }
}

} // namespace gmrank::io
