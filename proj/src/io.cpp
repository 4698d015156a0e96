#include "percolab/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace percolab {

void write_edge_list(std::ostream& out, const MultiGraph& g) {
    out << "n " << g.vertex_count() << '\n';
    for (const auto& e : g.edges()) out << (e.u + 1) << ' ' << (e.v + 1) << '\n';
}

MultiGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag >> n) || tag != "n") {
                throw std::runtime_error("edge list: expected header `n <count>` on line " + std::to_string(line_no));
            }
            have_header = true;
            continue;
        }
        long long u = 0, v = 0;
        if (!(ls >> u >> v)) throw std::runtime_error("edge list: malformed line " + std::to_string(line_no));
        if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
            throw std::out_of_range("edge list: endpoint out of range on line " + std::to_string(line_no));
        }
        edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
    }
    if (!have_header) throw std::runtime_error("edge list: missing header");
    return MultiGraph(n, std::move(edges));
}

void save_edge_list(const std::string& path, const MultiGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_edge_list(out, g);
}

MultiGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

void write_values(std::ostream& out, const std::vector<double>& values) {
    out << std::setprecision(17);
    for (double v : values) out << v << '\n';
}

std::vector<double> read_values(std::istream& in) {
    std::vector<double> values;
    double v = 0;
    while (in >> v) values.push_back(v);
    if (!in.eof()) throw std::runtime_error("value list: malformed entry");
    return values;
}

}  // namespace percolab
