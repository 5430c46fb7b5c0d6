#include "sipdec/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace sipdec {

ParseError::ParseError(std::size_t line, const std::string & what) :
    std::runtime_error("line " + std::to_string(line) + ": " + what),
    line_(line)
{
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        if (i > start)
            fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

std::uint64_t parse_count(std::string_view field, std::size_t line_no, const char * what)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line_no, std::string("expected non-negative integer for ") + what + ", got '"
            + std::string(field) + "'");
    return value;
}

} // namespace

DirectedGraph parse_graph(std::istream & in)
{
    std::optional<DirectedGraph> graph;
    std::uint64_t declared_arcs = 0;
    std::size_t seen_arcs = 0;
    std::size_t line_no = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty() || fields[0].starts_with('#'))
            continue;

        if (fields[0] == "p") {
            if (graph)
                throw ParseError(line_no, "duplicate 'p' header");
            if (fields.size() != 3)
                throw ParseError(line_no, "header must be 'p <node_count> <arc_count>'");
            auto nodes = parse_count(fields[1], line_no, "node count");
            declared_arcs = parse_count(fields[2], line_no, "arc count");
            if (nodes > (std::uint64_t{1} << 31))
                throw ParseError(line_no, "node count too large");
            graph.emplace(static_cast<std::size_t>(nodes));
        }
        else if (fields[0] == "a") {
            if (!graph)
                throw ParseError(line_no, "arc before 'p' header");
            if (fields.size() != 3)
                throw ParseError(line_no, "arc line must be 'a <src> <dst>'");
            auto src = parse_count(fields[1], line_no, "arc source");
            auto dst = parse_count(fields[2], line_no, "arc target");
            if (src >= graph->node_count() || dst >= graph->node_count())
                throw ParseError(line_no, "node id out of range (node count " + std::to_string(graph->node_count()) + ")");
            if (src == dst)
                throw ParseError(line_no, "self-loop on node " + std::to_string(src));
            if (!graph->add_arc(static_cast<NodeId>(src), static_cast<NodeId>(dst)))
                throw ParseError(line_no, "duplicate arc " + std::to_string(src) + " -> " + std::to_string(dst));
            ++seen_arcs;
        }
        else
            throw ParseError(line_no, "unknown line type '" + std::string(fields[0]) + "'");
    }

    if (!graph)
        throw ParseError(line_no, "missing 'p' header");
    if (seen_arcs != declared_arcs)
        throw ParseError(line_no, "header declares " + std::to_string(declared_arcs) + " arcs but "
            + std::to_string(seen_arcs) + " were given");
    return std::move(*graph);
}

DirectedGraph read_graph(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return parse_graph(in);
}

void serialize_graph(const DirectedGraph & g, std::ostream & out)
{
    out << "p " << g.node_count() << ' ' << g.arc_count() << '\n';
    for (auto [u, v] : g.arcs())
        out << "a " << u << ' ' << v << '\n';
}

void write_graph(const DirectedGraph & g, const std::filesystem::path & path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    serialize_graph(g, out);
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

} // namespace sipdec
