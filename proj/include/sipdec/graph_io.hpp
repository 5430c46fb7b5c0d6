#pragma once

#include "sipdec/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sipdec {

// Graph text format:
//   p <node_count> <arc_count>
//   a <src> <dst>        (one line per arc, 0-based ids)
//   # comment
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string & what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DirectedGraph parse_graph(std::istream & in);
DirectedGraph read_graph(const std::filesystem::path & path);

// Arcs are written sorted by (src, dst).
void serialize_graph(const DirectedGraph & g, std::ostream & out);
void write_graph(const DirectedGraph & g, const std::filesystem::path & path);

} // namespace sipdec
