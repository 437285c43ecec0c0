#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"

namespace socnet {

enum class GraphFormat { Auto, SnapEdgeList, Pajek };
enum class Directedness { Auto, Directed, Undirected };

std::string_view to_string(GraphFormat f);
/// Accepts "snap" / "snap-edgelist" / "pajek" / "auto".
std::optional<GraphFormat> parse_graph_format(std::string_view name);

struct EdgeListSource {
    std::filesystem::path path;
    GraphFormat format = GraphFormat::Auto;
    /// Informational only. Every input is collapsed to an undirected simple graph.
    Directedness directedness = Directedness::Auto;
};

/// Concrete format for a source: the explicit tag, or a guess from the file
/// extension (.net / .paj, optionally followed by .gz, mean Pajek).
GraphFormat resolve_format(const EdgeListSource& source);

/// What the cleaning pass did to the raw input.
struct ParseDiagnostics {
    std::size_t data_lines = 0;
    std::size_t comment_lines = 0;
    std::size_t self_loops = 0;
    /// Repeated arcs and reciprocal pairs folded into an existing undirected edge.
    std::size_t merged_duplicates = 0;
    bool directed_input = false;
    std::vector<std::string> warnings;
};

/**
 * SNAP edge list: '#' starts a comment line, blank lines are ignored, every
 * other line holds exactly two whitespace-separated identifiers. Identifiers
 * become labels; indices follow first appearance.
 *
 * A comment of the form "#! node <id>" declares a node without edges. The
 * writer emits it for isolated nodes so samples survive a round trip; other
 * SNAP readers see an ordinary comment.
 */
Graph parse_snap_edgelist(std::istream& in, ParseDiagnostics* diagnostics = nullptr);

/**
 * Pajek subset: optional "*Network", a mandatory "*Vertices n" header,
 * optional vertex lines `<i> ["label"] [coords...]`, then any number of
 * "*Edges" / "*Arcs" (pairs, trailing weight ignored) and "*Edgeslist" /
 * "*Arcslist" sections with 1-based indices. Lines starting with '%' are
 * comments. Unknown sections are skipped with a warning.
 */
Graph parse_pajek(std::istream& in, ParseDiagnostics* diagnostics = nullptr);

/// Opens the file (gzip transparently) and dispatches on the resolved format.
Graph read_graph(const EdgeListSource& source, ParseDiagnostics* diagnostics = nullptr);

/// SNAP edge list with labels as identifiers, edges in ascending index order.
/// Whitespace inside a label and a leading '#' are replaced by '_'.
void write_snap_edgelist(std::ostream& out, const Graph& g);

} // namespace socnet
