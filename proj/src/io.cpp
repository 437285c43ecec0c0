#include "socnet/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "socnet/error.hpp"

namespace socnet {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

/// Splits on whitespace; a token starting with '"' runs to the closing quote.
std::vector<std::string_view> tokenize(std::string_view line, bool honour_quotes = false) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i >= line.size()) break;
        if (honour_quotes && line[i] == '"') {
            const auto close = line.find('"', i + 1);
            const auto end = close == std::string_view::npos ? line.size() : close + 1;
            tokens.push_back(line.substr(i, end - i));
            i = end;
            continue;
        }
        const auto start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<std::size_t> to_index(std::string_view token) {
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

std::size_t count_unique_edges(std::vector<Edge> arcs) {
    for (auto& e : arcs)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(arcs.begin(), arcs.end());
    return static_cast<std::size_t>(std::unique(arcs.begin(), arcs.end()) - arcs.begin());
}

constexpr std::string_view kNodeDirective = "#! node ";

// Labels must stay a single token and must not read back as a comment.
std::string snap_identifier(std::string label) {
    if (label.empty()) return "_";
    for (auto& c : label)
        if (is_space(c)) c = '_';
    if (label.front() == '#') label.front() = '_';
    return label;
}

} // namespace

std::string_view to_string(GraphFormat f) {
    switch (f) {
    case GraphFormat::Auto: return "auto";
    case GraphFormat::SnapEdgeList: return "snap";
    case GraphFormat::Pajek: return "pajek";
    }
    return "auto";
}

std::optional<GraphFormat> parse_graph_format(std::string_view name) {
    const auto n = lower(name);
    if (n == "snap" || n == "snap-edgelist") return GraphFormat::SnapEdgeList;
    if (n == "pajek") return GraphFormat::Pajek;
    if (n == "auto") return GraphFormat::Auto;
    return std::nullopt;
}

GraphFormat resolve_format(const EdgeListSource& source) {
    if (source.format != GraphFormat::Auto) return source.format;
    auto path = source.path;
    if (lower(path.extension().string()) == ".gz") path = path.stem();
    const auto ext = lower(path.extension().string());
    return (ext == ".net" || ext == ".paj") ? GraphFormat::Pajek : GraphFormat::SnapEdgeList;
}

Graph parse_snap_edgelist(std::istream& in, ParseDiagnostics* diagnostics) {
    ParseDiagnostics diag;
    GraphBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            ++diag.comment_lines;
            if (text.starts_with(kNodeDirective)) {
                const auto id = trim(text.substr(kNodeDirective.size()));
                if (id.empty() || tokenize(id).size() != 1)
                    throw ParseError("malformed node declaration", line_no);
                builder.add_node(id);
            }
            continue;
        }
        const auto tokens = tokenize(text);
        if (tokens.size() != 2)
            throw ParseError("expected exactly two node identifiers, found " +
                                 std::to_string(tokens.size()),
                             line_no);
        ++diag.data_lines;
        builder.add_edge(tokens[0], tokens[1]);
    }
    if (in.bad()) throw IoError("read failure while parsing edge list");
    if (diag.data_lines == 0 && builder.node_count() == 0) throw ParseError("no edges");

    diag.self_loops = builder.self_loops();
    const auto arcs = builder.arcs();
    Graph g = std::move(builder).build();
    diag.merged_duplicates = arcs - g.edge_count();
    if (diagnostics) *diagnostics = std::move(diag);
    return g;
}

Graph parse_pajek(std::istream& in, ParseDiagnostics* diagnostics) {
    ParseDiagnostics diag;
    enum class Section { Preamble, Vertices, Pairs, Lists, Skipped };
    Section section = Section::Preamble;
    std::optional<std::size_t> vertex_count;
    std::vector<std::string> labels;
    std::vector<Edge> arcs;

    auto node_index = [&](std::string_view token, std::size_t line_no) -> NodeId {
        const auto idx = to_index(token);
        if (!idx) throw ParseError("invalid vertex index '" + std::string(token) + "'", line_no);
        if (*idx < 1 || *idx > *vertex_count)
            throw ParseError("vertex index " + std::string(token) + " out of range [1," +
                                 std::to_string(*vertex_count) + "]",
                             line_no);
        return static_cast<NodeId>(*idx - 1);
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '%') {
            ++diag.comment_lines;
            continue;
        }
        if (text.front() == '*') {
            const auto tokens = tokenize(text);
            const auto keyword = lower(tokens.front());
            if (keyword == "*vertices") {
                if (vertex_count) throw ParseError("duplicate *Vertices header", line_no);
                if (tokens.size() < 2) throw ParseError("*Vertices without a count", line_no);
                vertex_count = to_index(tokens[1]);
                if (!vertex_count) throw ParseError("invalid vertex count", line_no);
                labels.resize(*vertex_count);
                for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = std::to_string(i + 1);
                section = Section::Vertices;
                continue;
            }
            if (keyword == "*network") {
                continue;
            }
            const bool pairs = keyword == "*edges" || keyword == "*arcs";
            const bool lists = keyword == "*edgeslist" || keyword == "*arcslist";
            if (pairs || lists) {
                if (!vertex_count) throw ParseError("missing *Vertices header", line_no);
                if (keyword.starts_with("*arcs")) diag.directed_input = true;
                section = pairs ? Section::Pairs : Section::Lists;
                continue;
            }
            diag.warnings.push_back("line " + std::to_string(line_no) + ": skipping unsupported section " +
                                    std::string(tokens.front()));
            section = Section::Skipped;
            continue;
        }

        switch (section) {
        case Section::Preamble:
            throw ParseError("missing *Vertices header", line_no);
        case Section::Skipped:
            break;
        case Section::Vertices: {
            const auto tokens = tokenize(text, /*honour_quotes=*/true);
            const NodeId v = node_index(tokens.front(), line_no);
            if (tokens.size() >= 2) {
                auto name = tokens[1];
                if (name.size() >= 2 && name.front() == '"' && name.back() == '"')
                    name = name.substr(1, name.size() - 2);
                else if (!name.empty() && name.front() == '"')
                    throw ParseError("unterminated vertex label", line_no);
                labels[v] = std::string(name);
            }
            break;
        }
        case Section::Pairs: {
            const auto tokens = tokenize(text);
            if (tokens.size() < 2 || tokens.size() > 3)
                throw ParseError("expected '<from> <to> [weight]'", line_no);
            ++diag.data_lines;
            arcs.push_back({node_index(tokens[0], line_no), node_index(tokens[1], line_no)});
            break;
        }
        case Section::Lists: {
            const auto tokens = tokenize(text);
            ++diag.data_lines;
            const NodeId from = node_index(tokens[0], line_no);
            for (std::size_t i = 1; i < tokens.size(); ++i)
                arcs.push_back({from, node_index(tokens[i], line_no)});
            break;
        }
        }
    }
    if (in.bad()) throw IoError("read failure while parsing Pajek file");
    if (!vertex_count) throw ParseError("missing *Vertices header");

    diag.self_loops = static_cast<std::size_t>(
        std::count_if(arcs.begin(), arcs.end(), [](const Edge& e) { return e.u == e.v; }));
    std::vector<Edge> proper;
    proper.reserve(arcs.size() - diag.self_loops);
    std::copy_if(arcs.begin(), arcs.end(), std::back_inserter(proper), [](const Edge& e) { return e.u != e.v; });
    diag.merged_duplicates = proper.size() - count_unique_edges(proper);

    Graph g = Graph::from_edges(*vertex_count, proper, std::move(labels));
    if (diagnostics) *diagnostics = std::move(diag);
    return g;
}

Graph read_graph(const EdgeListSource& source, ParseDiagnostics* diagnostics) {
    std::unique_ptr<gzFile_s, decltype(&gzclose)> file(gzopen(source.path.c_str(), "rb"), &gzclose);
    if (!file) throw IoError("cannot open " + source.path.string());

    std::string content;
    std::vector<char> buffer(1 << 16);
    for (;;) {
        const int got = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
        if (got < 0) throw IoError("read failure on " + source.path.string());
        if (got == 0) break;
        content.append(buffer.data(), static_cast<std::size_t>(got));
    }

    std::istringstream in(std::move(content));
    try {
        if (resolve_format(source) == GraphFormat::Pajek) return parse_pajek(in, diagnostics);
        return parse_snap_edgelist(in, diagnostics);
    } catch (const ParseError& e) {
        throw ParseError(source.path.string() + ": " + e.what());
    }
}

void write_snap_edgelist(std::ostream& out, const Graph& g) {
    out << "# Undirected graph\n";
    out << "# Nodes: " << g.node_count() << " Edges: " << g.edge_count() << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.degree(v) == 0) out << kNodeDirective << snap_identifier(g.label(v)) << '\n';
    for (const auto& e : g.edges())
        out << snap_identifier(g.label(e.u)) << '\t' << snap_identifier(g.label(e.v)) << '\n';
}

} // namespace socnet
