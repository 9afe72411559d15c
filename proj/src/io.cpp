#include "selcol/io.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace selcol {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line)
{
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_int(std::string_view tok, int line)
{
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
    return value;
}

// Calls fn(line_number, tokens) for every non-empty, non-comment line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn)
{
    int ln = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++ln;
        auto toks = split_tokens(text.substr(pos, end - pos));
        if (!toks.empty() && toks[0] != "c")
            fn(ln, toks);
        if (end == text.size())
            break;
        pos = end + 1;
    }
}

struct EdgeReader {
    int n = 0;
    std::set<Edge> seen;
    std::vector<Edge> edges;

    void add(int ln, const std::vector<std::string_view>& toks)
    {
        if (toks.size() != 3)
            throw ParseError(ln, "edge line needs exactly two vertices");
        long long u = to_int(toks[1], ln), v = to_int(toks[2], ln);
        if (u < 1 || u > n)
            throw ParseError(ln, "vertex " + std::to_string(u) + " out of range");
        if (v < 1 || v > n)
            throw ParseError(ln, "vertex " + std::to_string(v) + " out of range");
        if (u == v)
            throw ParseError(ln, "self-loop at vertex " + std::to_string(u));
        Edge e{static_cast<Vertex>(std::min(u, v) - 1), static_cast<Vertex>(std::max(u, v) - 1)};
        if (!seen.insert(e).second)
            throw ParseError(ln, "duplicate edge " + std::to_string(e.first + 1) + " " +
                                     std::to_string(e.second + 1));
        edges.push_back(e);
    }
};

}  // namespace

Instance parse_instance(std::string_view text)
{
    bool have_header = false;
    long long m = 0, p = 0, k = 0;
    EdgeReader er;
    std::vector<std::vector<Vertex>> parts;
    std::vector<int> part_line;
    std::vector<int> owner;

    for_each_line(text, [&](int ln, const std::vector<std::string_view>& toks) {
        if (!have_header) {
            if (toks.size() != 6 || toks[0] != "p" || toks[1] != "selcol")
                throw ParseError(ln, "malformed header, expected 'p selcol <n> <m> <p> <k>'");
            long long n = to_int(toks[2], ln);
            m = to_int(toks[3], ln);
            p = to_int(toks[4], ln);
            k = to_int(toks[5], ln);
            if (n < 0 || m < 0 || p < 1 || k < 1)
                throw ParseError(ln, "malformed header, need n >= 0, m >= 0, p >= 1, k >= 1");
            er.n = static_cast<int>(n);
            parts.resize(static_cast<std::size_t>(p));
            part_line.assign(static_cast<std::size_t>(p), 0);
            owner.assign(static_cast<std::size_t>(n), 0);
            have_header = true;
            return;
        }
        if (toks[0] == "p")
            throw ParseError(ln, "second header line");
        if (toks[0] == "e") {
            er.add(ln, toks);
        } else if (toks[0] == "v") {
            if (toks.size() < 2)
                throw ParseError(ln, "part line needs a part index");
            long long j = to_int(toks[1], ln);
            if (j < 1 || j > p)
                throw ParseError(ln, "part index " + std::to_string(j) + " out of range");
            if (part_line[j - 1] != 0)
                throw ParseError(ln, "part " + std::to_string(j) + " declared twice");
            part_line[j - 1] = ln;
            if (toks.size() == 2)
                throw ParseError(ln, "part " + std::to_string(j) + " is empty");
            for (std::size_t i = 2; i < toks.size(); ++i) {
                long long v = to_int(toks[i], ln);
                if (v < 1 || v > er.n)
                    throw ParseError(ln, "vertex " + std::to_string(v) + " out of range");
                if (owner[v - 1] != 0)
                    throw ParseError(ln, "vertex " + std::to_string(v) + " assigned twice");
                owner[v - 1] = static_cast<int>(j);
                parts[j - 1].push_back(static_cast<Vertex>(v - 1));
            }
        } else {
            throw ParseError(ln, "unknown line type '" + std::string(toks[0]) + "'");
        }
    });

    if (!have_header)
        throw ParseError(0, "missing 'p selcol' header");
    if (static_cast<long long>(er.edges.size()) != m)
        throw ParseError(0, "header declares " + std::to_string(m) + " edges, found " +
                                std::to_string(er.edges.size()));
    for (std::size_t j = 0; j < parts.size(); ++j)
        if (part_line[j] == 0)
            throw ParseError(0, "part " + std::to_string(j + 1) + " missing");
    for (std::size_t v = 0; v < owner.size(); ++v)
        if (owner[v] == 0)
            throw ParseError(0, "vertex " + std::to_string(v + 1) + " not assigned to any part");

    return Instance(Graph::from_edges(er.n, er.edges), std::move(parts), static_cast<int>(k));
}

std::string serialize_instance(const Instance& inst)
{
    std::ostringstream os;
    const Graph& g = inst.graph();
    os << "p selcol " << g.num_vertices() << ' ' << g.num_edges() << ' ' << inst.num_parts()
       << ' ' << inst.k() << '\n';
    for (auto [u, v] : g.edges())
        os << "e " << u + 1 << ' ' << v + 1 << '\n';
    for (int j = 0; j < inst.num_parts(); ++j) {
        os << "v " << j + 1;
        for (Vertex v : inst.part(j))
            os << ' ' << v + 1;
        os << '\n';
    }
    return os.str();
}

Graph parse_graph(std::string_view text)
{
    bool have_header = false;
    long long m = 0;
    EdgeReader er;
    for_each_line(text, [&](int ln, const std::vector<std::string_view>& toks) {
        if (!have_header) {
            if (toks.size() == 4 && toks[0] == "p" && (toks[1] == "edges" || toks[1] == "edge")) {
                er.n = static_cast<int>(to_int(toks[2], ln));
                m = to_int(toks[3], ln);
            } else if (toks.size() == 6 && toks[0] == "p" && toks[1] == "selcol") {
                er.n = static_cast<int>(to_int(toks[2], ln));
                m = to_int(toks[3], ln);
            } else {
                throw ParseError(ln, "malformed header, expected 'p edges <n> <m>' or 'p selcol'");
            }
            if (er.n < 0 || m < 0)
                throw ParseError(ln, "negative size in header");
            have_header = true;
            return;
        }
        if (toks[0] == "e")
            er.add(ln, toks);
        else if (toks[0] != "v")
            throw ParseError(ln, "unknown line type '" + std::string(toks[0]) + "'");
    });
    if (!have_header)
        throw ParseError(0, "missing header");
    if (static_cast<long long>(er.edges.size()) != m)
        throw ParseError(0, "header declares " + std::to_string(m) + " edges, found " +
                                std::to_string(er.edges.size()));
    return Graph::from_edges(er.n, er.edges);
}

std::string verdict_to_json(const Verdict& v, bool include_timing)
{
    using nlohmann::json;
    json doc = json::object();
    doc["answer"] = to_string(v.answer);
    if (v.witness) {
        const Solution& s = *v.witness;
        json sel = json::array();
        for (Vertex x : s.selected)
            sel.push_back(x + 1);
        doc["selected"] = sel;
        if (s.coloring) {
            json col = json::array();
            for (auto [x, c] : *s.coloring)
                col.push_back(json::array({x + 1, c}));
            doc["coloring"] = col;
        }
        if (s.cliques) {
            json cl = json::array();
            for (const auto& c : *s.cliques) {
                json one = json::array();
                for (Vertex x : c)
                    one.push_back(x + 1);
                cl.push_back(one);
            }
            doc["cliques"] = cl;
        }
    }
    json stats = json::object();
    stats["solver"] = v.stats.solver;
    stats["params"] = v.stats.params;
    stats["notes"] = v.stats.notes;
    if (include_timing)
        stats["elapsed_ms"] = v.stats.elapsed_ms;
    doc["stats"] = stats;
    return doc.dump(2) + "\n";
}

Verdict verdict_from_json(std::string_view text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("solution document: ") + e.what());
    }
    try {
        Verdict v;
        std::string ans = doc.at("answer").get<std::string>();
        if (ans == "YES")
            v.answer = Answer::yes;
        else if (ans == "NO")
            v.answer = Answer::no;
        else if (ans == "EXHAUSTED")
            v.answer = Answer::exhausted;
        else
            throw ParseError(0, "unknown answer '" + ans + "'");
        if (doc.contains("selected")) {
            Solution s;
            for (int x : doc.at("selected").get<std::vector<int>>())
                s.selected.push_back(x - 1);
            std::sort(s.selected.begin(), s.selected.end());
            if (doc.contains("coloring")) {
                std::map<Vertex, Color> col;
                for (const auto& pair : doc.at("coloring")) {
                    auto vc = pair.get<std::vector<int>>();
                    if (vc.size() != 2)
                        throw ParseError(0, "coloring entries must be [vertex, color] pairs");
                    col[vc[0] - 1] = vc[1];
                }
                s.coloring = std::move(col);
            }
            if (doc.contains("cliques")) {
                std::vector<std::vector<Vertex>> cl;
                for (const auto& one : doc.at("cliques")) {
                    std::vector<Vertex> c;
                    for (int x : one.get<std::vector<int>>())
                        c.push_back(x - 1);
                    cl.push_back(std::move(c));
                }
                s.cliques = std::move(cl);
            }
            v.witness = std::move(s);
        }
        if (doc.contains("stats")) {
            const json& st = doc.at("stats");
            v.stats.solver = st.value("solver", "");
            if (st.contains("params"))
                v.stats.params = st.at("params").get<std::map<std::string, std::int64_t>>();
            if (st.contains("notes"))
                v.stats.notes = st.at("notes").get<std::vector<std::string>>();
            v.stats.elapsed_ms = st.value("elapsed_ms", 0.0);
        }
        return v;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("solution document: ") + e.what());
    }
}

}  // namespace selcol
