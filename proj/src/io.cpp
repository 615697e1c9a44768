#include "reebmapper/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "reebmapper/errors.hpp"

namespace reebmapper {

std::string format_double(double x) {
    char buf[64];
    for (int precision = 1; precision <= 12; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

nlohmann::json box_json(const Box& b) {
    nlohmann::json axes = nlohmann::json::array();
    for (const Interval& iv : b.axes) axes.push_back({iv.lo, iv.hi});
    return axes;
}

}  // namespace

std::string cover_to_json(const Cover& c) {
    nlohmann::json j;
    j["dim_range"] = c.dim_range;
    nlohmann::json elements = nlohmann::json::array();
    for (const Box& b : c.elements) elements.push_back(box_json(b));
    j["elements"] = elements;
    if (c.uniform) {
        nlohmann::json u;
        u["range"] = box_json(c.uniform->range);
        u["counts"] = c.uniform->counts;
        u["gain"] = c.uniform->gain;
        j["uniform"] = u;
    }
    return j.dump(2) + "\n";
}

Cover cover_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cover JSON parse failure: ") + e.what());
    }
    Cover c;
    c.dim_range = j.at("dim_range").get<int>();
    for (const auto& el : j.at("elements")) {
        Box b;
        for (const auto& axis : el) b.axes.push_back({axis.at(0).get<double>(), axis.at(1).get<double>()});
        c.elements.push_back(std::move(b));
    }
    if (j.contains("uniform")) {
        UniformSpec u;
        for (const auto& axis : j["uniform"].at("range")) {
            u.range.axes.push_back({axis.at(0).get<double>(), axis.at(1).get<double>()});
        }
        u.counts = j["uniform"].at("counts").get<std::vector<int>>();
        u.gain = j["uniform"].at("gain").get<double>();
        c.uniform = std::move(u);
    }
    return c;
}

std::string component_set_to_json(const ComponentSet& cs) {
    nlohmann::json j;
    nlohmann::json region = nlohmann::json::array();
    for (const Box& b : cs.region.boxes) region.push_back(box_json(b));
    j["region"] = region;
    nlohmann::json comps;
    for (const auto& [label, ids] : cs.members) comps[std::to_string(label)] = ids;
    j["components"] = comps;
    return j.dump(2) + "\n";
}

std::string mapper_to_json(const MapperNerve& mn) {
    nlohmann::json j;
    nlohmann::json vertices = nlohmann::json::array();
    for (size_t i = 0; i < mn.vertices.size(); ++i) {
        vertices.push_back({{"id", i},
                            {"cover_index", mn.vertices[i].cover_index},
                            {"component", mn.vertices[i].component_label}});
    }
    j["vertices"] = vertices;
    j["simplices"] = mn.simplices;
    return j.dump(2) + "\n";
}

std::string mapper_to_dot(const MapperNerve& mn) {
    std::ostringstream os;
    os << "graph mapper {\n";
    for (size_t i = 0; i < mn.vertices.size(); ++i) {
        os << "  v" << i << " [label=\"U" << mn.vertices[i].cover_index << ":c"
           << mn.vertices[i].component_label << "\"];\n";
    }
    for (const auto& s : mn.simplices) {
        if (s.size() == 2) os << "  v" << s[0] << " -- v" << s[1] << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string reeb_to_json(const ReebGraph& g) {
    nlohmann::json j;
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : g.nodes) nodes.push_back({{"id", n.id}, {"value", n.value}});
    j["nodes"] = nodes;
    j["edges"] = g.edges;
    return j.dump(2) + "\n";
}

std::string reeb_to_dot(const ReebGraph& g) {
    std::ostringstream os;
    os << "graph reeb {\n";
    // rank nodes of equal value together so the drawing follows f
    std::map<std::string, std::vector<int>> by_value;
    for (const auto& n : g.nodes) by_value[format_double(n.value)].push_back(n.id);
    for (const auto& n : g.nodes) {
        os << "  n" << n.id << " [label=\"" << format_double(n.value) << "\"];\n";
    }
    for (const auto& [value, ids] : by_value) {
        (void)value;
        if (ids.size() < 2) continue;
        os << "  { rank=same;";
        for (int id : ids) os << " n" << id << ";";
        os << " }\n";
    }
    for (const auto& e : g.edges) os << "  n" << e[0] << " -- n" << e[1] << ";\n";
    os << "}\n";
    return os.str();
}

std::string diagram_report_to_json(const DiagramReport& report) {
    nlohmann::json j;
    j["pass"] = report.pass;
    j["eps"] = report.eps;
    j["sampled"] = report.sampled;
    j["naturality_checked"] = report.naturality_checked;
    j["naturality_failed"] = report.naturality_failed;
    j["triangles_checked"] = report.triangles_checked;
    j["triangles_failed"] = report.triangles_failed;
    j["totality_failed"] = report.totality_failed;
    nlohmann::json ces = nlohmann::json::array();
    for (const auto& ce : report.counterexamples) {
        ces.push_back({{"check", ce.check},
                       {"inner", box_json(ce.inner)},
                       {"outer", box_json(ce.outer)},
                       {"source_label", ce.source_label},
                       {"expected", ce.expected},
                       {"got", ce.got}});
    }
    j["counterexamples"] = ces;
    return j.dump(2) + "\n";
}

std::string equivalence_report_to_json(const EquivalenceReport& report) {
    nlohmann::json j;
    j["pass"] = report.pass;
    j["boxes_checked"] = report.boxes_checked;
    j["pairs_checked"] = report.pairs_checked;
    j["failures"] = report.failures;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

}  // namespace reebmapper
