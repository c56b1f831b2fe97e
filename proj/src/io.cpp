#include "zhat/io.hpp"
#include "zhat/error.hpp"

#include <fstream>
#include <sstream>

namespace zhat {

PlumbingGraph graph_from_json(const nlohmann::json& doc)
{
    PlumbingGraph g;
    try {
        for (const auto& v : doc.at("vertices"))
            g.vertices.push_back({v.at("id").get<int>(), v.at("weight").get<std::int64_t>()});
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw Error(ErrorKind::parse, "edge must be a pair of vertex ids");
            g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::parse, std::string("malformed graph document: ") + ex.what());
    }
    validate(g);
    return g;
}

nlohmann::json graph_to_json(const PlumbingGraph& g)
{
    nlohmann::json doc;
    doc["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices)
        doc["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
    doc["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : g.edges)
        doc["edges"].push_back({a, b});
    return doc;
}

PlumbingGraph graph_from_text(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorKind::parse, "star shorthand must look like 'w0: w1 w2 ...'");
    std::istringstream head(text.substr(0, colon)), tail(text.substr(colon + 1));
    std::int64_t center;
    if (!(head >> center))
        throw Error(ErrorKind::parse, "missing center weight");
    std::string extra;
    if (head >> extra)
        throw Error(ErrorKind::parse, "unexpected '" + extra + "' before ':'");
    std::vector<std::int64_t> legs;
    std::string tok;
    while (tail >> tok) {
        try {
            std::size_t used = 0;
            legs.push_back(std::stoll(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse, "bad leg weight '" + tok + "'");
        }
    }
    return star(center, legs);
}

PlumbingGraph parse_graph(const std::string& content)
{
    auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& ex) {
            throw Error(ErrorKind::parse, std::string("invalid JSON: ") + ex.what());
        }
        return graph_from_json(doc);
    }
    return graph_from_text(content);
}

PlumbingGraph load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::parse, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

nlohmann::json series_to_json(const QSeries& s)
{
    nlohmann::json doc;
    doc["prefactor_exponent"] = to_string(s.prefactor_exponent);
    nlohmann::json constant = nlohmann::json::array();
    for (const auto& t : s.constant.terms())
        constant.push_back({to_string(t.coefficient), t.s, to_string(t.x)});
    constant.push_back(to_string(s.constant.rational));
    doc["constant"] = constant;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : s.terms)
        terms.push_back({to_string(e), c.str()});
    doc["terms"] = terms;
    doc["truncation_order"] = to_string(s.truncation_order);
    doc["conductor"] = s.conductor.str();
    return doc;
}

QSeries series_from_json(const nlohmann::json& doc)
{
    try {
        BigInt conductor(1);
        if (doc.contains("conductor"))
            conductor = BigInt(doc.at("conductor").get<std::string>());
        QSeries s(parse_rational(doc.at("truncation_order").get<std::string>()), conductor);
        const auto& constant = doc.at("constant");
        if (!constant.is_array() || constant.empty())
            throw Error(ErrorKind::parse, "constant must end with its rational part");
        for (std::size_t i = 0; i + 1 < constant.size(); ++i) {
            const auto& t = constant[i];
            s.constant.add(parse_rational(t.at(0).get<std::string>()), t.at(1).get<int>(),
                           parse_rational(t.at(2).get<std::string>()));
        }
        s.constant.add_rational(parse_rational(constant.back().get<std::string>()));
        for (const auto& t : doc.at("terms"))
            s.insert(parse_rational(t.at(0).get<std::string>()), BigInt(t.at(1).get<std::string>()));
        s.normalize_prefactor();
        Rational declared = parse_rational(doc.at("prefactor_exponent").get<std::string>());
        if (declared != s.prefactor_exponent)
            throw Error(ErrorKind::parse, "prefactor_exponent does not match the terms");
        return s;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::parse, std::string("malformed series document: ") + ex.what());
    }
}

} // namespace zhat
