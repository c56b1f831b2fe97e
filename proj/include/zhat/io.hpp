#ifndef ZHAT_IO_HPP
#define ZHAT_IO_HPP

#include <string>

#include <json.hpp>

#include "zhat/graph.hpp"
#include "zhat/qseries.hpp"

namespace zhat {

// {"vertices": [{"id": 0, "weight": 4}, ...], "edges": [[0, 1], ...]}
PlumbingGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const PlumbingGraph& g);

// Star shorthand "w0: w1 w2 w3".
PlumbingGraph graph_from_text(const std::string& text);

// JSON when the content starts with '{', star shorthand otherwise.
PlumbingGraph parse_graph(const std::string& content);
PlumbingGraph load_graph(const std::string& path);

nlohmann::json series_to_json(const QSeries& s);
QSeries series_from_json(const nlohmann::json& doc);

} // namespace zhat

#endif
