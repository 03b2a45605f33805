#include "stburst/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stburst/mds.hpp"

namespace stburst::io {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

std::vector<corpus::Document> read_documents_jsonl(const std::string& path,
                                                   const corpus::TokenizerConfig& tokenizer) {
    auto in = open_input(path);
    std::vector<corpus::Document> docs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": invalid JSON");
        }
        corpus::Document doc;
        try {
            doc.doc_id = obj.at("doc_id").get<std::string>();
            doc.stream_id = obj.at("stream_id").get<std::string>();
            doc.timestamp = obj.at("timestamp").get<int>();
            if (obj.contains("terms")) {
                for (const auto& [term, count] : obj.at("terms").items()) {
                    const auto c = count.get<std::int64_t>();
                    if (c < 1) {
                        throw std::runtime_error("term count must be positive");
                    }
                    doc.term_counts[term] = static_cast<std::uint32_t>(c);
                }
            } else if (obj.contains("text")) {
                doc.term_counts = corpus::tokenize(obj.at("text").get<std::string>(), tokenizer);
            } else {
                throw std::runtime_error("record needs either 'terms' or 'text'");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<corpus::StreamMeta> read_streams_json(const std::string& path) {
    auto in = open_input(path);
    json root = json::parse(in);
    if (!root.is_array()) {
        throw std::runtime_error(path + ": expected a JSON array of stream records");
    }
    if (root.empty()) {
        throw std::runtime_error(path + ": stream set is empty");
    }

    const bool planar = root.front().contains("x");
    std::vector<corpus::StreamMeta> streams;
    std::vector<std::pair<double, double>> latlon;
    for (const auto& rec : root) {
        corpus::StreamMeta meta;
        meta.stream_id = rec.at("stream_id").get<std::string>();
        if (planar) {
            meta.location.x = rec.at("x").get<double>();
            meta.location.y = rec.at("y").get<double>();
        } else {
            latlon.emplace_back(rec.at("lat").get<double>(), rec.at("lon").get<double>());
        }
        streams.push_back(std::move(meta));
    }
    if (!planar) {
        const size_t n = streams.size();
        std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                const double d = corpus::haversine_km(latlon[i].first, latlon[i].second,
                                                      latlon[j].first, latlon[j].second);
                dist[i][j] = dist[j][i] = d;
            }
        }
        const auto points = corpus::classical_mds(dist);
        for (size_t i = 0; i < n; ++i) streams[i].location = points[i];
    }
    return streams;
}

std::vector<corpus::StreamMeta> read_streams_from_distances(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path + ": empty distances file");
    }
    std::vector<std::string> ids;
    for (auto& f : split_csv_line(line)) {
        ids.push_back(trimmed(f));
    }
    const size_t n = ids.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) {
            throw std::runtime_error(path + ": expected " + std::to_string(n) + " matrix rows");
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != n) {
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(n));
        }
        for (size_t j = 0; j < n; ++j) {
            dist[i][j] = std::stod(fields[j]);
        }
    }
    const auto points = corpus::classical_mds(dist);
    std::vector<corpus::StreamMeta> streams(n);
    for (size_t i = 0; i < n; ++i) {
        streams[i] = {ids[i], points[i]};
    }
    return streams;
}

std::vector<corpus::Corpus::FrequencyRecord> read_frequencies_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path + ": empty frequencies file");
    }
    if (trimmed(line) != "stream,timestamp,term,count") {
        throw std::runtime_error(path + ": expected header 'stream,timestamp,term,count'");
    }
    std::vector<corpus::Corpus::FrequencyRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 4 fields");
        }
        corpus::Corpus::FrequencyRecord rec;
        rec.stream_id = fields[0];
        rec.timestamp = std::stoi(fields[1]);
        rec.term = fields[2];
        const long count = std::stol(fields[3]);
        if (rec.timestamp < 1 || count < 0) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": timestamp must be >= 1 and count >= 0");
        }
        rec.count = static_cast<std::uint32_t>(count);
        records.push_back(std::move(rec));
    }
    return records;
}

void write_streams_json(const std::string& path, const std::vector<corpus::StreamMeta>& streams) {
    json arr = json::array();
    for (const auto& s : streams) {
        arr.push_back({{"stream_id", s.stream_id}, {"x", s.location.x}, {"y", s.location.y}});
    }
    write_text_file(path, arr.dump(2) + "\n");
}

void write_frequencies_csv(const std::string& path, const synth::SyntheticDataset& dataset) {
    std::ostringstream out;
    out << "stream,timestamp,term,count\n";
    for (int t = 0; t < dataset.config().terms; ++t) {
        const auto matrix = dataset.term_matrix(t);
        const std::string& term = dataset.term_names()[static_cast<size_t>(t)];
        for (size_t s = 0; s < matrix.size(); ++s) {
            for (size_t i = 0; i < matrix[s].size(); ++i) {
                if (matrix[s][i] > 0) {
                    out << dataset.streams()[s].stream_id << ',' << (i + 1) << ',' << term << ','
                        << matrix[s][i] << '\n';
                }
            }
        }
    }
    write_text_file(path, out.str());
}

void write_ground_truth_json(const std::string& path,
                             const std::vector<synth::InjectedPattern>& patterns) {
    json arr = json::array();
    for (const auto& p : patterns) {
        json params = json::array();
        for (const auto& mp : p.params) {
            params.push_back(
                {{"stream", mp.stream_id}, {"c", mp.scale}, {"k", mp.shape}, {"v", mp.peak}});
        }
        arr.push_back({{"term", p.term},
                       {"timeframe", {p.start, p.end}},
                       {"streams", p.streams},
                       {"params", std::move(params)}});
    }
    write_text_file(path, arr.dump(2) + "\n");
}

std::string temporal_interval_json(const std::string& term, const temporal::TemporalInterval& iv) {
    json obj{{"type", "temporal"},
             {"term", term},
             {"stream", iv.stream_id},
             {"l", iv.left},
             {"r", iv.right},
             {"score", iv.burstiness}};
    return obj.dump();
}

std::string comb_pattern_json(const stcomb::CombinatorialPattern& pattern) {
    json obj{{"type", "combinatorial"},
             {"term", pattern.term},
             {"streams", pattern.streams},
             {"timeframe", {pattern.start, pattern.end}},
             {"score", pattern.score}};
    return obj.dump();
}

std::string regional_window_json(const std::string& term, const stlocal::SpatiotemporalWindow& window,
                                 const std::vector<corpus::StreamMeta>& streams) {
    std::vector<std::string> ids;
    ids.reserve(window.region.size());
    for (std::size_t idx : window.region) {
        ids.push_back(streams.at(idx).stream_id);
    }
    std::sort(ids.begin(), ids.end());
    json obj{{"type", "regional"},
             {"term", term},
             {"streams", std::move(ids)},
             {"bounds", {window.bounds.x_min, window.bounds.x_max, window.bounds.y_min,
                         window.bounds.y_max}},
             {"timeframe", {window.start, window.end}},
             {"score", window.score}};
    return obj.dump();
}

std::string rectangle_json(const spatial::RScoredRectangle& rect,
                           const std::vector<corpus::StreamMeta>& streams) {
    std::vector<std::string> ids, flagged;
    for (std::size_t idx : rect.members) ids.push_back(streams.at(idx).stream_id);
    for (std::size_t idx : rect.flagged_nonbursty) flagged.push_back(streams.at(idx).stream_id);
    std::sort(ids.begin(), ids.end());
    std::sort(flagged.begin(), flagged.end());
    json obj{{"bounds", {rect.bounds.x_min, rect.bounds.x_max, rect.bounds.y_min, rect.bounds.y_max}},
             {"streams", std::move(ids)},
             {"score", rect.score},
             {"flagged_nonbursty", std::move(flagged)}};
    return obj.dump();
}

LoadedPatterns read_patterns_jsonl(const std::string& path) {
    auto in = open_input(path);
    LoadedPatterns loaded;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": invalid JSON");
        }
        const std::string type = obj.at("type").get<std::string>();
        if (type != "combinatorial" && type != "regional") {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": pattern type '" +
                                     type + "' cannot back a search index");
        }
        if (loaded.type.empty()) {
            loaded.type = type;
        } else if (loaded.type != type) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": mixed pattern types; one kind per index");
        }
        search::Pattern p;
        p.streams = obj.at("streams").get<std::vector<std::string>>();
        std::sort(p.streams.begin(), p.streams.end());
        p.start = obj.at("timeframe").at(0).get<int>();
        p.end = obj.at("timeframe").at(1).get<int>();
        p.score = obj.at("score").get<double>();
        loaded.patterns.emplace_back(obj.at("term").get<std::string>(), std::move(p));
    }
    return loaded;
}

std::string query_result_json(int rank, const search::QueryResult& result) {
    json contributions = json::object();
    for (const auto& [term, score] : result.contributions) {
        contributions[term] = score;
    }
    json obj{{"rank", rank},
             {"doc_id", result.doc_id},
             {"score", result.score},
             {"contributions", std::move(contributions)}};
    return obj.dump();
}

std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trimmed(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        }
        pairs.emplace_back(trimmed(t.substr(0, eq)), trimmed(t.substr(eq + 1)));
    }
    return pairs;
}

std::string read_text_file(const std::string& path) {
    auto in = open_input(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

} // namespace stburst::io
