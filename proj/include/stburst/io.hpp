#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stburst/corpus.hpp"
#include "stburst/search.hpp"
#include "stburst/spatial.hpp"
#include "stburst/stcomb.hpp"
#include "stburst/stlocal.hpp"
#include "stburst/synth.hpp"
#include "stburst/temporal.hpp"

namespace stburst::io {

// ---- corpus inputs ---------------------------------------------------------

/// documents.jsonl: one object per line with doc_id, stream_id, timestamp and
/// either "terms" (term -> count) or "text" (tokenized here).
std::vector<corpus::Document> read_documents_jsonl(const std::string& path,
                                                   const corpus::TokenizerConfig& tokenizer);

/// streams.json: [{"stream_id", "x", "y"}] or [{"stream_id", "lat", "lon"}].
/// Lat/lon inputs are projected onto the plane via great-circle distances and
/// classical MDS.
std::vector<corpus::StreamMeta> read_streams_json(const std::string& path);

/// distances.csv: header row of stream ids, then an n x n matrix. The layout
/// comes out of classical MDS over the matrix.
std::vector<corpus::StreamMeta> read_streams_from_distances(const std::string& path);

std::vector<corpus::Corpus::FrequencyRecord> read_frequencies_csv(const std::string& path);

// ---- generated artifacts ---------------------------------------------------

void write_streams_json(const std::string& path, const std::vector<corpus::StreamMeta>& streams);
void write_frequencies_csv(const std::string& path, const synth::SyntheticDataset& dataset);
void write_ground_truth_json(const std::string& path,
                             const std::vector<synth::InjectedPattern>& patterns);

// ---- mined patterns --------------------------------------------------------

std::string temporal_interval_json(const std::string& term, const temporal::TemporalInterval& iv);
std::string comb_pattern_json(const stcomb::CombinatorialPattern& pattern);
std::string regional_window_json(const std::string& term, const stlocal::SpatiotemporalWindow& window,
                                 const std::vector<corpus::StreamMeta>& streams);
std::string rectangle_json(const spatial::RScoredRectangle& rect,
                           const std::vector<corpus::StreamMeta>& streams);

/// Pattern files for the search engine: combinatorial or regional lines, one
/// kind per file.
struct LoadedPatterns {
    std::string type; // "combinatorial" or "regional"
    std::vector<std::pair<std::string, search::Pattern>> patterns; // (term, pattern)
};
LoadedPatterns read_patterns_jsonl(const std::string& path);

std::string query_result_json(int rank, const search::QueryResult& result);

// ---- misc ------------------------------------------------------------------

/// Flat key=value configuration files; '#' starts a comment line.
std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace stburst::io
