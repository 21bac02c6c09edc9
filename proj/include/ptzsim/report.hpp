#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptzsim/metrics.hpp"

namespace ptzsim {

/// One row of a per-run result CSV:
/// `tracker,sequence,TPE,TPO,BOR,TF,PR,Score,processed,total` (-1 marks invalid).
struct RunRow {
  std::string tracker;
  std::string sequence;
  SequenceResult result;
};

inline constexpr const char* kRunCsvHeader = "tracker,sequence,TPE,TPO,BOR,TF,PR,Score,processed,total";
inline constexpr const char* kScatterCsvHeader = "tracker,BOR,TF";
inline constexpr const char* kAggregateCsvHeader =
    "tracker,sequences,TPE,TPO,BOR,TF,PR,Score,BOR_frame_weighted,TF_frame_weighted,Score_frame_weighted";

void write_run_csv(std::ostream& out, std::span<const RunRow> rows);
/// Parses a per-run CSV. Throws DataError on a bad header or row.
std::vector<RunRow> read_run_csv(std::istream& in, const std::string& source_name);

/// Per-frame trace: frame, time, aim, TPE/BOR/TPO/TF and both boxes.
void write_frame_csv(std::ostream& out, std::span<const FrameRecord> records);

/// Dataset-level summary of one tracker. The main columns are unweighted
/// means over sequences; the *_frame_weighted ones weight each sequence by its
/// valid (BOR) or processed (TF) frame count.
struct TrackerSummary {
  std::string tracker;
  int sequences = 0;
  SequenceResult mean;  // tpe/tpo/bor/tf/pr/score over sequences
  std::optional<double> bor_frame_weighted;
  double tf_frame_weighted = 0.0;
  double score_frame_weighted = 0.0;
};

/// Groups rows by tracker and returns summaries ranked by sequence-mean score.
std::vector<TrackerSummary> summarize(std::span<const RunRow> rows);

void write_aggregate_csv(std::ostream& out, std::span<const TrackerSummary> summaries);
void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points);
/// Human-readable ranked table: Tracker, Score, BOR, TF, PR.
void print_table(std::ostream& out, std::span<const TrackerSummary> summaries);

std::string format_metric(std::optional<double> v);

}  // namespace ptzsim
