#include "ptzsim/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ptzsim/errors.hpp"

namespace ptzsim {
namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DataError(where + ": bad number '" + s + "'");
  }
  return v;
}

std::optional<double> parse_metric(const std::string& s, const std::string& where) {
  const double v = parse_double(s, where);
  if (v < 0.0) return std::nullopt;
  return v;
}

}  // namespace

std::string format_metric(std::optional<double> v) { return v ? fixed(*v) : std::string("-1"); }

void write_run_csv(std::ostream& out, std::span<const RunRow> rows) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.result;
    out << r.tracker << ',' << r.sequence << ',' << format_metric(s.tpe) << ',' << format_metric(s.tpo) << ','
        << format_metric(s.bor) << ',' << fixed(s.tf) << ',' << fixed(s.pr) << ',' << fixed(s.score) << ','
        << s.processed << ',' << s.total << '\n';
  }
}

std::vector<RunRow> read_run_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source_name + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunCsvHeader) throw DataError(source_name + ": unexpected header '" + line + "'");
  std::vector<RunRow> rows;
  for (int line_no = 2; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    const auto cells = split_csv(line);
    if (cells.size() != 10) throw DataError(where + ": expected 10 columns");
    RunRow r;
    r.tracker = cells[0];
    r.sequence = cells[1];
    if (r.tracker.empty()) throw DataError(where + ": empty tracker name");
    auto& s = r.result;
    s.tpe = parse_metric(cells[2], where);
    s.tpo = parse_metric(cells[3], where);
    s.bor = parse_metric(cells[4], where);
    s.tf = parse_double(cells[5], where);
    s.pr = parse_double(cells[6], where);
    s.score = parse_double(cells[7], where);
    s.processed = static_cast<int>(parse_double(cells[8], where));
    s.total = static_cast<int>(parse_double(cells[9], where));
    if (s.tf < 0.0 || s.tf > 1.0 || (s.bor && *s.bor > 1.0)) throw DataError(where + ": BOR/TF outside [0, 1]");
    s.valid = static_cast<int>(std::lround(s.processed * (1.0 - s.tf)));
    s.degenerate = !s.bor.has_value();
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_frame_csv(std::ostream& out, std::span<const FrameRecord> records) {
  out << "frame,time,aim_pan,aim_tilt,TPE,BOR,TPO,TF,gt_x,gt_y,gt_w,gt_h,pt_x,pt_y,pt_w,pt_h\n";
  auto box = [&](const std::optional<BoundingBox>& b) {
    if (!b) return std::string("-1,-1,-1,-1");
    return fixed(b->x, 3) + ',' + fixed(b->y, 3) + ',' + fixed(b->w, 3) + ',' + fixed(b->h, 3);
  };
  for (const auto& r : records) {
    out << r.frame_index << ',' << fixed(r.timestamp) << ',' << fixed(r.aim.pan()) << ',' << fixed(r.aim.tilt()) << ','
        << format_metric(r.tpe) << ',' << format_metric(r.bor) << ',' << format_metric(r.tpo) << ',' << r.tf << ','
        << box(r.gt_box) << ',' << box(r.pt_box) << '\n';
  }
}

std::vector<TrackerSummary> summarize(std::span<const RunRow> rows) {
  std::map<std::string, std::vector<const SequenceResult*>> by_tracker;
  for (const auto& r : rows) by_tracker[r.tracker].push_back(&r.result);

  std::vector<NamedResult> named;
  std::map<std::string, TrackerSummary> summaries;
  for (const auto& [name, results] : by_tracker) {
    TrackerSummary t;
    t.tracker = name;
    t.sequences = static_cast<int>(results.size());
    double tpe = 0, tpo = 0, bor = 0, tf = 0, pr = 0;
    int tpe_n = 0, tpo_n = 0, bor_n = 0;
    double bor_w = 0, tf_w = 0;
    int valid_frames = 0, processed_frames = 0;
    for (const SequenceResult* s : results) {
      if (s->tpe) tpe += *s->tpe, ++tpe_n;
      if (s->tpo) tpo += *s->tpo, ++tpo_n;
      if (s->bor) {
        bor += *s->bor, ++bor_n;
        bor_w += *s->bor * s->valid;
        valid_frames += s->valid;
      }
      tf += s->tf;
      pr += s->pr;
      tf_w += s->tf * s->processed;
      processed_frames += s->processed;
      t.mean.processed += s->processed;
      t.mean.total += s->total;
    }
    const double n = static_cast<double>(results.size());
    if (tpe_n) t.mean.tpe = tpe / tpe_n;
    if (tpo_n) t.mean.tpo = tpo / tpo_n;
    if (bor_n) t.mean.bor = bor / bor_n;
    t.mean.tf = tf / n;
    t.mean.pr = pr / n;
    t.mean.degenerate = !t.mean.bor;
    t.mean.score = score(t.mean.bor.value_or(0.0), t.mean.tf);
    if (valid_frames > 0) t.bor_frame_weighted = bor_w / valid_frames;
    t.tf_frame_weighted = processed_frames > 0 ? tf_w / processed_frames : 1.0;
    t.score_frame_weighted = score(t.bor_frame_weighted.value_or(0.0), t.tf_frame_weighted);
    named.push_back({name, t.mean});
    summaries.emplace(name, std::move(t));
  }
  std::vector<TrackerSummary> out;
  for (const auto& r : rank(std::move(named))) out.push_back(summaries.at(r.name));
  return out;
}

void write_aggregate_csv(std::ostream& out, std::span<const TrackerSummary> summaries) {
  out << kAggregateCsvHeader << '\n';
  for (const auto& t : summaries) {
    out << t.tracker << ',' << t.sequences << ',' << format_metric(t.mean.tpe) << ',' << format_metric(t.mean.tpo)
        << ',' << format_metric(t.mean.bor) << ',' << fixed(t.mean.tf) << ',' << fixed(t.mean.pr) << ','
        << fixed(t.mean.score) << ',' << format_metric(t.bor_frame_weighted) << ',' << fixed(t.tf_frame_weighted)
        << ',' << fixed(t.score_frame_weighted) << '\n';
  }
}

void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points) {
  out << kScatterCsvHeader << '\n';
  for (const auto& p : points) out << p.name << ',' << fixed(p.bor) << ',' << fixed(p.tf) << '\n';
}

void print_table(std::ostream& out, std::span<const TrackerSummary> summaries) {
  std::size_t width = 12;
  for (const auto& t : summaries) width = std::max(width, t.tracker.size() + 2);
  out << std::left << std::setw(static_cast<int>(width)) << "Tracker" << "Score  BOR    TF     PR\n";
  for (const auto& t : summaries) {
    out << std::left << std::setw(static_cast<int>(width)) << t.tracker << fixed(t.mean.score, 2) << "   "
        << (t.mean.bor ? fixed(*t.mean.bor, 2) : std::string("-1  ")) << "   " << fixed(t.mean.tf, 2) << "   "
        << fixed(t.mean.pr, 2) << (t.mean.degenerate ? "  (no valid frame)" : "") << '\n';
  }
}

}  // namespace ptzsim
