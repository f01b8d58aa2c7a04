// Copyright 2026 The PauseProbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pauseprobe/analysis.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pauseprobe/errors.h"
#include "text_format.h"

namespace pauseprobe {

namespace {

// Throws on mixed levels; nullopt for no traces.
std::optional<Level> SharedLevel(const std::vector<AttackTrace>& traces) {
  std::optional<Level> level;
  for (const AttackTrace& trace : traces) {
    if (!level.has_value()) {
      level = trace.level;
    } else if (*level != trace.level) {
      throw DataError("traces mix level schemes " +
                      std::to_string(LevelNumber(*level)) + " and " +
                      std::to_string(LevelNumber(trace.level)));
    }
  }
  return level;
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  return in;
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  return out;
}

int ParseIntField(const std::string& field, const std::string& path) {
  try {
    return std::stoi(field);
  } catch (const std::exception&) {
    throw DataError(path + ": expected integer, got '" + field + "'");
  }
}

}  // namespace

void ValidateContextQuery(const ContextQuery& q) {
  if (q.r != 1 && q.r != 2) throw ConfigError("context range r must be 1 or 2");
  if (q.cumulative_step < 1) throw ConfigError("cumulative step must be >= 1");
  if (q.top_k < 1) throw ConfigError("top_k must be >= 1");
}

std::vector<std::pair<std::string, int>> ContextFrequency(
    const std::vector<AttackTrace>& traces, const ContextQuery& q) {
  ValidateContextQuery(q);
  SharedLevel(traces);

  std::map<std::string, int> counts;
  for (const AttackTrace& trace : traces) {
    for (const StepRecord& record : trace.steps) {
      if (record.step > q.cumulative_step) continue;
      const std::string& window =
          q.r == 1 ? record.context_r1 : record.context_r2;
      counts[window] += 1;
    }
  }

  std::vector<std::pair<std::string, int>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (ranked.size() > static_cast<size_t>(q.top_k)) {
    ranked.resize(static_cast<size_t>(q.top_k));
  }
  return ranked;
}

std::string ActionSignature(ActionKind kind, std::optional<PauseMark> prev,
                            std::optional<PauseMark> mark) {
  switch (kind) {
    case ActionKind::kAdd:
      if (!mark) throw std::invalid_argument("add signature requires a mark");
      return std::string("Add ") + MarkToken(*mark);
    case ActionKind::kDelete:
      if (!prev) {
        throw std::invalid_argument("delete signature requires the old mark");
      }
      return std::string("Delete ") + MarkToken(*prev);
    case ActionKind::kReplace:
      if (!prev || !mark || *prev == *mark) {
        throw std::invalid_argument(
            "replace signature requires two distinct marks");
      }
      return std::string("Replace ") + MarkToken(*prev) + "->" +
             MarkToken(*mark);
  }
  throw std::invalid_argument("unknown action kind");
}

std::vector<std::string> SignaturesForLevel(Level level) {
  const std::vector<PauseMark>& admitted = AdmittedMarks(level);
  std::vector<std::string> rows;
  // Group 1 first (adds, then short->long replaces), then Group 2
  // (deletes, then long->short replaces), marks ascending within each.
  for (PauseMark m : admitted) {
    rows.push_back(ActionSignature(ActionKind::kAdd, std::nullopt, m));
  }
  for (PauseMark from : admitted) {
    for (PauseMark to : admitted) {
      if (MarkRank(to) > MarkRank(from)) {
        rows.push_back(ActionSignature(ActionKind::kReplace, from, to));
      }
    }
  }
  for (PauseMark m : admitted) {
    rows.push_back(ActionSignature(ActionKind::kDelete, m, std::nullopt));
  }
  for (PauseMark from : admitted) {
    for (PauseMark to : admitted) {
      if (MarkRank(to) < MarkRank(from)) {
        rows.push_back(ActionSignature(ActionKind::kReplace, from, to));
      }
    }
  }
  return rows;
}

Direction ClassifyDirection(ActionKind kind, std::optional<PauseMark> prev,
                            std::optional<PauseMark> mark) {
  switch (kind) {
    case ActionKind::kAdd:
      return Direction::kTowardAD;
    case ActionKind::kDelete:
      return Direction::kTowardNonAD;
    case ActionKind::kReplace:
      if (!prev || !mark || *prev == *mark) {
        throw std::invalid_argument(
            "replace direction requires two distinct marks");
      }
      return MarkRank(*mark) > MarkRank(*prev) ? Direction::kTowardAD
                                               : Direction::kTowardNonAD;
  }
  return Direction::kNeutral;
}

const LengthCell& LengthTable::At(const std::string& action, int step) const {
  for (size_t row = 0; row < actions.size(); ++row) {
    if (actions[row] != action) continue;
    for (size_t col = 0; col < steps.size(); ++col) {
      if (steps[col] == step) return cells[row][col];
    }
  }
  throw std::out_of_range("no cell for action '" + action + "' at step " +
                          std::to_string(step));
}

LengthTable LengthFrequency(const std::vector<AttackTrace>& traces,
                            const std::vector<int>& steps) {
  if (steps.empty()) throw ConfigError("length table needs step bounds");
  LengthTable table;
  table.steps = steps;

  std::optional<Level> level = SharedLevel(traces);
  if (!level.has_value()) return table;  // no traces, headers only
  table.level = *level;
  table.actions = SignaturesForLevel(*level);
  table.cells.assign(table.actions.size(),
                     std::vector<LengthCell>(steps.size()));

  std::map<std::string, size_t> row_index;
  for (size_t i = 0; i < table.actions.size(); ++i) {
    row_index[table.actions[i]] = i;
  }

  for (const AttackTrace& trace : traces) {
    for (const StepRecord& record : trace.steps) {
      const std::string signature = ActionSignature(
          record.action.kind, record.prev_mark, record.action.mark);
      auto it = row_index.find(signature);
      if (it == row_index.end()) {
        throw DataError("action '" + signature + "' not admitted by level " +
                        std::to_string(LevelNumber(*level)));
      }
      for (size_t col = 0; col < steps.size(); ++col) {
        if (record.step > steps[col]) continue;
        LengthCell& cell = table.cells[it->second][col];
        if (trace.label == Label::kAD) {
          cell.a_to_n += 1;
        } else {
          cell.n_to_a += 1;
        }
      }
    }
  }
  return table;
}

std::vector<ContextTableEntry> BuildContextTable(
    const std::vector<AttackTrace>& traces, const std::vector<int>& ranges,
    const std::vector<int>& steps, int top_k) {
  std::optional<Level> level = SharedLevel(traces);
  std::vector<ContextTableEntry> entries;
  for (int r : ranges) {
    for (int s : steps) {
      ContextQuery q{r, s, top_k};
      std::vector<std::pair<std::string, int>> ranked =
          ContextFrequency(traces, q);
      for (size_t i = 0; i < ranked.size(); ++i) {
        ContextTableEntry entry;
        entry.level = level.value_or(Level::kLevel3);
        entry.r = r;
        entry.s = s;
        entry.rank = static_cast<int>(i) + 1;
        entry.window = ranked[i].first;
        entry.count = ranked[i].second;
        entries.push_back(std::move(entry));
      }
    }
  }
  return entries;
}

void WriteContextTableCsv(const std::vector<ContextTableEntry>& entries,
                          const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << "level,r,s,rank,window,count\n";
  for (const ContextTableEntry& e : entries) {
    out << LevelNumber(e.level) << ',' << e.r << ',' << e.s << ',' << e.rank
        << ',' << EscapeCsvField(e.window) << ',' << e.count << '\n';
  }
}

std::vector<ContextTableEntry> ReadContextTableCsv(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  std::vector<ContextTableEntry> entries;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != 6) {
      throw DataError(path + ": expected 6 fields, got " +
                      std::to_string(fields.size()));
    }
    ContextTableEntry e;
    e.level = LevelFromNumber(ParseIntField(fields[0], path));
    e.r = ParseIntField(fields[1], path);
    e.s = ParseIntField(fields[2], path);
    e.rank = ParseIntField(fields[3], path);
    e.window = fields[4];
    e.count = ParseIntField(fields[5], path);
    entries.push_back(std::move(e));
  }
  return entries;
}

void WriteLengthTableCsv(const LengthTable& table, const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << "level,action,step,a_to_n,n_to_a\n";
  for (size_t row = 0; row < table.actions.size(); ++row) {
    for (size_t col = 0; col < table.steps.size(); ++col) {
      const LengthCell& cell = table.cells[row][col];
      out << LevelNumber(table.level) << ','
          << EscapeCsvField(table.actions[row]) << ',' << table.steps[col]
          << ',' << cell.a_to_n << ',' << cell.n_to_a << '\n';
    }
  }
}

LengthTable ReadLengthTableCsv(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  LengthTable table;
  std::map<std::string, size_t> row_index;
  std::map<int, size_t> col_index;
  std::string line;
  bool header = true;
  struct RawCell {
    std::string action;
    int step;
    LengthCell cell;
  };
  std::vector<RawCell> raw;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != 5) {
      throw DataError(path + ": expected 5 fields, got " +
                      std::to_string(fields.size()));
    }
    table.level = LevelFromNumber(ParseIntField(fields[0], path));
    RawCell rc;
    rc.action = fields[1];
    rc.step = ParseIntField(fields[2], path);
    rc.cell.a_to_n = ParseIntField(fields[3], path);
    rc.cell.n_to_a = ParseIntField(fields[4], path);
    if (!row_index.count(rc.action)) {
      row_index[rc.action] = table.actions.size();
      table.actions.push_back(rc.action);
    }
    if (!col_index.count(rc.step)) {
      col_index[rc.step] = table.steps.size();
      table.steps.push_back(rc.step);
    }
    raw.push_back(std::move(rc));
  }
  table.cells.assign(table.actions.size(),
                     std::vector<LengthCell>(table.steps.size()));
  for (const RawCell& rc : raw) {
    table.cells[row_index[rc.action]][col_index[rc.step]] = rc.cell;
  }
  return table;
}

namespace {

const char* kCurveColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                              "#9467bd", "#ff7f0e", "#8c564b"};

std::string Coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void WriteAccuracySvg(const std::map<std::string, AccuracyCurve>& curves,
                      const std::string& path) {
  const double width = 640.0;
  const double height = 400.0;
  const double left = 60.0;
  const double right = 615.0;
  const double top = 25.0;
  const double bottom = 355.0;

  int max_step = 1;
  for (const auto& [variant, curve] : curves) {
    for (int step : curve.steps) max_step = std::max(max_step, step);
  }
  auto x_of = [&](int step) {
    return left + (right - left) * static_cast<double>(step) /
                      static_cast<double>(max_step);
  };
  auto y_of = [&](double accuracy) {
    return bottom - (bottom - top) * accuracy;
  };

  std::ofstream out = OpenForWrite(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "  <rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  // Axes.
  out << "  <line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 10; i += 2) {
    double accuracy = static_cast<double>(i) / 10.0;
    out << "  <text x=\"" << left - 8 << "\" y=\"" << Coord(y_of(accuracy) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << Coord(accuracy)
        << "</text>\n";
    out << "  <line x1=\"" << left - 4 << "\" y1=\"" << Coord(y_of(accuracy))
        << "\" x2=\"" << left << "\" y2=\"" << Coord(y_of(accuracy))
        << "\" stroke=\"black\"/>\n";
  }
  out << "  <text x=\"" << (left + right) / 2.0 << "\" y=\"" << height - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">step</text>\n";
  out << "  <text x=\"15\" y=\"" << (top + bottom) / 2.0
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << (top + bottom) / 2.0 << ")\">accuracy</text>\n";

  int color = 0;
  double legend_y = top + 10.0;
  for (const auto& [variant, curve] : curves) {
    const char* stroke = kCurveColors[color % 6];
    out << "  <polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (int step : curve.steps) {
      if (!first) out << ' ';
      first = false;
      out << Coord(x_of(step)) << ',' << Coord(y_of(curve.mean.at(step)));
      // X-axis tick per evaluated step (written once, for the first curve).
    }
    out << "\"/>\n";
    if (color == 0) {
      for (int step : curve.steps) {
        out << "  <line x1=\"" << Coord(x_of(step)) << "\" y1=\"" << bottom
            << "\" x2=\"" << Coord(x_of(step)) << "\" y2=\"" << bottom + 4
            << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << Coord(x_of(step)) << "\" y=\"" << bottom + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << step
            << "</text>\n";
      }
    }
    out << "  <rect x=\"" << right - 130 << "\" y=\"" << Coord(legend_y - 9)
        << "\" width=\"12\" height=\"4\" fill=\"" << stroke << "\"/>\n";
    out << "  <text x=\"" << right - 112 << "\" y=\"" << Coord(legend_y)
        << "\" font-size=\"12\">" << variant << "</text>\n";
    legend_y += 16.0;
    ++color;
  }
  out << "</svg>\n";
}

void WriteSummaryMarkdown(const std::map<std::string, AccuracyCurve>& curves,
                          const std::vector<ContextTableEntry>& context,
                          const LengthTable& length_table,
                          const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << "# Attack report\n";

  if (!curves.empty()) {
    out << "\n## Accuracy under attack (mean over rounds)\n\n";
    const AccuracyCurve& first = curves.begin()->second;
    out << "| variant |";
    for (int step : first.steps) {
      out << (step == 0 ? " clean |" : " step " + std::to_string(step) + " |");
    }
    out << "\n|---|";
    for (size_t i = 0; i < first.steps.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& [variant, curve] : curves) {
      out << "| " << variant << " |";
      for (int step : curve.steps) {
        out << ' ' << FormatDouble(curve.mean.at(step)) << " |";
      }
      out << "\n";
    }
  }

  if (!context.empty()) {
    // Table-1 layout: one column per (r, s) cell, one row per rank.
    std::vector<std::pair<int, int>> cells;
    int top_k = 0;
    std::map<std::pair<int, int>, std::map<int, const ContextTableEntry*>> grid;
    for (const ContextTableEntry& e : context) {
      auto key = std::make_pair(e.r, e.s);
      if (!grid.count(key)) cells.push_back(key);
      grid[key][e.rank] = &e;
      top_k = std::max(top_k, e.rank);
    }
    out << "\n## Pause context frequency (level "
        << LevelNumber(context.front().level) << ")\n\n";
    out << "| rank |";
    for (const auto& [r, s] : cells) {
      out << " r=" << r << ", s=" << s << " |";
    }
    out << "\n|---|";
    for (size_t i = 0; i < cells.size(); ++i) out << "---|";
    out << "\n";
    for (int rank = 1; rank <= top_k; ++rank) {
      out << "| " << rank << " |";
      for (const auto& key : cells) {
        auto it = grid[key].find(rank);
        if (it == grid[key].end()) {
          out << "  |";
        } else {
          out << ' ' << it->second->window << " (" << it->second->count
              << ") |";
        }
      }
      out << "\n";
    }
  }

  if (!length_table.actions.empty()) {
    out << "\n## Pause length analysis (level "
        << LevelNumber(length_table.level) << ")\n\n";
    out << "| perturbation |";
    for (int step : length_table.steps) {
      out << " step-" << step << " A->N | step-" << step << " N->A |";
    }
    out << "\n|---|";
    for (size_t i = 0; i < length_table.steps.size(); ++i) out << "---|---|";
    out << "\n";
    for (size_t row = 0; row < length_table.actions.size(); ++row) {
      out << "| " << length_table.actions[row] << " |";
      for (size_t col = 0; col < length_table.steps.size(); ++col) {
        const LengthCell& cell = length_table.cells[row][col];
        out << ' ' << cell.a_to_n << " | " << cell.n_to_a << " |";
      }
      out << "\n";
    }
  }
}

}  // namespace pauseprobe
