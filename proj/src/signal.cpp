#include "sastl/signal.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sastl {

void Signal::declare(const std::string &var) {
  if (var_ids_.count(var))
    return;
  var_ids_.emplace(var, var_names_.size());
  var_names_.push_back(var);
  streams_.emplace_back(graph_->size());
}

bool Signal::declared(const std::string &var) const {
  return var_ids_.count(var) != 0;
}

std::size_t Signal::var_index(const std::string &var) const {
  auto it = var_ids_.find(var);
  if (it == var_ids_.end())
    throw UnknownVariable(var);
  return it->second;
}

void Signal::set(const std::string &var, LocId l, double t, SampleValue v) {
  declare(var);
  if (l >= graph_->size())
    throw UnknownLocation("#" + std::to_string(l));
  auto &stream = streams_[var_index(var)][l];
  auto it = std::lower_bound(stream.begin(), stream.end(), t,
                             [](const Sample &s, double x) { return s.t < x; });
  if (it != stream.end() && it->t == t)
    throw std::invalid_argument("duplicate sample at t=" + std::to_string(t) +
                                " for (" + var + ", " + graph_->name(l) + ")");
  stream.insert(it, Sample{t, v});
}

SampleValue Signal::value_at(const std::string &var, double t, LocId l) const {
  const auto &stream = streams_[var_index(var)].at(l);
  auto it = std::lower_bound(stream.begin(), stream.end(), t,
                             [](const Sample &s, double x) { return s.t < x; });
  if (it != stream.end() && it->t == t)
    return it->v;
  return std::nullopt;
}

std::span<const Sample> Signal::samples(const std::string &var, LocId l) const {
  return streams_[var_index(var)].at(l);
}

std::vector<Sample> Signal::samples_in(const std::string &var, LocId l,
                                       double lo, double hi) const {
  const auto &stream = streams_[var_index(var)].at(l);
  auto b = std::lower_bound(stream.begin(), stream.end(), lo,
                            [](const Sample &s, double x) { return s.t < x; });
  auto e = std::upper_bound(b, stream.end(), hi,
                            [](double x, const Sample &s) { return x < s.t; });
  return {b, e};
}

std::vector<double> Signal::times_in(const std::vector<std::string> &vars,
                                     LocId l, double lo, double hi,
                                     bool open_lo, bool open_hi) const {
  const std::vector<std::string> &use = vars.empty() ? var_names_ : vars;
  std::vector<double> times;
  for (const auto &var : use)
    for (const auto &s : streams_[var_index(var)].at(l)) {
      if (s.t < lo || (open_lo && s.t == lo))
        continue;
      if (s.t > hi || (open_hi && s.t == hi))
        continue;
      times.push_back(s.t);
    }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

std::vector<double> alpha(const Signal &sig, const std::string &var,
                          const SpatialDomain &D, double t, LocId l,
                          const PoIGraph &g, const DistanceIndex &idx) {
  std::vector<double> values;
  for (LocId loc : locations_in_range(g, idx, l, D))
    if (auto v = sig.value_at(var, t, loc))
      values.push_back(*v);
  return values;
}

// ---------------------------------------------------------------------- CSV

namespace {

struct Row {
  double t;
  LocId loc;
  std::string var;
  SampleValue v;
  std::size_t line;
};

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void row_error(const std::string &path, std::size_t line,
                            const std::string &msg) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

Signal ingest_csv(const std::vector<std::string> &paths, const PoIGraph &g) {
  Signal sig(g);
  // (var, loc) -> rows, kept aside so duplicates can cite both line numbers
  std::map<std::pair<std::string, LocId>, std::vector<Row>> by_stream;
  for (const auto &path : paths) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open data file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      if (line.empty())
        continue;
      if (lineno == 1 && line == "time,location,variable,value")
        continue;
      auto fields = split_csv_line(line);
      if (fields.size() != 4)
        row_error(path, lineno, "expected 4 fields, got " +
                                    std::to_string(fields.size()));
      Row row;
      row.line = lineno;
      try {
        std::size_t pos = 0;
        row.t = std::stod(fields[0], &pos);
        if (pos != fields[0].size())
          throw std::invalid_argument(fields[0]);
      } catch (const std::exception &) {
        row_error(path, lineno, "bad time value '" + fields[0] + "'");
      }
      if (row.t < 0)
        row_error(path, lineno, "negative time " + fields[0]);
      if (!g.contains(fields[1]))
        row_error(path, lineno, "unknown location '" + fields[1] + "'");
      row.loc = g.id(fields[1]);
      if (fields[2].empty())
        row_error(path, lineno, "empty variable name");
      row.var = fields[2];
      if (fields[3].empty() || fields[3] == "NaN") {
        row.v = std::nullopt;
      } else {
        try {
          std::size_t pos = 0;
          row.v = std::stod(fields[3], &pos);
          if (pos != fields[3].size())
            throw std::invalid_argument(fields[3]);
        } catch (const std::exception &) {
          row_error(path, lineno, "bad value '" + fields[3] + "'");
        }
      }
      by_stream[{row.var, row.loc}].push_back(row);
    }
  }
  for (auto &[key, rows] : by_stream) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row &a, const Row &b) { return a.t < b.t; });
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].t == rows[i - 1].t)
        throw std::runtime_error(
            "duplicate sample for (" + key.first + ", " +
            g.name(key.second) + ") at t=" + std::to_string(rows[i].t) +
            " (lines " + std::to_string(rows[i - 1].line) + " and " +
            std::to_string(rows[i].line) + ")");
    for (const auto &row : rows)
      sig.set(row.var, row.loc, row.t, row.v);
  }
  return sig;
}

void export_csv(const Signal &sig, std::ostream &out) {
  out << "time,location,variable,value\n";
  char buf[64];
  const auto &g = sig.graph();
  for (const auto &var : sig.variables())
    for (LocId l = 0; l < g.size(); ++l)
      for (const auto &s : sig.samples(var, l)) {
        std::snprintf(buf, sizeof buf, "%.17g", s.t);
        out << buf << ',' << g.name(l) << ',' << var << ',';
        if (s.v) {
          std::snprintf(buf, sizeof buf, "%.17g", *s.v);
          out << buf;
        }
        out << '\n';
      }
}

} // namespace sastl
