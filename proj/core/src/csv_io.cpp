#include "anai/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "anai/errors.hpp"

namespace anai {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::string where(std::size_t row, std::string_view column) {
  return "row " + std::to_string(row) + " column '" + std::string(column) + "'";
}

double parse_double(std::string_view field, std::size_t row, std::string_view column) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ValidationError(where(row, column), "not a number: '" + std::string(field) + "'");
  }
  return v;
}

// Reads a header line and the data rows, checking the header and column
// counts. Blank lines are skipped.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::vector<std::string_view> header) : in_(in), header_(header) {
    std::string line;
    while (std::getline(in_, line)) {
      ++row_;
      if (trim(line).empty()) continue;
      const auto got = split(line);
      if (got != header_) {
        throw ValidationError("header", "expected '" + joined() + "', got '" +
                                            std::string(trim(line)) + "'");
      }
      return;
    }
    throw ValidationError("header", "missing header '" + joined() + "'");
  }

  // False at end of input.
  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, line_)) {
      ++row_;
      if (trim(line_).empty()) continue;
      fields = split(line_);
      if (fields.size() != header_.size()) {
        throw ValidationError("row " + std::to_string(row_),
                              "expected " + std::to_string(header_.size()) + " fields, got " +
                                  std::to_string(fields.size()));
      }
      return true;
    }
    return false;
  }

  std::size_t row() const noexcept { return row_; }

 private:
  std::string joined() const {
    std::string s;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) s += ',';
      s += header_[i];
    }
    return s;
  }

  std::istream& in_;
  std::vector<std::string_view> header_;
  std::string line_;
  std::size_t row_ = 0;
};

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,aix,icc,ttp,compute,energy\n";
  for (const auto& p : traj.points) {
    out << format_number(p.t) << ',' << format_number(p.aix) << ',' << format_number(p.icc) << ','
        << format_number(p.ttp) << ',';
    if (p.compute) out << format_number(*p.compute);
    out << ',';
    if (p.energy) out << format_number(*p.energy);
    out << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  CsvReader reader(in, {"t", "aix", "icc", "ttp", "compute", "energy"});
  Trajectory traj;
  std::vector<std::string_view> f;
  while (reader.next(f)) {
    const std::size_t row = reader.row();
    TrajectoryPoint p;
    p.t = parse_double(f[0], row, "t");
    p.aix = checked_score(parse_double(f[1], row, "aix"), where(row, "aix"));
    p.icc = checked_score(parse_double(f[2], row, "icc"), where(row, "icc"));
    p.ttp = checked_score(parse_double(f[3], row, "ttp"), where(row, "ttp"));
    if (!f[4].empty()) p.compute = parse_double(f[4], row, "compute");
    if (!f[5].empty()) p.energy = parse_double(f[5], row, "energy");
    if (!traj.points.empty() && !(p.t > traj.points.back().t)) {
      throw ValidationError(where(row, "t"), "times must be strictly increasing");
    }
    traj.points.push_back(p);
  }
  return traj;
}

void write_boundary_csv(std::ostream& out, const BoundaryCurve& curve) {
  out << "aix,icc\n";
  for (const auto& p : curve.points) out << format_number(p.aix) << ',' << format_number(p.icc) << '\n';
}

void write_grid_csv(std::ostream& out, const RegimeGrid& grid) {
  out << "aix,icc,regime\n";
  const std::size_t n = grid.resolution();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out << format_number(grid.center(i)) << ',' << format_number(grid.center(j)) << ','
          << to_string(grid.at(i, j)) << '\n';
    }
  }
}

void write_positioned_domains_csv(std::ostream& out, const std::vector<PositionedDomain>& domains) {
  out << "name,aix,icc,ttp,stage,above_boundary\n";
  for (const auto& d : domains) {
    out << d.name << ',' << format_number(d.aix) << ',' << format_number(d.icc) << ','
        << format_number(d.ttp) << ',' << to_string(d.stage) << ','
        << (d.above_boundary ? "true" : "false") << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepEntry>& entries) {
  out << "value,t_cross\n";
  for (const auto& e : entries) {
    out << format_number(e.value) << ',';
    if (const auto* failure = std::get_if<SweepFailure>(&e.outcome)) {
      out << "error:" << failure->kind;
    } else if (const auto t = e.t_cross()) {
      out << format_number(*t);
    }
    out << '\n';
  }
}

ObservedSeries read_series_csv(std::istream& in, std::string label) {
  CsvReader reader(in, {"t", "value"});
  std::vector<Sample> samples;
  std::vector<std::string_view> f;
  while (reader.next(f)) {
    samples.push_back({parse_double(f[0], reader.row(), "t"),
                       parse_double(f[1], reader.row(), "value")});
  }
  return ObservedSeries{std::move(samples), std::move(label)};
}

std::vector<DomainAssessment> read_domains_csv(std::istream& in) {
  CsvReader reader(in, {"name", "d", "e", "r", "m", "e_p", "d_p", "p_p"});
  std::vector<DomainAssessment> out;
  std::vector<std::string_view> f;
  while (reader.next(f)) {
    const std::size_t row = reader.row();
    if (f[0].empty()) throw ValidationError(where(row, "name"), "must be nonempty");
    auto score = [&](std::size_t col, std::string_view name) {
      return checked_score(parse_double(f[col], row, name), where(row, name));
    };
    DomainAssessment a;
    a.name = std::string(f[0]);
    a.autonomy = {score(1, "d"), score(2, "e"), score(3, "r"), score(4, "m")};
    a.infra = {score(5, "e_p"), score(6, "d_p"), score(7, "p_p")};
    out.push_back(std::move(a));
  }
  if (out.empty()) throw ValidationError("domains", "file has no rows");
  return out;
}

}  // namespace anai
