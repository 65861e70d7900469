#pragma once

// Command-line front end: argument-independent core shared by the executable
// and the tests. Everything reads from and writes to streams so the same code
// path runs on files, pipes and in-memory buffers.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blendspline/blendspline.hpp"

namespace blendspline::cli {

enum class Mode { batch, stream };
enum class Emit { values, coeffs, bounds, convergence };

struct RunConfig {
  int order = 3;
  std::string in;    // empty or "-" reads the provided input stream
  std::string out;   // empty or "-" writes the provided output stream
  std::optional<int> eval_count;  // points per sample interval
  std::vector<double> eval_at;    // explicit abscissas (batch only)
  std::string derivs = "auto";    // "auto" or a path to `side,order,value` rows
  Mode mode = Mode::batch;
  Emit emit = Emit::values;
  int deriv_columns = 0;
};

enum ExitCode : int { ok = 0, numerical_failure = 1, io_failure = 2 };

struct Samples {
  SamplingGrid<double> grid;
  std::vector<double> values;
};

/// %.17g round-trips every double. Negative zero prints as 0.
inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline Error parse_failure(std::size_t line, const std::string& what) {
  return Error(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline double parse_real(std::string_view field, std::size_t line) {
  double v = 0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw parse_failure(line, "not a finite number: '" + std::string(field) + "'");
  }
  return v;
}

inline int parse_int(std::string_view field, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw parse_failure(line, "not an integer: '" + std::string(field) + "'");
  }
  return v;
}

/// Reads a header line and checks it; returns false on empty input.
inline bool expect_header(std::istream& in, std::string_view header, std::size_t& line) {
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    if (trim(text) != header) {
      throw parse_failure(line, "expected header '" + std::string(header) + "'");
    }
    return true;
  }
  return false;
}

/// Incremental `y,f` row reader shared by batch parsing and streaming.
class SampleReader {
 public:
  explicit SampleReader(std::istream& in) : in_(in) {
    if (!expect_header(in_, "y,f", line_)) throw Error(Errc::parse_error, "empty input: expected header 'y,f'");
  }

  /// Next (y, f, line); nullopt at end of input.
  std::optional<std::pair<std::pair<double, double>, std::size_t>> next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      if (trim(text).empty()) continue;
      const auto f = split(text, ',');
      if (f.size() != 2) throw parse_failure(line_, "expected 2 fields 'y,f', got " + std::to_string(f.size()));
      return std::pair{std::pair{parse_real(f[0], line_), parse_real(f[1], line_)}, line_};
    }
    if (in_.bad()) throw Error(Errc::io_error, "read failure");
    return std::nullopt;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace detail

/// CSV with header `y,f`. Rows may come in any order; they are sorted by y.
/// Duplicate abscissas are rejected naming both lines.
inline Samples parse_samples(std::istream& in) {
  detail::SampleReader reader(in);
  struct Row {
    double y, f;
    std::size_t line;
  };
  std::vector<Row> rows;
  while (auto r = reader.next()) rows.push_back({r->first.first, r->first.second, r->second});
  if (rows.size() < 2) throw Error(Errc::parse_error, "need at least 2 sample rows, got " + std::to_string(rows.size()));
  std::stable_sort(rows.begin(), rows.end(), [](const Row& p, const Row& q) { return p.y < q.y; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].y == rows[i - 1].y) {
      const auto [lo, hi] = std::minmax(rows[i - 1].line, rows[i].line);
      throw detail::parse_failure(hi, "duplicate abscissa y = " + format_real(rows[i].y) + " (first seen on line " +
                                          std::to_string(lo) + ")");
    }
  }
  std::vector<double> y, f;
  for (const auto& r : rows) {
    y.push_back(r.y);
    f.push_back(r.f);
  }
  return {SamplingGrid<double>(std::move(y)), std::move(f)};
}

inline Samples parse_samples(const std::string& text) {
  std::istringstream in(text);
  return parse_samples(in);
}

/// Endpoint derivatives from CSV rows `side,order,value` (side a or b,
/// order 1..m-1); every order must appear exactly once per side.
inline std::pair<std::vector<double>, std::vector<double>> parse_derivs(std::istream& in, int m) {
  std::size_t line = 0;
  if (!detail::expect_header(in, "side,order,value", line)) {
    throw Error(Errc::parse_error, "empty derivative file: expected header 'side,order,value'");
  }
  const double unset = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> da(static_cast<std::size_t>(m - 1), unset), db(da);
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    if (detail::trim(text).empty()) continue;
    const auto f = detail::split(text, ',');
    if (f.size() != 3) throw detail::parse_failure(line, "expected 3 fields 'side,order,value'");
    if (f[0] != "a" && f[0] != "b") throw detail::parse_failure(line, "side must be 'a' or 'b'");
    const int l = detail::parse_int(f[1], line);
    if (l < 1 || l > m - 1) {
      throw detail::parse_failure(line, "derivative order must be in 1.." + std::to_string(m - 1));
    }
    auto& slot = (f[0] == "a" ? da : db)[static_cast<std::size_t>(l - 1)];
    if (!std::isnan(slot)) throw detail::parse_failure(line, "derivative given twice");
    slot = detail::parse_real(f[2], line);
  }
  for (int l = 1; l < m; ++l) {
    if (std::isnan(da[l - 1]) || std::isnan(db[l - 1])) {
      throw Error(Errc::parse_error, "derivative file lacks order " + std::to_string(l) + " at one endpoint");
    }
  }
  return {std::move(da), std::move(db)};
}

namespace detail {

inline void write_row(std::ostream& out, const EvalRow<double>& r) {
  out << format_real(r.x);
  for (double v : r.values) out << ',' << format_real(v);
  out << '\n';
}

inline void write_values_header(std::ostream& out, int deriv_columns) {
  out << "x,value";
  for (int d = 1; d <= deriv_columns; ++d) out << ",d" << d;
  out << '\n';
}

inline HermiteData<double> make_data(const Samples& s, int m,
                                     const std::optional<std::pair<std::vector<double>, std::vector<double>>>& ex) {
  if (!ex) return hermite_data_auto(s.grid, s.values, m);
  return {s.values, ex->first, ex->second, Provenance::exact};
}

inline void emit_values(const RunConfig& cfg, const Samples& s, const HermiteData<double>& data, std::ostream& out) {
  const auto p = BlendOperator<double>(s.grid, cfg.order).apply(data);
  write_values_header(out, cfg.deriv_columns);
  const auto xs = cfg.eval_at.empty() ? per_interval_points<double>(s.grid.points(), cfg.eval_count.value_or(1))
                                      : cfg.eval_at;
  for (double x : xs) write_row(out, eval_row(p, x, cfg.deriv_columns));
}

inline void emit_coeffs(const RunConfig& cfg, const Samples& s, std::ostream& out) {
  const int m = cfg.order;
  const BlendOperator<double> op(s.grid, m);
  const int n = s.grid.N();
  out << "operator,i,j,value,case\n";
  for (const auto& w : op.quasi().all_coefficients()) {
    out << "Q," << w.molecule << ',' << w.j << ',' << format_real(w.value) << ',' << to_string(w.label) << '\n';
  }
  const auto& r = op.local();
  for (int i = -(m - 1); i <= 0; ++i)
    for (int k = 0; k < m; ++k) out << "R," << i << ',' << k << ',' << format_real(r.b(i, k)) << ",left-boundary\n";
  for (int i = 1; i <= n - 1; ++i) {
    out << "R," << i << ',' << r.interior_start(i) << ',' << format_real(1.0 / r.interior_norm(i)) << ",interior\n";
  }
  for (int i = n; i <= n + m - 1; ++i)
    for (int k = 0; k < m; ++k) out << "R," << i << ',' << k << ',' << format_real(r.b(i, k)) << ",right-boundary\n";
}

inline void emit_bounds(const RunConfig& cfg, const Samples& s, std::ostream& out) {
  const int m = cfg.order;
  const auto x = midpoint_knots(s.grid, m);
  const auto rk = refined_knots(s.grid, m);
  const auto st = mesh_stats(s.grid, x, rk, m);
  out << "# bound factors multiply the sup norm of the m-th derivative\n";
  out << "# A2, A3, B2 and C2 are closed as finite power sums of the estimates they bound\n";
  out << "quantity,value\n";
  const std::pair<const char*, double> rows[] = {
      {"gamma", st.gamma},   {"delta", st.delta},
      {"epsilon", st.epsilon}, {"rho", st.rho},
      {"lambda", st.lambda}, {"tau", st.tau},
      {"gamma_over_delta", st.gamma_over_delta()}, {"two_over_delta", st.two_over_delta()},
      {"coefficient_bound", molecule_bound(st, m)}, {"derivative_bound", molecule_derivative_bound(st, m)},
  };
  for (const auto& [k, v] : rows) out << k << ',' << format_real(v) << '\n';
  out << '\n' << "interval,region,x_lo,x_hi,factor\n";
  const int n = s.grid.N();
  for (int i = 0; i <= n; ++i) {
    const auto region = classify_region(i, n, m);
    out << i << ',' << to_char(region) << ',' << format_real(x[i]) << ',' << format_real(x[i + 1]) << ','
        << format_real(bound_factor(st, m, region)) << '\n';
  }
}

/// Interpolates every 2^k-th sample and measures the error at the samples
/// inside the coarse grid's interior region [x_2, x_{N-m+2}].
inline void emit_convergence(const RunConfig& cfg, const Samples& s,
                             const std::optional<std::pair<std::vector<double>, std::vector<double>>>& ex,
                             std::ostream& out) {
  const int m = cfg.order;
  const int n = s.grid.N();
  out << "N,interior_sup_error,order\n";
  std::vector<std::pair<int, double>> levels;
  for (int stride = 1; n % stride == 0 && n / stride >= 3 * m - 3; stride *= 2) {
    std::vector<double> y, f;
    for (int i = 0; i <= n; i += stride) {
      y.push_back(s.grid[i]);
      f.push_back(s.values[static_cast<std::size_t>(i)]);
    }
    const Samples coarse{SamplingGrid<double>(std::move(y)), std::move(f)};
    const BlendOperator<double> op(coarse.grid, m);
    const auto p = op.apply(make_data(coarse, m, ex));
    const auto& x = op.quasi().knots();
    const int nc = coarse.grid.N();
    double err = 0;
    for (int i = 0; i <= n; ++i) {
      if (s.grid[i] < x[2] || s.grid[i] > x[nc - m + 2]) continue;
      err = std::max(err, std::abs(p.eval(s.grid[i]) - s.values[static_cast<std::size_t>(i)]));
    }
    levels.emplace_back(n / stride, err);
  }
  if (levels.empty()) {
    throw Error(Errc::grid_too_small, "convergence study requires N >= 3m-3 (got N = " + std::to_string(n) + ")");
  }
  std::reverse(levels.begin(), levels.end());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    out << levels[k].first << ',' << format_real(levels[k].second) << ',';
    if (k > 0 && levels[k].second > 0 && levels[k - 1].second > 0) {
      out << format_real(std::log2(levels[k - 1].second / levels[k].second) /
                         std::log2(double(levels[k].first) / levels[k - 1].first));
    }
    out << '\n';
  }
}

inline int run_stream(const RunConfig& cfg, std::istream& in, std::ostream& out,
                      const std::optional<std::pair<std::vector<double>, std::vector<double>>>& ex) {
  StreamingInterpolator<double>::Options opt;
  opt.order = cfg.order;
  opt.per_interval = cfg.eval_count.value_or(1);
  opt.deriv_columns = cfg.deriv_columns;
  if (ex) {
    opt.derivs_a = ex->first;
    opt.derivs_b = ex->second;
  }
  StreamingInterpolator<double> si(std::move(opt));
  SampleReader reader(in);
  write_values_header(out, cfg.deriv_columns);
  std::optional<double> prev;
  while (auto r = reader.next()) {
    const auto [y, f] = r->first;
    if (prev && !(y > *prev)) {
      throw parse_failure(r->second, "stream input must be strictly increasing in y");
    }
    prev = y;
    const auto rows = si.push(y, f);
    for (const auto& row : rows) write_row(out, row);
    if (!rows.empty()) out.flush();
  }
  for (const auto& row : si.finish()) write_row(out, row);
  out.flush();
  return ok;
}

}  // namespace detail

/// Runs one CLI invocation; diagnostics go to `err`.
inline int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    require_order(cfg.order);
    if (cfg.eval_count && *cfg.eval_count < 1) throw Error(Errc::parse_error, "--eval-count must be >= 1");
    if (cfg.deriv_columns < 0 || cfg.deriv_columns > cfg.order - 1) {
      throw Error(Errc::parse_error, "--deriv-columns must be in 0.." + std::to_string(cfg.order - 1));
    }
    if (cfg.mode == Mode::stream && (cfg.emit != Emit::values || !cfg.eval_at.empty())) {
      throw Error(Errc::parse_error, "stream mode emits values on --eval-count points only");
    }

    std::ifstream fin;
    std::istream* src = &in;
    if (!cfg.in.empty() && cfg.in != "-") {
      fin.open(cfg.in);
      if (!fin) throw Error(Errc::io_error, "cannot open input '" + cfg.in + "'");
      src = &fin;
    }
    std::optional<std::pair<std::vector<double>, std::vector<double>>> ex;
    if (cfg.derivs != "auto") {
      std::ifstream df(cfg.derivs);
      if (!df) throw Error(Errc::io_error, "cannot open derivative file '" + cfg.derivs + "'");
      ex = parse_derivs(df, cfg.order);
    }
    std::ofstream fout;
    std::ostream* dst = &out;
    if (!cfg.out.empty() && cfg.out != "-") {
      fout.open(cfg.out);
      if (!fout) throw Error(Errc::io_error, "cannot open output '" + cfg.out + "'");
      dst = &fout;
    }

    if (cfg.mode == Mode::stream) {
      detail::run_stream(cfg, *src, *dst, ex);
    } else {
      const Samples s = parse_samples(*src);
      switch (cfg.emit) {
        case Emit::values: detail::emit_values(cfg, s, detail::make_data(s, cfg.order, ex), *dst); break;
        case Emit::coeffs: detail::emit_coeffs(cfg, s, *dst); break;
        case Emit::bounds: detail::emit_bounds(cfg, s, *dst); break;
        case Emit::convergence: detail::emit_convergence(cfg, s, ex, *dst); break;
      }
    }
    dst->flush();
    if (!*dst) throw Error(Errc::io_error, "write failure");
    return ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.numerical() ? numerical_failure : io_failure;
  }
}

}  // namespace blendspline::cli
