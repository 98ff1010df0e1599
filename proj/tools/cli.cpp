#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "matring/acceptance.hpp"
#include "matring/cayley.hpp"
#include "matring/decomp.hpp"
#include "matring/error.hpp"
#include "matring/normal_form.hpp"
#include "matring/report.hpp"
#include "matring/spectra.hpp"
#include "matring/sumprod.hpp"

namespace matring::cli {
namespace {

using report::Json;

struct RawArgs {
  std::optional<std::string> q, p, k, poly, n, alpha, seed;
  std::string connection = "gl";
  std::string mode = "units";
  std::string format = "json";
  std::optional<std::string> matrix, x, y, a, b, c, d;
};

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"counts", "group orders and the invertible density"},
    {"spectrum", "Cayley graph spectrum by equivalence classes"},
    {"srg", "brute-force strongly regular check"},
    {"kloosterman", "Kloosterman sums K(delta)"},
    {"normal-form", "determinant-1 normal form with witnesses"},
    {"decompose", "sum of two units or two determinant-1 matrices"},
    {"diameter", "BFS connectivity and diameter"},
    {"gap-check", "determinant-alpha witness between two subsets"},
    {"sumprod", "product-difference set (A-B)(C-D)"},
    {"verify", "run the acceptance suite"},
};

void add_options(CLI::App& sub, RawArgs& raw) {
  sub.add_option("--q", raw.q, "field order (prime power)");
  sub.add_option("--p", raw.p, "characteristic");
  sub.add_option("--k", raw.k, "extension degree");
  sub.add_option("--poly", raw.poly, "irreducible polynomial c0,...,ck");
  sub.add_option("--n", raw.n, "matrix size");
  sub.add_option("--connection", raw.connection, "gl | sl | det:<alpha>");
  sub.add_option("--matrix", raw.matrix, "matrix literal n;q;e0,e1,...");
  sub.add_option("--mode", raw.mode, "units | sl");
  sub.add_option("--format", raw.format, "json | csv | text");
  sub.add_option("--seed", raw.seed, "random seed");
  sub.add_option("--alpha", raw.alpha, "nonzero field element code");
  sub.add_option("--X", raw.x, "subset file");
  sub.add_option("--Y", raw.y, "subset file");
  sub.add_option("--A", raw.a, "subset file");
  sub.add_option("--B", raw.b, "subset file");
  sub.add_option("--C", raw.c, "subset file");
  sub.add_option("--D", raw.d, "subset file");
}

long long parse_int(const std::string& text, const char* flag, UsageKind kind) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(kind, std::string(flag) + " expects an integer, got '" + text + "'");
  }
  return v;
}

std::vector<int> parse_poly(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(static_cast<int>(parse_int(token, "--poly", UsageKind::InvalidField)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Field build_field(const RawArgs& raw) {
  try {
    if (raw.p) {
      const int p = static_cast<int>(parse_int(*raw.p, "--p", UsageKind::InvalidField));
      const int k = raw.k ? static_cast<int>(parse_int(*raw.k, "--k", UsageKind::InvalidField)) : 1;
      std::optional<std::vector<int>> poly;
      if (raw.poly) poly = parse_poly(*raw.poly);
      Field f = make_field(p, k, poly);
      if (raw.q && parse_int(*raw.q, "--q", UsageKind::InvalidField) != f->q()) {
        throw UsageError(UsageKind::InvalidField, "--q disagrees with --p/--k");
      }
      return f;
    }
    if (raw.q) {
      const auto q = parse_int(*raw.q, "--q", UsageKind::InvalidField);
      if (q < 2 || q > FieldSpec::kMaxOrder) {
        throw UsageError(UsageKind::InvalidField, "--q " + *raw.q + " is not a supported field order");
      }
      if (!prime_power(q)) throw UsageError(UsageKind::InvalidField, *raw.q + " is not a prime power");
      if (raw.poly) {
        const auto [p, k] = *prime_power(q);
        return make_field(p, k, parse_poly(*raw.poly));
      }
      return make_field_for_order(static_cast<int>(q));
    }
  } catch (const Error& e) {
    throw UsageError(UsageKind::InvalidField, e.what());
  }
  if (raw.k || raw.poly) throw UsageError(UsageKind::MissingArgument, "--k/--poly need --p or --q");
  return nullptr;
}

bool valid_connection(const std::string& c) {
  if (c == "gl" || c == "sl") return true;
  if (c.rfind("det:", 0) != 0 || c.size() == 4) return false;
  return std::all_of(c.begin() + 4, c.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

const Field& need_field(const RunConfig& c) {
  if (!c.field) throw UsageError(UsageKind::MissingArgument, c.subcommand + " needs --q or --p");
  return c.field;
}

template <class T>
const T& need(const std::optional<T>& v, const std::string& flag, const RunConfig& c) {
  if (!v) throw UsageError(UsageKind::MissingArgument, c.subcommand + " needs " + flag);
  return *v;
}

Connection connection_of(const RunConfig& c, const FieldSpec& f) {
  if (c.connection == "gl") return Connection::invertible();
  if (c.connection == "sl") return Connection::det_equals(f.one());
  return Connection::det_equals(f.elem(std::stoi(c.connection.substr(4))));
}

void emit(std::ostream& out, const Json& j, Format format) {
  out << (format == Format::Text ? j.dump(2) : j.dump()) << "\n";
}

SubsetOfField field_subset(const Field& f, const std::string& path) {
  const auto codes = read_code_file(path);
  std::vector<int> ints;
  for (auto c : codes) {
    if (c >= static_cast<std::uint64_t>(f->q())) {
      throw Error(ErrorCode::FieldMismatch, path + ": code " + std::to_string(c) + " outside F_" +
                                                std::to_string(f->q()));
    }
    ints.push_back(static_cast<int>(c));
  }
  return {f, std::move(ints)};
}

int cmd_counts(const RunConfig& c, std::ostream& out) {
  const Field& f = need_field(c);
  emit(out, report::counts_json(c.n.value_or(2), f->q()), c.format);
  return kExitOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const Field& f = need_field(c);
  const CayleyGraphSpec g(f, c.n.value_or(2), connection_of(c, *f));
  const auto r = spectrum_by_classes(g);
  if (c.format == Format::Csv) {
    out << report::spectrum_csv(r);
  } else {
    emit(out, report::spectrum_json(r), c.format);
  }
  return kExitOk;
}

int cmd_srg(const RunConfig& c, std::ostream& out) {
  const Field& f = need_field(c);
  const CayleyGraphSpec g(f, c.n.value_or(2), connection_of(c, *f));
  emit(out, report::srg_json(g, srg_check_bruteforce(g)), c.format);
  return kExitOk;
}

int cmd_kloosterman(const RunConfig& c, std::ostream& out) {
  const Field& f = need_field(c);
  if (c.format == Format::Csv) {
    out << report::kloosterman_csv(f);
  } else {
    emit(out, report::kloosterman_json(f), c.format);
  }
  return kExitOk;
}

Matrix input_matrix(const RunConfig& c) {
  const Field& f = need_field(c);
  Matrix m = parse_matrix_literal(need(c.matrix, "--matrix", c), f);
  if (c.n && *c.n != m.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "--n " + std::to_string(*c.n) + " but the literal is " + std::to_string(m.n()) + " x " +
                    std::to_string(m.n()));
  }
  return m;
}

int cmd_normal_form(const RunConfig& c, std::ostream& out) {
  const Matrix a = input_matrix(c);
  emit(out, report::normal_form_json(a, sl_normal_form(a)), c.format);
  return kExitOk;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
  const Matrix a = input_matrix(c);
  const auto w = c.mode == "units" ? sum_of_two_units(a) : sum_of_two_sl(a);
  emit(out, report::decomposition_json(w), c.format);
  return kExitOk;
}

int cmd_diameter(const RunConfig& c, std::ostream& out) {
  const Field& f = need_field(c);
  const CayleyGraphSpec g(f, c.n.value_or(2), connection_of(c, *f));
  emit(out, report::reachability_json(g, bfs_diameter(g)), c.format);
  return kExitOk;
}

int cmd_gap_check(const RunConfig& c, std::ostream& out) {
  const Field& f = need_field(c);
  const FieldElem alpha = f->elem(c.alpha.value_or(1));
  std::optional<SubsetOfRing> x, y;
  Json extra;
  if (c.x_path || c.y_path) {
    x.emplace(f, 2, read_code_file(need(c.x_path, "--X", c)));
    y.emplace(f, 2, read_code_file(need(c.y_path, "--Y", c)));
  } else {
    // Random subsets just above the exact threshold.
    const auto size = static_cast<std::size_t>(std::floor(gap_threshold(f).exact)) + 1;
    std::mt19937_64 rng(c.seed);
    x.emplace(random_ring_subset(f, 2, size, rng));
    y.emplace(random_ring_subset(f, 2, size, rng));
    extra["seed"] = c.seed;
  }
  Json j = report::gap_check_json(f, alpha, *x, *y, det_difference_witness(*x, *y, alpha));
  if (!extra.empty()) j["seed"] = extra["seed"];
  emit(out, j, c.format);
  return kExitOk;
}

int cmd_sumprod(const RunConfig& c, std::ostream& out) {
  const Field& f = need_field(c);
  const SubsetOfField a = field_subset(f, need(c.a_path, "--A", c));
  const SubsetOfField b = c.b_path ? field_subset(f, *c.b_path) : a;
  const SubsetOfField cc = c.c_path ? field_subset(f, *c.c_path) : a;
  const SubsetOfField d = c.d_path ? field_subset(f, *c.d_path) : a;
  emit(out, report::sumprod_json(sumprod_cover(a, b, cc, d), {&a, &b, &cc, &d}), c.format);
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  acceptance::Scope scope;
  scope.n = c.n;
  if (c.field) scope.q = c.field->q();
  bool failed = false;
  acceptance::run_all(scope, [&](const acceptance::CriterionResult& r) {
    failed = failed || (!r.skipped && !r.passed);
    if (c.format == Format::Text) {
      out << acceptance::format_line(r) << "\n";
    } else {
      Json j;
      j["criterion"] = r.id;
      j["name"] = r.name;
      j["status"] = r.skipped ? "skip" : (r.passed ? "pass" : "fail");
      j["detail"] = r.detail;
      out << j.dump() << "\n";
    }
    out.flush();
  });
  return failed ? kExitFailure : kExitOk;
}

}  // namespace

std::string_view to_string(UsageKind kind) {
  switch (kind) {
    case UsageKind::UnknownFlag: return "UnknownFlag";
    case UsageKind::MissingArgument: return "MissingArgument";
    case UsageKind::InvalidField: return "InvalidField";
    case UsageKind::InvalidValue: return "InvalidValue";
  }
  return "Unknown";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Cayley graphs and unit decompositions over Mat_n(F_q)", "matring"};
  app.require_subcommand(1);
  RawArgs raw;
  for (const auto& [name, help] : kSubcommands) add_options(*app.add_subcommand(name, help), raw);

  if (!args.empty() && !args.front().starts_with("-") && !app.get_subcommand_no_throw(args.front())) {
    throw UsageError(UsageKind::UnknownFlag, "unknown subcommand '" + args.front() + "'");
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    RunConfig c;
    c.subcommand = "help";
    c.help_text = app.help();
    return c;
  } catch (const CLI::ExtrasError& e) {
    throw UsageError(UsageKind::UnknownFlag, e.what());
  } catch (const CLI::ParseError& e) {
    const std::string what = e.what();
    if (what.find("not expected") != std::string::npos || what.find("not found") != std::string::npos) {
      throw UsageError(UsageKind::UnknownFlag, what);
    }
    throw UsageError(UsageKind::MissingArgument, what);
  }

  RunConfig c;
  for (const auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  c.field = build_field(raw);
  if (c.field) c.q = c.field->q();
  if (raw.n) {
    const auto n = parse_int(*raw.n, "--n", UsageKind::InvalidValue);
    if (n < 1 || n > 64) throw UsageError(UsageKind::InvalidValue, "--n must be in [1, 64]");
    c.n = static_cast<int>(n);
  }
  if (!valid_connection(raw.connection)) {
    throw UsageError(UsageKind::InvalidValue, "--connection expects gl, sl or det:<alpha>");
  }
  c.connection = raw.connection;
  if (raw.mode != "units" && raw.mode != "sl") throw UsageError(UsageKind::InvalidValue, "--mode expects units or sl");
  c.mode = raw.mode;
  if (raw.format == "json") {
    c.format = Format::Json;
  } else if (raw.format == "csv") {
    c.format = Format::Csv;
  } else if (raw.format == "text") {
    c.format = Format::Text;
  } else {
    throw UsageError(UsageKind::InvalidValue, "--format expects json, csv or text");
  }
  if (raw.alpha) c.alpha = static_cast<int>(parse_int(*raw.alpha, "--alpha", UsageKind::InvalidValue));
  if (raw.seed) c.seed = static_cast<std::uint64_t>(parse_int(*raw.seed, "--seed", UsageKind::InvalidValue));
  c.matrix = raw.matrix;
  c.x_path = raw.x;
  c.y_path = raw.y;
  c.a_path = raw.a;
  c.b_path = raw.b;
  c.c_path = raw.c;
  c.d_path = raw.d;
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.subcommand == "help") {
      out << c.help_text;
      return kExitOk;
    }
    if (c.subcommand == "counts") return cmd_counts(c, out);
    if (c.subcommand == "spectrum") return cmd_spectrum(c, out);
    if (c.subcommand == "srg") return cmd_srg(c, out);
    if (c.subcommand == "kloosterman") return cmd_kloosterman(c, out);
    if (c.subcommand == "normal-form") return cmd_normal_form(c, out);
    if (c.subcommand == "decompose") return cmd_decompose(c, out);
    if (c.subcommand == "diameter") return cmd_diameter(c, out);
    if (c.subcommand == "gap-check") return cmd_gap_check(c, out);
    if (c.subcommand == "sumprod") return cmd_sumprod(c, out);
    if (c.subcommand == "verify") return cmd_verify(c, out);
    throw UsageError(UsageKind::UnknownFlag, "unknown subcommand " + c.subcommand);
  } catch (const UsageError& e) {
    err << Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    out << report::error_json(e).dump() << "\n";
    return kExitFailure;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const UsageError& e) {
    err << Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace matring::cli
