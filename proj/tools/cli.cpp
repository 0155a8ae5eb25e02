#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "sptorsion/bounds.hpp"
#include "sptorsion/criterion.hpp"
#include "sptorsion/errors.hpp"
#include "sptorsion/extremal.hpp"
#include "sptorsion/witness.hpp"

namespace sptorsion::cli {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { text, json, csv };

struct Common {
  std::string format = "text";
  unsigned jobs = 1;

  Format parsed() const {
    if (format == "json") return Format::json;
    if (format == "csv") return Format::csv;
    return Format::text;
  }
};

struct Span {
  long long from = 0;
  long long to = 0;
};

long long parse_count(const std::string& text, const char* what) {
  long long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return v;
}

// "a..b" inclusive, or a single value meaning a..a.
Span parse_span(const std::string& text, const char* what) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const long long v = parse_count(text, what);
    return {v, v};
  }
  const Span s{parse_count(text.substr(0, dots), what),
               parse_count(text.substr(dots + 2), what)};
  if (s.to < s.from) throw UsageError(std::string("empty ") + what + " range '" + text + "'");
  return s;
}

std::string span_text(Span s) {
  return std::to_string(s.from) + ".." + std::to_string(s.to);
}

BigInt parse_order(const std::string& text) {
  BigInt m;
  try {
    m = parse_decimal(text);
  } catch (const std::exception&) {
    throw UsageError("order must be a positive decimal integer, got '" + text + "'");
  }
  if (m < 1) throw UsageError("order must be a positive integer");
  return m;
}

void emit_envelope(std::ostream& out, const std::string& command, json parameters,
                   json result) {
  json doc = {{"command", command}, {"parameters", std::move(parameters)},
              {"result", std::move(result)}};
  out << doc.dump(2) << '\n';
}

std::string power_text(std::uint64_t p, unsigned a) {
  return a == 1 ? std::to_string(p) : std::to_string(p) + "^" + std::to_string(a);
}

std::string factorization_text(const numtheory::Factorization& f,
                               const char* separator = " * ") {
  std::string s;
  for (const auto& e : f.entries()) {
    if (!s.empty()) s += separator;
    s += power_text(e.prime, e.exponent);
  }
  return s.empty() ? "1" : s;
}

json factorization_json(const numtheory::Factorization& f) {
  json out = json::array();
  for (const auto& e : f.entries()) {
    out.push_back({{"prime", std::to_string(e.prime)},
                   {"exponent", std::to_string(e.exponent)}});
  }
  return out;
}

json certificate_json(const witness::Certificate& c) {
  json checks = json::array();
  for (const auto& p : c.proper_powers) {
    checks.push_back({{"prime", std::to_string(p.prime)},
                      {"exponent", p.exponent.str()},
                      {"pass", p.pass}});
  }
  json out = {{"symplectic", c.symplectic},
              {"annihilated", c.annihilated},
              {"proper_powers", checks},
              {"passed", c.passed()}};
  if (!c.passed()) out["failed_check"] = c.first_failure();
  return out;
}

// Pads every column to its widest cell; the last column is left ragged.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << line << '\n';
  }
}

// ------------------------------------------------------------------- member

struct MemberArgs {
  std::string m;
  long long genus = 0;
};

int cmd_member(const MemberArgs& args, const Common& common, std::ostream& out) {
  const BigInt m = parse_order(args.m);
  const Genus g(args.genus);
  const auto membership = criterion::is_member(m, g);
  const auto& report = membership.report;

  switch (common.parsed()) {
    case Format::json: {
      json terms = json::array();
      for (const auto& t : report.terms) {
        terms.push_back({{"prime", std::to_string(t.prime)},
                         {"exponent", std::to_string(t.exponent)},
                         {"cost", t.cost.str()}});
      }
      emit_envelope(out, "member", {{"m", m.str()}, {"genus", std::to_string(g.value())}},
                    {{"member", membership.member},
                     {"budget", std::to_string(g.budget())},
                     {"total", report.total.str()},
                     {"exemption_applied", report.exemption_applied},
                     {"terms", terms}});
      break;
    }
    case Format::csv:
      out << "prime,exponent,cost\n";
      for (const auto& t : report.terms) {
        out << t.prime << ',' << t.exponent << ',' << t.cost.str() << '\n';
      }
      break;
    case Format::text: {
      std::vector<std::vector<std::string>> rows{{"factor", "cost"}};
      for (const auto& t : report.terms) {
        rows.push_back({power_text(t.prime, t.exponent), t.cost.str()});
      }
      print_table(out, rows);
      if (report.exemption_applied) out << "m = 2 (mod 4), so the factor 2 is free\n";
      out << "total cost " << report.total.str() << (membership.member ? " <= " : " > ")
          << "2g = " << g.budget() << '\n';
      out << m.str() << (membership.member ? " is" : " is not") << " in S(" << g.value()
          << ")\n";
      break;
    }
  }
  return membership.member ? kSuccess : kNegative;
}

// ------------------------------------------------------------------- orders

int cmd_orders(long long genus, const Common& common, std::ostream& out) {
  const Genus g(genus);
  const auto orders = criterion::enumerate_orders(g);
  switch (common.parsed()) {
    case Format::json: {
      json list = json::array();
      for (const auto& m : orders) list.push_back(m.str());
      emit_envelope(out, "orders", {{"genus", std::to_string(g.value())}},
                    {{"count", std::to_string(orders.size())}, {"orders", list}});
      break;
    }
    case Format::csv:
      out << "m\n";
      for (const auto& m : orders) out << m.str() << '\n';
      break;
    case Format::text:
      for (const auto& m : orders) out << m.str() << '\n';
      break;
  }
  return kSuccess;
}

// ----------------------------------------------------------------- extremal

struct ExtremalArgs {
  std::string genus;
  bool count = false;
  bool max = false;
  bool oracle = false;
  bool allow_large = false;
};

std::vector<extremal::ExtremalRecord> extremal_rows(Span span,
                                                    const extremal::TableOptions& options) {
  const auto& limits = options.limits;
  if (span.to > limits.dp_genus_cap && !limits.allow_override) {
    throw CapExceeded("genus " + std::to_string(span.to) + " exceeds the DP cap " +
                      std::to_string(limits.dp_genus_cap) + "; pass --allow-large");
  }
  if (options.oracle && span.to > limits.brute_force_cap) {
    throw CapExceeded("--oracle enumerates S(g) and is capped at genus " +
                      std::to_string(limits.brute_force_cap));
  }

  auto cache = RecordCache::from_environment();
  std::vector<extremal::ExtremalRecord> rows;
  long long g = span.from;
  while (g <= span.to) {
    if (auto hit = cache.lookup(static_cast<int>(g))) {
      if (options.oracle && extremal::brute_force_extremal(Genus(g), limits) != *hit) {
        throw InternalError("cached row for g = " + std::to_string(g) +
                            " disagrees with enumeration");
      }
      rows.push_back(std::move(*hit));
      ++g;
      continue;
    }
    long long end = g;
    while (end < span.to && !cache.lookup(static_cast<int>(end + 1))) ++end;
    for (auto& r : extremal::extremal_table(static_cast<int>(g), static_cast<int>(end),
                                            options)) {
      cache.store(r);
      rows.push_back(std::move(r));
    }
    g = end + 1;
  }
  return rows;
}

int cmd_extremal(const ExtremalArgs& args, const Common& common, std::ostream& out) {
  const Span span = parse_span(args.genus, "genus");
  if (span.from < 1) throw UsageError("genus must be at least 1");
  extremal::TableOptions options;
  options.jobs = common.jobs;
  options.oracle = args.oracle;
  options.limits.allow_override = args.allow_large;
  const auto rows = extremal_rows(span, options);

  const bool show_f = args.count || !args.max;
  const bool show_h = args.max || !args.count;

  switch (common.parsed()) {
    case Format::json: {
      json list = json::array();
      for (const auto& r : rows) {
        json row = {{"g", std::to_string(r.g)}};
        if (show_f) row["f"] = r.f.str();
        if (show_h) {
          row["h"] = r.h.str();
          row["h_factorization"] = factorization_json(r.h_factorization);
        }
        list.push_back(std::move(row));
      }
      emit_envelope(out, "extremal",
                    {{"genus", span_text(span)},
                     {"count", show_f},
                     {"max", show_h},
                     {"oracle", args.oracle}},
                    {{"rows", list}});
      break;
    }
    case Format::csv:
      out << "g" << (show_f ? ",f" : "") << (show_h ? ",h,h_factorization" : "") << '\n';
      for (const auto& r : rows) {
        out << r.g;
        if (show_f) out << ',' << r.f.str();
        if (show_h) out << ',' << r.h.str() << ',' << factorization_text(r.h_factorization, "*");
        out << '\n';
      }
      break;
    case Format::text: {
      std::vector<std::vector<std::string>> table{{"g"}};
      if (show_f) table[0].push_back("f(g)");
      if (show_h) table[0].insert(table[0].end(), {"h(g)", "factorization"});
      for (const auto& r : rows) {
        std::vector<std::string> line{std::to_string(r.g)};
        if (show_f) line.push_back(r.f.str());
        if (show_h) line.insert(line.end(), {r.h.str(), factorization_text(r.h_factorization)});
        table.push_back(std::move(line));
      }
      print_table(out, table);
      if (args.oracle) out << "oracle: enumeration agrees on every row\n";
      break;
    }
  }
  return kSuccess;
}

// ------------------------------------------------------------ witness/verify

struct WitnessArgs {
  std::string m;
  long long genus = 0;
  std::string output;
};

void print_matrix(std::ostream& out, const IntMatrix& a, bool csv) {
  std::size_t width = 0;
  for (const auto& v : a.entries()) width = std::max(width, v.str().size());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < a.cols(); ++c) cells.push_back(a(r, c).str());
    std::string line;
    if (csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    } else {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        line += std::string(width - cells[i].size() + (i ? 1 : 0), ' ') + cells[i];
      }
    }
    out << line << '\n';
  }
}

int cmd_witness(const WitnessArgs& args, const Common& common, std::ostream& out,
                std::ostream& err) {
  const BigInt m = parse_order(args.m);
  const Genus g(args.genus);
  witness::SymplecticWitness w;
  try {
    w = witness::build_witness(m, g);
  } catch (const witness::NotAMember& e) {
    err << "error: " << e.what() << '\n';
    return kNegative;
  }
  const std::string document = witness::serialize(w, g);

  if (!args.output.empty()) {
    std::ofstream file(args.output, std::ios::binary);
    if (!file || !(file << document)) {
      throw UsageError("cannot write witness to '" + args.output + "'");
    }
    if (common.parsed() == Format::json) {
      emit_envelope(out, "witness",
                    {{"m", m.str()}, {"genus", std::to_string(g.value())}, {"output", args.output}},
                    {{"size", std::to_string(w.matrix.rows())},
                     {"certificate", certificate_json(w.certificate)}});
    } else {
      out << "wrote " << w.matrix.rows() << "x" << w.matrix.cols() << " witness of order "
          << m.str() << " to " << args.output << '\n';
    }
    return kSuccess;
  }

  switch (common.parsed()) {
    case Format::json:
      out << document;
      break;
    case Format::csv:
      print_matrix(out, w.matrix, true);
      break;
    case Format::text:
      print_matrix(out, w.matrix, false);
      out << "order " << m.str() << " in Sp(" << w.matrix.rows() << ", Z): certificate "
          << (w.certificate.passed() ? "passed" : "failed") << '\n';
      break;
  }
  return kSuccess;
}

int cmd_verify(const std::string& path, const Common& common, std::ostream& out,
               std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  const auto parsed = witness::parse_witness(buffer.str());
  const auto& w = parsed.witness;
  const auto cert = witness::verify_witness(w.matrix, w.claimed_order, parsed.genus);
  const bool stored_matches = cert == w.certificate;

  if (common.parsed() == Format::json) {
    emit_envelope(out, "verify", {{"path", path}},
                  {{"genus", std::to_string(parsed.genus.value())},
                   {"claimed_order", w.claimed_order.str()},
                   {"certificate", certificate_json(cert)},
                   {"stored_certificate_matches", stored_matches}});
  } else {
    std::vector<std::vector<std::string>> rows{{"check", "result"}};
    rows.push_back({"symplectic", cert.symplectic ? "pass" : "FAIL"});
    rows.push_back({"order", cert.annihilated ? "pass" : "FAIL"});
    for (const auto& p : cert.proper_powers) {
      rows.push_back({"exact-order(q=" + std::to_string(p.prime) + ")", p.pass ? "pass" : "FAIL"});
    }
    print_table(out, rows);
    if (!stored_matches) out << "note: stored certificate disagrees with recomputation\n";
  }
  if (!cert.passed()) {
    err << "verification failed: " << cert.first_failure() << '\n';
    return kNegative;
  }
  return kSuccess;
}

// ------------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string check;
  std::string range;
  bool allow_large = false;
};

std::string valid_checks() {
  std::string s;
  for (auto c : bounds::all_checks()) {
    if (!s.empty()) s += ", ";
    s += bounds::check_name(c);
  }
  return s;
}

long long first_remark_lower_genus() {
  long long g = 2;
  while (static_cast<long double>(g) * std::log(static_cast<long double>(g)) < 599.0L * 599.0L) {
    ++g;
  }
  return g;
}

Span default_range(bounds::Check c) {
  using bounds::Check;
  switch (c) {
    case Check::thm31:
    case Check::cor32: return {1, 300};
    case Check::remark_upper: return {1486, 1500};
    case Check::thm36:
    case Check::cor37: return {bounds::threshold_l(), bounds::threshold_l() + 100};
    case Check::remark_lower: {
      const long long g = first_remark_lower_genus();
      return {g, g};
    }
    case Check::lemma33: return {23, 100000};
    case Check::lemma34:
    case Check::lemma35: return {bounds::threshold_k(), bounds::threshold_k() + 500};
    case Check::dusart_sum: return {9, 10000};
    case Check::dusart_pi: return {2, 100000};
    case Check::dusart_product: return {2973, 100000};
    case Check::rosser: return {55, 100000};
  }
  return {};
}

int cmd_bounds(const BoundsArgs& args, const Common& common, std::ostream& out) {
  const auto check = bounds::parse_check(args.check);
  if (!check) {
    throw UsageError("unknown check '" + args.check + "'; valid checks: " + valid_checks());
  }
  const Span span = args.range.empty() ? default_range(*check) : parse_span(args.range, "range");
  bounds::Options options;
  options.jobs = common.jobs;
  options.limits.allow_override = args.allow_large;
  const auto reports = bounds::run_check(*check, {span.from, span.to}, options);
  const auto failures = bounds::count_failures(reports);
  const auto unmet = static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const auto& r) {
        return r.status == bounds::Status::precondition_unmet;
      }));

  switch (common.parsed()) {
    case Format::json:
      emit_envelope(out, "bounds", {{"check", args.check}, {"range", span_text(span)}},
                    {{"rows", std::to_string(reports.size())},
                     {"failures", std::to_string(failures)},
                     {"precondition_unmet", std::to_string(unmet)},
                     {"reports", json::parse(bounds::to_json(reports))}});
      break;
    case Format::csv:
      out << bounds::to_csv(reports);
      break;
    case Format::text: {
      std::vector<std::vector<std::string>> rows{
          {"name", "point", "lhs", "relation", "rhs", "margin", "status"}};
      for (const auto& r : reports) {
        rows.push_back({r.name, r.variable + "=" + r.point, r.lhs, r.relation, r.rhs, r.margin,
                        std::string(bounds::status_name(r.status))});
      }
      print_table(out, rows);
      out << reports.size() << " rows, " << failures << " failures, " << unmet
          << " outside the stated range\n";
      break;
    }
  }
  return failures == 0 ? kSuccess : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torsion orders of integral symplectic groups", "sptorsion"};
  app.set_version_flag("--version", SPTORSION_VERSION);
  app.require_subcommand(1);

  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--jobs", common.jobs, "Worker threads for sweeps")->check(CLI::Range(1u, 256u));

  MemberArgs member;
  auto* member_cmd = app.add_subcommand("member", "Decide whether m is an order in Sp(2g, Z)");
  member_cmd->add_option("m", member.m, "Candidate order")->required();
  member_cmd->add_option("--genus,-g", member.genus, "Genus g")->required();

  long long orders_genus = 0;
  auto* orders_cmd = app.add_subcommand("orders", "List S(g) in ascending order");
  orders_cmd->add_option("--genus,-g", orders_genus, "Genus g")->required();

  ExtremalArgs ext;
  auto* ext_cmd = app.add_subcommand("extremal", "Tabulate f(g) = |S(g)| and h(g) = max S(g)");
  ext_cmd->add_option("--genus,-g", ext.genus, "Genus or range a..b")->required();
  ext_cmd->add_flag("--count", ext.count, "Only f(g)");
  ext_cmd->add_flag("--max", ext.max, "Only h(g) and its factorization");
  ext_cmd->add_flag("--oracle", ext.oracle, "Cross-check every row by enumeration");
  ext_cmd->add_flag("--allow-large", ext.allow_large, "Lift the genus cap");

  WitnessArgs wit;
  auto* wit_cmd = app.add_subcommand("witness", "Build an explicit element of order m");
  wit_cmd->add_option("m", wit.m, "Order")->required();
  wit_cmd->add_option("--genus,-g", wit.genus, "Genus g")->required();
  wit_cmd->add_option("-o,--output", wit.output, "Write the witness document here");

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a witness document");
  verify_cmd->add_option("file", verify_path, "Witness JSON")->required();

  BoundsArgs bnd;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate an inequality over a range");
  bounds_cmd->add_option("--check", bnd.check, "Check name")->required();
  bounds_cmd->add_option("--range", bnd.range, "Point or range a..b");
  bounds_cmd->add_flag("--allow-large", bnd.allow_large, "Lift the genus cap");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(),
                                      args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (member_cmd->parsed()) return cmd_member(member, common, out);
    if (orders_cmd->parsed()) return cmd_orders(orders_genus, common, out);
    if (ext_cmd->parsed()) return cmd_extremal(ext, common, out);
    if (wit_cmd->parsed()) return cmd_witness(wit, common, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify_path, common, out, err);
    if (bounds_cmd->parsed()) return cmd_bounds(bnd, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNegative;
  }
  return kUsage;
}

}  // namespace sptorsion::cli
