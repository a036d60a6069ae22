#include "cli_app.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rseven/rseven.hpp"
#include "rseven/verify.hpp"

namespace rseven::cli {
namespace {

enum class Format { human, json, csv };

struct Globals {
  bool json = false;
  bool csv = false;
  std::uint64_t seed = 1;

  Format format() const { return json ? Format::json : csv ? Format::csv : Format::human; }
};

/// Thrown when a cross-check or verification detects a disagreement.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Factored parse_modulus(const std::string& text, const char* name) {
  const Integer v = parse_integer(text);
  if (sgn(v) <= 0) throw DomainError(std::string(name) + " must be >= 1, got " + text);
  return factor(v);
}

Integer parse_argument(const std::string& text) {
  const Integer v = parse_integer(text);
  if (sgn(v) < 0) throw DomainError("n must be nonnegative, got " + text);
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// crs ------------------------------------------------------------------------

struct CrsArgs {
  std::string r, n;
  unsigned s = 1;
  std::string method = "divisor";
  bool table = false;
  bool cross_check = false;
};

/// Value by the chosen method; with cross-check, every applicable method must agree.
Integer crs_value(const Factored& r, unsigned s, const Integer& n, CrsMethod method,
                  bool cross_check, json* methods) {
  const Integer value = crs(r, s, n, method);
  if (!cross_check) return value;
  std::vector<CrsMethod> all{CrsMethod::divisor, CrsMethod::holder};
  if (power(r, s) <= kOracleModulusLimit) all.push_back(CrsMethod::oracle);
  for (CrsMethod m : all) {
    const Integer other = crs(r, s, n, m);
    if (methods) (*methods)[std::string(to_string(m))] = json_integer(other);
    if (other != value) {
      throw VerificationFailure("methods disagree at n=" + n.get_str() + ": " +
                                std::string(to_string(method)) + " gives " + value.get_str() +
                                ", " + std::string(to_string(m)) + " gives " + other.get_str());
    }
  }
  return value;
}

int cmd_crs(const CrsArgs& a, const Globals& g, std::ostream& out) {
  const Factored r = parse_modulus(a.r, "r");
  if (a.s == 0) throw DomainError("s must be >= 1");
  const CrsMethod method = parse_crs_method(a.method);
  if (!a.table) {
    if (a.n.empty()) throw DomainError("n is required unless --table is given");
    const Integer n = parse_argument(a.n);
    json methods = json::object();
    const Integer value = crs_value(r, a.s, n, method, a.cross_check, &methods);
    switch (g.format()) {
      case Format::json: {
        json doc = {{"r", r.value()}, {"s", a.s}, {"n", json_integer(n)},
                    {"value", json_integer(value)}, {"method", a.method}};
        if (a.cross_check) doc["cross_check"] = methods;
        out << doc.dump() << '\n';
        break;
      }
      case Format::csv:
        out << "r,s,n,value,method\n"
            << r.value() << ',' << a.s << ',' << n << ',' << value << ',' << a.method << '\n';
        break;
      case Format::human:
        out << value << '\n';
        break;
    }
    return kSuccess;
  }
  const Integer modulus = power(r, a.s);
  if (modulus > kOracleModulusLimit) {
    throw CapacityError("--table limited to r^s <= " + std::to_string(kOracleModulusLimit));
  }
  const std::uint64_t big_n = to_u64(modulus);
  json rows = json::array();
  std::ostringstream text;
  if (g.format() == Format::csv) text << "n,value\n";
  if (g.format() == Format::human) {
    text << "# c_{" << r.value() << ',' << a.s << "}(n), n = 1.." << big_n << '\n';
  }
  for (std::uint64_t n = 1; n <= big_n; ++n) {
    const Integer value = crs_value(r, a.s, to_integer(n), method, a.cross_check, nullptr);
    if (g.format() == Format::json) {
      rows.push_back({{"n", n}, {"value", json_integer(value)}});
    } else if (g.format() == Format::csv) {
      text << n << ',' << value << '\n';
    } else {
      text << std::setw(8) << n << "  " << value << '\n';
    }
  }
  if (g.format() == Format::json) {
    out << json{{"r", r.value()}, {"s", a.s}, {"method", a.method}, {"table", rows}}.dump()
        << '\n';
  } else {
    out << text.str();
  }
  return kSuccess;
}

// dft ------------------------------------------------------------------------

struct DftArgs {
  std::string input;
  bool inverse = false;
  bool alpha = false;
  std::optional<unsigned> s;
};

template <class Tag>
DivisorTable<Tag> load_table(const DftArgs& a) {
  const std::string text = read_file(a.input);
  if (ends_with(a.input, ".csv")) {
    if (!a.s) throw DomainError("CSV input carries no s; pass --s");
    return parse_table_csv<Tag>(text, *a.s);
  }
  auto table = parse_table_json<Tag>(text);
  if (a.s && *a.s != table.s()) throw DomainError("--s disagrees with the file's s");
  return table;
}

template <class Tag>
void emit_table(const DivisorTable<Tag>& table, const char* label, const Globals& g,
                std::ostream& out) {
  switch (g.format()) {
    case Format::json:
      out << to_json(table).dump() << '\n';
      break;
    case Format::csv:
      out << to_csv(table);
      break;
    case Format::human: {
      out << "# " << label << " for (r,s) = (" << table.r().value() << ',' << table.s()
          << ")\n";
      const auto& dom = *table.domain();
      for (std::size_t i = 0; i < dom.size(); ++i) {
        out << std::setw(8) << dom.divisors()[i].value() << "  " << to_string(table[i])
            << '\n';
      }
      break;
    }
  }
}

int cmd_dft(const DftArgs& a, const Globals& g, std::ostream& out) {
  if (a.inverse) {
    emit_table(idft(load_table<SpectrumTag>(a)), "even function (value at d^s)", g, out);
  } else if (a.alpha) {
    emit_table(alpha_from_spectrum(dft(load_table<FunctionTag>(a))), "alpha(d)", g, out);
  } else {
    emit_table(dft(load_table<FunctionTag>(a)), "spectrum (value at d^s)", g, out);
  }
  return kSuccess;
}

// count ----------------------------------------------------------------------

struct CountArgs {
  std::string r, n;
  unsigned s = 1;
  unsigned k = 1;
  bool brute_force = false;
};

int cmd_count(const CountArgs& a, const Globals& g, std::ostream& out) {
  const Factored r = parse_modulus(a.r, "r");
  const Integer n = parse_argument(a.n);
  const Integer count = count_spectral(r, a.s, a.k, n);
  std::optional<Integer> brute;
  if (a.brute_force) brute = count_bruteforce(r, a.s, a.k, n);
  switch (g.format()) {
    case Format::json: {
      json doc = {{"r", r.value()}, {"s", a.s}, {"k", a.k}, {"n", json_integer(n)},
                  {"count", json_integer(count)}, {"method", "spectral"}};
      if (brute) doc["bruteforce_count"] = json_integer(*brute);
      out << doc.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "r,s,k,n,count,method\n"
          << r.value() << ',' << a.s << ',' << a.k << ',' << n << ',' << count << ",spectral\n";
      if (brute) {
        out << r.value() << ',' << a.s << ',' << a.k << ',' << n << ',' << *brute
            << ",bruteforce\n";
      }
      break;
    case Format::human:
      out << count << '\n';
      if (brute) out << "brute force: " << *brute << '\n';
      break;
  }
  if (brute && *brute != count) {
    throw VerificationFailure("spectral count " + count.get_str() + " != brute force " +
                              brute->get_str());
  }
  return kSuccess;
}

// holder ---------------------------------------------------------------------

struct HolderArgs {
  std::string r, n;
  unsigned s = 1;
  std::string f_json;
  std::string f_file;
  bool table = false;
  bool cross_check = false;
};

Rational rational_field(const json& node, const std::string& where) {
  if (node.is_number_integer()) return Rational(node.get<long>());
  if (node.is_string()) {
    try {
      return parse_rational(node.get<std::string>());
    } catch (const DomainError& e) {
      throw DomainError(where + ": " + e.what());
    }
  }
  throw DomainError(where + ": expected a rational string such as \"-1/2\"");
}

StronglyMultiplicativeFn parse_f(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed F: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("F: expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "default" && key != "primes") throw DomainError("F: unknown field '" + key + "'");
  }
  Rational fallback = 1;
  if (doc.contains("default")) fallback = rational_field(doc["default"], "F.default");
  std::map<std::uint64_t, Rational> primes;
  if (doc.contains("primes")) {
    if (!doc["primes"].is_object()) throw DomainError("F.primes: expected an object");
    for (const auto& [key, value] : doc["primes"].items()) {
      const Integer p = parse_integer(key);
      if (sgn(p) <= 0 || !fits_u64(p) || !is_prime(to_u64(p))) {
        throw DomainError("F.primes: '" + key + "' is not a prime");
      }
      primes.emplace(to_u64(p), rational_field(value, "F.primes." + key));
    }
  }
  return StronglyMultiplicativeFn(fallback, std::move(primes));
}

int cmd_holder(const HolderArgs& a, const Globals& g, std::ostream& out) {
  const Factored r = parse_modulus(a.r, "r");
  if (a.s == 0) throw DomainError("s must be >= 1");
  std::string f_text = a.f_json;
  if (!a.f_file.empty()) f_text = read_file(a.f_file);
  if (f_text.empty()) throw DomainError("F is required: pass --F or --F-file");
  const CompletelyEvenSequence seq{parse_f(f_text), a.s};

  std::vector<Integer> args;
  if (a.table) {
    for (const auto& d : divisors(r)) args.push_back(power(d, a.s));
  } else {
    if (a.n.empty()) throw DomainError("n is required unless --table is given");
    args.push_back(parse_argument(a.n));
  }
  std::optional<Spectrum> reference;
  if (a.cross_check) reference = dft(realize(seq, r));

  json rows = json::array();
  std::ostringstream text;
  if (g.format() == Format::csv) text << "n,value\n";
  for (const auto& n : args) {
    const Rational value = holder_dft(seq, r, n);
    if (reference && evaluate(*reference, n) != value) {
      throw VerificationFailure("closed form " + to_string(value) + " != transform " +
                                to_string(evaluate(*reference, n)) + " at n=" + n.get_str());
    }
    if (g.format() == Format::json) {
      rows.push_back({{"n", json_integer(n)}, {"value", to_string(value)}});
    } else if (g.format() == Format::csv) {
      text << n << ',' << to_string(value) << '\n';
    } else {
      text << (a.table ? n.get_str() + "  " : std::string()) << to_string(value) << '\n';
    }
  }
  if (g.format() == Format::json) {
    json doc = {{"r", r.value()}, {"s", a.s}};
    if (a.table) {
      doc["table"] = rows;
    } else {
      doc["n"] = rows[0]["n"];
      doc["value"] = rows[0]["value"];
    }
    if (a.cross_check) doc["cross_check"] = "ok";
    out << doc.dump() << '\n';
  } else {
    out << text.str();
  }
  return kSuccess;
}

// verify ---------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  VerifyOptions options;
  std::string fault;
};

int cmd_verify(VerifyArgs a, const Globals& g, std::ostream& out) {
  a.options.seed = g.seed;
  if (!a.fault.empty()) {
    if (a.fault != "transform-off-by-one") throw DomainError("unknown fault '" + a.fault + "'");
    a.options.inject_transform_fault = true;
  }
  const RunReport report = run_verify(a.suite, a.options);
  switch (g.format()) {
    case Format::json:
      out << report.to_json().dump() << '\n';
      break;
    case Format::csv:
      out << "suite,checks_passed,checks_failed,skipped,counterexample\n";
      for (const auto& r : report.results) {
        out << r.suite << ',' << r.checks_passed << ',' << r.checks_failed << ',' << r.skipped
            << ',' << (r.counterexample ? "\"" + *r.counterexample + "\"" : "") << '\n';
      }
      break;
    case Format::human:
      for (const auto& r : report.results) {
        out << (r.checks_failed == 0 ? "ok    " : "FAIL  ") << std::left << std::setw(18)
            << r.suite << std::right << " passed " << r.checks_passed << ", failed "
            << r.checks_failed;
        if (r.skipped) out << ", skipped " << r.skipped;
        out << '\n';
        if (r.counterexample) out << "      counterexample: " << *r.counterexample << '\n';
      }
      out << "checks passed " << report.checks_passed << ", failed " << report.checks_failed
          << " (" << std::fixed << std::setprecision(1) << report.elapsed_ms << " ms)\n";
      break;
  }
  return report.checks_failed == 0 ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic on (r,s)-even functions and generalized Ramanujan sums"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_option("--seed", g.seed, "Seed for randomized property sweeps");

  CrsArgs crs_args;
  auto* crs_cmd = app.add_subcommand("crs", "Generalized Ramanujan sum c_{r,s}(n)");
  crs_cmd->add_option("r", crs_args.r, "Modulus base r >= 1")->required();
  crs_cmd->add_option("s", crs_args.s, "Exponent s >= 1")->required();
  crs_cmd->add_option("n", crs_args.n, "Argument n >= 0");
  crs_cmd->add_option("--method", crs_args.method, "divisor | holder | oracle")
      ->check(CLI::IsMember({"divisor", "holder", "oracle"}));
  crs_cmd->add_flag("--table", crs_args.table, "Tabulate n = 1..r^s");
  crs_cmd->add_flag("--cross-check", crs_args.cross_check, "Require all methods to agree");

  DftArgs dft_args;
  auto* dft_cmd = app.add_subcommand("dft", "Transform a serialized even function");
  dft_cmd->add_option("input", dft_args.input, "JSON record or .csv file")->required();
  auto* inverse = dft_cmd->add_flag("--inverse", dft_args.inverse, "Input is a spectrum; invert it");
  dft_cmd->add_flag("--alpha", dft_args.alpha, "Emit McCarthy coefficients")->excludes(inverse);
  dft_cmd->add_option("--s", dft_args.s, "Exponent s for CSV input");

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Count restricted congruence solutions");
  count_cmd->add_option("r", count_args.r)->required();
  count_cmd->add_option("s", count_args.s)->required();
  count_cmd->add_option("k", count_args.k)->required();
  count_cmd->add_option("n", count_args.n)->required();
  count_cmd->add_flag("--brute-force", count_args.brute_force, "Also count by convolution");

  HolderArgs holder_args;
  auto* holder_cmd = app.add_subcommand("holder", "Transform of a completely (r,s)-even sequence");
  holder_cmd->add_option("r", holder_args.r)->required();
  holder_cmd->add_option("s", holder_args.s)->required();
  holder_cmd->add_option("n", holder_args.n);
  auto* f_inline = holder_cmd->add_option("--F", holder_args.f_json,
                                          R"(F as JSON: {"default": "1", "primes": {"2": "5"}})");
  holder_cmd->add_option("--F-file", holder_args.f_file, "File holding F as JSON")
      ->excludes(f_inline);
  holder_cmd->add_flag("--table", holder_args.table, "Evaluate at n = d^s for every d | r");
  holder_cmd->add_flag("--cross-check", holder_args.cross_check,
                       "Compare with the structured transform");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run identity suites");
  verify_cmd->add_option("suite", verify_args.suite, "Suite name or 'all'")->required();
  verify_cmd->add_option("--r-max", verify_args.options.r_max, "Largest r swept");
  verify_cmd->add_option("--s-max", verify_args.options.s_max, "Largest s swept");
  verify_cmd->add_option("--samples", verify_args.options.samples,
                         "Random samples per (r,s)");
  verify_cmd->add_option("--inject-fault", verify_args.fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  if (g.json && g.csv) {
    err << "error: --json and --csv are mutually exclusive\n";
    return kUsageError;
  }

  try {
    if (*crs_cmd) return cmd_crs(crs_args, g, out);
    if (*dft_cmd) return cmd_dft(dft_args, g, out);
    if (*count_cmd) return cmd_count(count_args, g, out);
    if (*holder_cmd) return cmd_holder(holder_args, g, out);
    if (*verify_cmd) return cmd_verify(verify_args, g, out);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace rseven::cli
