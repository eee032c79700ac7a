#include "drinfeld/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "drinfeld/census.hpp"
#include "drinfeld/gon.hpp"

namespace drinfeld::cli {

namespace {

std::int64_t to_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return std::string(s.substr(a, b - a + 1));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

struct Globals {
  std::string gf = "2";
  std::string format = "pretty";
  std::string out;
  unsigned workers = 1;
  double max_work = kDefaultWorkLog2;
};

struct PopulationArgs {
  int rank = 0;
  std::string weights;

  Population resolve() const {
    if ((rank != 0) == !weights.empty()) throw DomainError("give exactly one of --rank or --weights");
    if (rank != 0) return DrinfeldRank{rank};
    return WeightVector(parse_weights(weights));
  }
};

std::vector<PrimeCondition> parse_conditions(const Field& F, const std::vector<std::string>& texts) {
  std::vector<PrimeCondition> out;
  for (const auto& t : texts) out.push_back(parse_prime_condition(F, t));
  check_distinct_primes(out);
  return out;
}

std::string emit_irreducibles(const Field& F, int d, const std::string& format) {
  const auto primes = enumerate_monic_irreducibles(F, d);
  const auto count = count_irreducibles(F, d);
  std::ostringstream o;
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : primes) rows.push_back({{"poly", p.to_string()}, {"norm", p.norm().get_str()}});
    o << nlohmann::json{{"field", F.spec_string()}, {"degree", d}, {"necklace_count", count.get_str()},
                        {"irreducibles", rows}}
             .dump(2)
      << "\n";
  } else if (format == "csv") {
    o << "# field=" << F.spec_string() << " degree=" << d << " necklace_count=" << count.get_str() << "\n";
    o << "poly,norm\n";
    for (const auto& p : primes) o << csv_field(p.to_string()) << ',' << p.norm().get_str() << "\n";
  } else {
    o << "monic irreducibles of degree " << d << " over " << F.spec_string() << ": " << primes.size()
      << " (necklace count " << count.get_str() << ")\n";
    for (const auto& p : primes) o << "  " << p.to_string() << "\n";
  }
  return o.str();
}

std::string emit_report(const CensusReport& rep, const std::string& format) {
  if (format == "json") return rep.to_json().dump(2) + "\n";
  if (format == "csv") return rep.to_csv();
  return rep.to_pretty();
}

std::string emit_convergence(const CensusReport& rep, std::uint64_t q, const std::vector<std::uint64_t>& candidates,
                             const std::string& format) {
  const auto table = convergence_table(rep, q);
  std::vector<std::optional<double>> inc;
  for (const auto& r : table) inc.push_back(r.log_q_increment);
  std::optional<ExponentVerdict> verdict;
  if (std::any_of(inc.begin(), inc.end(), [](const auto& v) { return v.has_value(); }))
    verdict = adjudicate_exponent(inc, candidates);

  std::ostringstream o;
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table)
      rows.push_back({{"b", r.b},
                      {"ratio_decimal", to_decimal(r.ratio)},
                      {"log_q_increment", r.log_q_increment ? nlohmann::json(fixed(*r.log_q_increment))
                                                            : nlohmann::json(nullptr)}});
    nlohmann::json j{{"rows", rows}, {"candidates", candidates}};
    j["winner"] = verdict ? nlohmann::json(verdict->winner) : nlohmann::json(nullptr);
    j["distance"] = verdict ? nlohmann::json(fixed(verdict->distance)) : nlohmann::json(nullptr);
    o << j.dump(2) << "\n";
    return o.str();
  }
  std::string cands;
  for (auto c : candidates) cands += (cands.empty() ? "" : ",") + std::to_string(c);
  if (format == "csv") {
    o << "# candidates=" << cands;
    if (verdict) o << " winner=" << verdict->winner << " distance=" << fixed(verdict->distance);
    o << "\nb,ratio_decimal,log_q_increment\n";
    for (const auto& r : table)
      o << r.b << ',' << to_decimal(r.ratio) << ',' << (r.log_q_increment ? fixed(*r.log_q_increment) : "") << "\n";
    return o.str();
  }
  o << pad("b", 4) << pad("ratio", 16) << "log_q increment\n";
  for (const auto& r : table)
    o << pad(std::to_string(r.b), 4) << pad(to_decimal(r.ratio, 6), 16)
      << (r.log_q_increment ? fixed(*r.log_q_increment) : "-") << "\n";
  o << "candidate exponents " << cands;
  if (verdict) o << "; winner " << verdict->winner << " (distance " << fixed(verdict->distance) << ")";
  o << "\n";
  return o.str();
}

std::string emit_verify(const std::vector<VerifyRow>& rows, const std::string& format) {
  std::ostringstream o;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
      arr.push_back({{"index", r.index},
                     {"case", r.description},
                     {"expected", to_fraction_string(r.expected)},
                     {"computed", to_fraction_string(r.computed)},
                     {"status", r.pass() ? "PASS" : "FAIL"}});
    o << arr.dump(2) << "\n";
  } else if (format == "csv") {
    o << "index,case,expected,computed,status\n";
    for (const auto& r : rows)
      o << r.index << ',' << csv_field(r.description) << ',' << to_fraction_string(r.expected) << ','
        << to_fraction_string(r.computed) << ',' << (r.pass() ? "PASS" : "FAIL") << "\n";
  } else {
    for (const auto& r : rows)
      o << r.index << "  " << pad(r.description, 58) << "  expected " << to_fraction_string(r.expected)
        << " (" << to_decimal(r.expected, 6) << ")  computed " << to_fraction_string(r.computed) << " ("
        << to_decimal(r.computed, 6) << ")  " << (r.pass() ? "PASS" : "FAIL") << "\n";
  }
  return o.str();
}

std::string emit_prediction(const AsymptoticPrediction& p, std::uint64_t alt_exponent, const Rational& density,
                            const std::string& format) {
  std::ostringstream o;
  if (format == "json") {
    auto j = p.to_json();
    j["alt_exponent"] = alt_exponent;
    j["density"] = to_fraction_string(density);
    o << j.dump(2) << "\n";
  } else if (format == "csv") {
    o << "leading_num,leading_den,exponent,error_exponent,log_factor,alt_exponent,density\n";
    o << p.leading.get_num().get_str() << ',' << p.leading.get_den().get_str() << ',' << p.exponent << ','
      << to_fraction_string(p.error_exponent) << ',' << (p.log_factor ? "true" : "false") << ',' << alt_exponent
      << ',' << to_fraction_string(density) << "\n";
  } else {
    o << "count(b) ~ " << to_fraction_string(p.leading) << " * q^(" << p.exponent << " b)  ["
      << to_decimal(p.leading, 6) << "]\n";
    o << "error O(q^(" << to_fraction_string(p.error_exponent) << " b)" << (p.log_factor ? " log q^b" : "") << ")\n";
    o << "density factor " << to_fraction_string(density) << " (" << to_decimal(density, 6) << ")\n";
    o << "alternative exponent " << alt_exponent << "\n";
  }
  return o.str();
}

std::string emit_scan(const BoxErrorScan& scan, const std::string& format) {
  std::ostringstream o;
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : scan.rows)
      rows.push_back({{"t_exp", r.t_exp},
                      {"count", r.count.get_str()},
                      {"main_term", to_fraction_string(r.main_term)},
                      {"error", to_fraction_string(r.error)},
                      {"scale", r.scale.get_str()}});
    o << nlohmann::json{{"rows", rows}, {"constant", to_fraction_string(scan.constant)}}.dump(2) << "\n";
  } else if (format == "csv") {
    o << "t_exp,count,main_term,error,scale\n";
    for (const auto& r : scan.rows)
      o << r.t_exp << ',' << r.count.get_str() << ',' << to_fraction_string(r.main_term) << ','
        << to_fraction_string(r.error) << ',' << r.scale.get_str() << "\n";
  } else {
    o << pad("t", 4) << pad("count", 14) << pad("main term", 16) << pad("error", 12) << "scale\n";
    for (const auto& r : scan.rows)
      o << pad(std::to_string(r.t_exp), 4) << pad(r.count.get_str(), 14) << pad(to_fraction_string(r.main_term), 16)
        << pad(to_fraction_string(r.error), 12) << r.scale.get_str() << "\n";
    o << "error constant " << to_fraction_string(scan.constant) << "\n";
  }
  return o.str();
}

std::string read_box_text(const std::string& arg) {
  if (!arg.starts_with("@")) return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw ParseError("cannot read box file '" + arg.substr(1) + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

PrimeCondition parse_prime_condition(const Field& F, std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) throw ParseError("condition '" + std::string(text) + "' lacks '@POLY'");
  const auto cond = parse_condition(trim(text.substr(0, at)));
  const auto prime = parse_prime(F, trim(text.substr(at + 1)));
  return {prime, cond};
}

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto v = to_int(trim(text), "height");
    return {v, v};
  }
  return {to_int(trim(text.substr(0, dots)), "range start"), to_int(trim(text.substr(dots + 2)), "range end")};
}

std::vector<std::uint64_t> parse_weights(std::string_view text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  std::vector<std::uint64_t> w;
  std::size_t start = 0;
  for (;;) {
    const auto comma = t.find(',', start);
    const auto tok = trim(std::string_view(t).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    const auto v = to_int(tok, "weight");
    if (v < 1) throw ParseError("bad weight '" + tok + "'");
    w.push_back(static_cast<std::uint64_t>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return w;
}

std::vector<VerifyRow> verify_examples() {
  std::vector<VerifyRow> rows;
  auto frac = [](const BigInt& n, const BigInt& d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
  };
  {
    auto F = Field::make(3);
    std::vector<PrimeCondition> c{parse_prime_condition(F, "good@T^2+T+2")};
    rows.push_back({1, "q=3, good at T^2+T+2", frac(8, 9), finite_density(2, c)});
  }
  {
    auto F = Field::make(5);
    std::vector<PrimeCondition> c{parse_prime_condition(F, "unstable@T^6+T^4+4*T^3+T^2+2")};
    rows.push_back({2, "q=5, r=4, unstable at T^6+T^4+4*T^3+T^2+2", frac(1, ipow(5, 24)), finite_density(4, c)});
  }
  {
    auto F = Field::make(7);
    std::vector<PrimeCondition> c{parse_prime_condition(F, "stable>=3@T+2")};
    rows.push_back({3, "q=7, r=5, stable of rank >= 3 at T+2", frac(ipow(7, 5) - ipow(7, 3), ipow(7, 5)),
                    finite_density(5, c)});
  }
  {
    auto F = Field::make(3);
    std::vector<PrimeCondition> c{parse_prime_condition(F, "bad@T"), parse_prime_condition(F, "stable@T^2+T+2"),
                                  parse_prime_condition(F, "stable=2@T^2+2*T+2")};
    rows.push_back({4, "q=3, r=3, bad at T, stable at T^2+T+2, stable=2 at T^2+2*T+2", frac(5824, 177147),
                    finite_density(3, c)});
  }
  rows.push_back({5, "q=8, r=2, everywhere stable", frac(441, 512), everywhere_density(8, 2, 1)});
  rows.push_back({6, "q=5, r=11, everywhere stable of rank >= 9", frac(2976, 3125), everywhere_density(5, 11, 9)});
  {
    auto F = Field::make(2);
    std::vector<PrimeCondition> c{parse_prime_condition(F, "bad@T+1"), parse_prime_condition(F, "good@T^2+T+1"),
                                  parse_prime_condition(F, "good@T^3+T+1")};
    rows.push_back({7, "q=2, r=2, bad at T+1, good at T^2+T+1 and T^3+T+1, stable elsewhere", frac(1, 6),
                    everywhere_density(2, 2, 1, c)});
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact censuses of Drinfeld modules and weighted projective points over F_q(T)", "drinfeld-census"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("DRINFELD_CENSUS_MAX_WORK")) {
    try {
      g.max_work = std::stod(env);
    } catch (const std::exception&) {
      err << "error: DRINFELD_CENSUS_MAX_WORK='" << env << "' is not a number\n";
      return kExitUsage;
    }
  }
  app.add_option("--gf", g.gf, "field order q, or gf(q)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json", "pretty"}));
  app.add_option("--out", g.out, "write output to PATH instead of standard output");
  app.add_option("--workers", g.workers, "parallel enumeration workers")->check(CLI::PositiveNumber);
  app.add_option("--max-work", g.max_work, "log2 bound on candidate tuples (env DRINFELD_CENSUS_MAX_WORK)");

  auto* irr = app.add_subcommand("irreducibles", "list monic irreducibles of a degree");
  int deg = 1;
  irr->add_option("--deg", deg, "degree")->required();

  PopulationArgs pop;
  std::vector<std::string> conds;
  int everywhere = 0;
  std::string b_text;
  bool convergence = false;

  auto* cen = app.add_subcommand("census", "count modules or points by exact height");
  cen->add_option("--rank", pop.rank, "Drinfeld rank r >= 2");
  cen->add_option("--weights", pop.weights, "weights, e.g. 1,3");
  cen->add_option("--b", b_text, "height or range a..b")->required();
  cen->add_option("--cond", conds, "local condition kind@POLY (repeatable)");
  cen->add_option("--everywhere", everywhere, "stable of rank >= s at every other prime");
  cen->add_flag("--convergence", convergence, "print log_q increments and the exponent verdict");

  auto* pre = app.add_subcommand("predict", "print the leading coefficient and exponent");
  pre->add_option("--rank", pop.rank, "Drinfeld rank r >= 2");
  pre->add_option("--weights", pop.weights, "weights, e.g. 1,3");
  pre->add_option("--cond", conds, "local condition kind@POLY (repeatable)");
  pre->add_option("--everywhere", everywhere, "stable of rank >= s at every other prime");

  auto* ver = app.add_subcommand("verify-examples", "recompute the seven worked densities");

  auto* gon = app.add_subcommand("gon-check", "lattice points in dilated boxes against main terms");
  std::string box_text, gon_weights, t_text;
  gon->add_option("--box", box_text, "box JSON, or @PATH")->required();
  gon->add_option("--weights", gon_weights, "one weight per box coordinate")->required();
  gon->add_option("--t", t_text, "dilation exponents a..b")->required();

  auto* en = app.add_subcommand("enumerate", "list the points or modules of a height");
  en->add_option("--rank", pop.rank, "Drinfeld rank r >= 2");
  en->add_option("--weights", pop.weights, "weights, e.g. 1,3");
  en->add_option("--b", b_text, "height")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  int code = kExitOk;
  std::string text;
  try {
    if (g.max_work > kHardWorkLog2) throw DomainError("--max-work cannot exceed the hard cap 36");
    const EnumerationOptions options{g.workers, g.max_work};

    if (ver->parsed()) {
      const auto rows = verify_examples();
      text = emit_verify(rows, g.format);
      if (!std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass(); })) code = kExitCheckFailed;
    } else {
      const Field F = parse_field(g.gf);
      if (irr->parsed()) {
        text = emit_irreducibles(F, deg, g.format);
      } else if (cen->parsed()) {
        CensusQuery q{F, pop.resolve(), 0, -1, parse_conditions(F, conds), std::nullopt, options};
        std::tie(q.b_min, q.b_max) = parse_range(b_text);
        if (everywhere != 0) q.everywhere = everywhere;
        const auto rep = run_census(q);
        if (convergence) {
          std::vector<std::uint64_t> cands;
          if (const auto* d = std::get_if<DrinfeldRank>(&q.population))
            cands = {drinfeld_weight_exponent(F.q(), d->r), drinfeld_alt_exponent(F.q(), d->r)};
          else
            cands = {std::get<WeightVector>(q.population).total()};
          text = emit_convergence(rep, F.q(), cands, g.format);
        } else {
          text = emit_report(rep, g.format);
        }
      } else if (pre->parsed()) {
        CensusQuery q{F, pop.resolve(), 0, -1, parse_conditions(F, conds), std::nullopt, options};
        if (everywhere != 0) q.everywhere = everywhere;
        q.validate();
        const auto p = census_prediction(q);
        std::uint64_t alt = p.exponent;
        Rational density(1);
        if (const auto* d = std::get_if<DrinfeldRank>(&q.population)) {
          alt = drinfeld_alt_exponent(F.q(), d->r);
          density = q.everywhere ? everywhere_density(F.q(), d->r, *q.everywhere, q.finite_conditions)
                                 : finite_density(d->r, q.finite_conditions);
        }
        text = emit_prediction(p, alt, density, g.format);
      } else if (gon->parsed()) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(read_box_text(box_text));
        } catch (const nlohmann::json::parse_error& e) {
          throw ParseError(std::string("malformed box JSON: ") + e.what());
        }
        const auto box = BoxSpec::from_json(F, j);
        const auto w = parse_weights(gon_weights);
        const auto [t0, t1] = parse_range(t_text);
        if (t0 < 0) throw DomainError("dilation exponents are non-negative");
        BoxErrorScan scan;
        if (t0 <= t1)
          scan = box_error_scan(F, box, w, static_cast<std::uint64_t>(t0), static_cast<std::uint64_t>(t1));
        text = emit_scan(scan, g.format);
      } else if (en->parsed()) {
        const auto population = pop.resolve();
        const auto [b0, b1] = parse_range(b_text);
        std::ostringstream o;
        nlohmann::json arr = nlohmann::json::array();
        if (g.format == "csv") o << "b,point\n";
        for (std::int64_t b = b0; b <= b1; ++b) {
          std::vector<std::string> items;
          if (const auto* d = std::get_if<DrinfeldRank>(&population)) {
            for (const auto& m : enumerate_drinfeld(F, d->r, b, options)) items.push_back(m.to_string());
          } else {
            for (const auto& p : enumerate_points(F, std::get<WeightVector>(population), b, options))
              items.push_back(p.to_string());
          }
          for (const auto& s : items) {
            if (g.format == "csv") o << b << ',' << csv_field(s) << "\n";
            else if (g.format == "json") arr.push_back({{"b", b}, {"point", s}});
            else o << "b=" << b << "  " << s << "\n";
          }
          if (g.format == "pretty") o << "# " << items.size() << " at height " << b << "\n";
        }
        text = g.format == "json" ? arr.dump(2) + "\n" : o.str();
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (g.out.empty()) {
    out << text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << g.out << "'\n";
      return kExitUsage;
    }
    f << text;
  }
  return code;
}

}  // namespace drinfeld::cli
