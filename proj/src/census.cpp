#include "drinfeld/census.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace drinfeld {

namespace {

const char* const kCsvHeader =
    "b,exact_count,population_count,predicted_num,predicted_den,exponent_used,ratio_decimal,"
    "empirical_density_decimal,alt_exponent,alt_predicted_num,alt_predicted_den,alt_ratio_decimal,"
    "empirical_density";

Rational safe_div(const Rational& a, const Rational& b) { return b == 0 ? Rational(0) : Rational(a / b); }

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "'");
  }
  if (used != s.size()) throw ParseError("bad integer '" + s + "'");
  return v;
}

BigInt parse_bigint(const std::string& s) {
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("bad integer '" + s + "'");
  return v;
}

Rational make_rational(const std::string& num, const std::string& den) {
  Rational r(parse_bigint(num), parse_bigint(den));
  if (r.get_den() == 0) throw ParseError("zero denominator");
  r.canonicalize();
  return r;
}

}  // namespace

void CensusQuery::validate() const {
  check_distinct_primes(finite_conditions);
  for (const auto& [p, c] : finite_conditions)
    if (!(p.poly().field() == field)) throw DomainError("condition prime over a different field");
  if (const auto* d = std::get_if<DrinfeldRank>(&population)) {
    if (d->r < 2) throw DomainError("rank must be at least 2");
    for (const auto& pc : finite_conditions) pc.second.check_rank(d->r);
    if (everywhere && (*everywhere < 1 || *everywhere >= d->r))
      throw DomainError("everywhere condition needs 1 <= s < r");
  } else {
    if (!finite_conditions.empty()) throw DomainError("local conditions need a Drinfeld population");
    if (everywhere) throw DomainError("everywhere conditions need a Drinfeld population");
  }
  if (b_min < 0 && b_min <= b_max) throw DomainError("heights are non-negative");
}

WeightVector CensusQuery::weights() const {
  if (const auto* d = std::get_if<DrinfeldRank>(&population)) return WeightVector::drinfeld(field.q(), d->r);
  return std::get<WeightVector>(population);
}

Rational CensusRow::ratio() const { return safe_div(Rational(exact_count), predicted); }
Rational CensusRow::alt_ratio() const { return safe_div(Rational(exact_count), alt_predicted); }
Rational CensusRow::empirical_density() const {
  return safe_div(Rational(exact_count), Rational(population_count));
}

AsymptoticPrediction census_prediction(const CensusQuery& query) {
  const std::uint64_t q = query.field.q();
  if (const auto* d = std::get_if<DrinfeldRank>(&query.population)) {
    if (query.everywhere) return kappa_drinfeld_everywhere(q, d->r, *query.everywhere, query.finite_conditions);
    return kappa_drinfeld_finite(q, d->r, query.finite_conditions);
  }
  return kappa_wps(CurveParams::rational(q), std::get<WeightVector>(query.population));
}

CensusReport run_census(const CensusQuery& query) {
  query.validate();
  const Field& F = query.field;
  const std::uint64_t q = F.q();
  const auto w = query.weights();
  const auto* drinfeld_pop = std::get_if<DrinfeldRank>(&query.population);

  CensusReport report;
  report.field = F.spec_string();
  report.population = drinfeld_pop ? "rank=" + std::to_string(drinfeld_pop->r) : "w=" + w.to_string();
  for (const auto& [p, c] : query.finite_conditions) report.conditions.push_back(c.to_string() + "@" + p.to_string());
  report.everywhere = query.everywhere;
  report.prediction = census_prediction(query);
  const std::uint64_t alt_exponent = drinfeld_pop ? drinfeld_alt_exponent(q, drinfeld_pop->r) : w.total();

  std::vector<Prime> excluded;
  for (const auto& pc : query.finite_conditions) excluded.push_back(pc.first);

  for (std::int64_t b = query.b_min; b <= query.b_max; ++b) {
    PointEnumerator e(F, w, b, query.options);
    struct Tally {
      std::uint64_t exact = 0, population = 0;
    };
    std::vector<Tally> tallies(e.slices());
    e.run([&](std::size_t s, std::span<const Poly> g) {
      if (drinfeld_pop && g.back().is_zero()) return;
      auto& t = tallies[s];
      ++t.population;
      for (const auto& [p, c] : query.finite_conditions)
        if (!satisfies(g, p, c)) return;
      if (query.everywhere && !everywhere_stable_geq(g, *query.everywhere, excluded)) return;
      ++t.exact;
    });
    CensusRow row;
    row.b = b;
    row.exact_count = 0;
    row.population_count = 0;
    for (const auto& t : tallies) {
      row.exact_count += BigInt(static_cast<unsigned long>(t.exact));
      row.population_count += BigInt(static_cast<unsigned long>(t.population));
    }
    row.exponent_used = report.prediction.exponent;
    row.predicted = report.prediction.predicted(q, b);
    row.alt_exponent = alt_exponent;
    row.alt_predicted = report.prediction.leading *
                        rpow(Rational(BigInt(static_cast<unsigned long>(q))), static_cast<std::int64_t>(alt_exponent) * b);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string CensusReport::to_csv() const {
  std::ostringstream out;
  out << "# field=" << field << "\n# population=" << population << "\n";
  for (const auto& c : conditions) out << "# condition=" << c << "\n";
  if (everywhere) out << "# everywhere=stable>=" << *everywhere << "\n";
  out << "# prediction=" << prediction.to_json().dump() << "\n";
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.b << ',' << r.exact_count.get_str() << ',' << r.population_count.get_str() << ','
        << r.predicted.get_num().get_str() << ',' << r.predicted.get_den().get_str() << ',' << r.exponent_used << ','
        << to_decimal(r.ratio()) << ',' << to_decimal(r.empirical_density()) << ',' << r.alt_exponent << ','
        << r.alt_predicted.get_num().get_str() << ',' << r.alt_predicted.get_den().get_str() << ','
        << to_decimal(r.alt_ratio()) << ',' << to_fraction_string(r.empirical_density()) << "\n";
  }
  return out.str();
}

CensusReport CensusReport::from_csv(std::string_view text) {
  CensusReport rep;
  bool header_seen = false;
  for (const auto& raw : split(text, '\n')) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("bad metadata line '" + line + "'");
      const std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
      if (key == "field") rep.field = value;
      else if (key == "population") rep.population = value;
      else if (key == "condition") rep.conditions.push_back(value);
      else if (key == "everywhere") {
        if (!value.starts_with("stable>=")) throw ParseError("bad everywhere condition '" + value + "'");
        rep.everywhere = static_cast<int>(parse_int(value.substr(8)));
      } else if (key == "prediction") rep.prediction = AsymptoticPrediction::from_json(nlohmann::json::parse(value));
      else throw ParseError("unknown metadata key '" + key + "'");
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError("unexpected CSV header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 13) throw ParseError("CSV row has " + std::to_string(f.size()) + " fields: '" + line + "'");
    CensusRow r;
    r.b = parse_int(f[0]);
    r.exact_count = parse_bigint(f[1]);
    r.population_count = parse_bigint(f[2]);
    r.predicted = make_rational(f[3], f[4]);
    r.exponent_used = static_cast<std::uint64_t>(parse_int(f[5]));
    r.alt_exponent = static_cast<std::uint64_t>(parse_int(f[8]));
    r.alt_predicted = make_rational(f[9], f[10]);
    if (to_decimal(r.ratio()) != f[6] || to_decimal(r.empirical_density()) != f[7] ||
        to_decimal(r.alt_ratio()) != f[11] || to_fraction_string(r.empirical_density()) != f[12])
      throw ParseError("derived columns disagree with the counts in '" + line + "'");
    rep.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("missing CSV header");
  return rep;
}

nlohmann::json CensusReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"b", r.b},
                         {"exact_count", r.exact_count.get_str()},
                         {"population_count", r.population_count.get_str()},
                         {"predicted_num", r.predicted.get_num().get_str()},
                         {"predicted_den", r.predicted.get_den().get_str()},
                         {"exponent_used", r.exponent_used},
                         {"ratio_decimal", to_decimal(r.ratio())},
                         {"empirical_density_decimal", to_decimal(r.empirical_density())},
                         {"alt_exponent", r.alt_exponent},
                         {"alt_predicted_num", r.alt_predicted.get_num().get_str()},
                         {"alt_predicted_den", r.alt_predicted.get_den().get_str()},
                         {"alt_ratio_decimal", to_decimal(r.alt_ratio())},
                         {"empirical_density", to_fraction_string(r.empirical_density())}});
  }
  return nlohmann::json{{"field", field},
                        {"population", population},
                        {"conditions", conditions},
                        {"everywhere", everywhere ? nlohmann::json(*everywhere) : nlohmann::json(nullptr)},
                        {"prediction", prediction.to_json()},
                        {"rows", rows_json}};
}

CensusReport CensusReport::from_json(const nlohmann::json& j) {
  CensusReport rep;
  try {
    rep.field = j.at("field").get<std::string>();
    rep.population = j.at("population").get<std::string>();
    rep.conditions = j.at("conditions").get<std::vector<std::string>>();
    if (!j.at("everywhere").is_null()) rep.everywhere = j.at("everywhere").get<int>();
    rep.prediction = AsymptoticPrediction::from_json(j.at("prediction"));
    for (const auto& r : j.at("rows")) {
      CensusRow row;
      row.b = r.at("b").get<std::int64_t>();
      row.exact_count = parse_bigint(r.at("exact_count").get<std::string>());
      row.population_count = parse_bigint(r.at("population_count").get<std::string>());
      row.predicted = make_rational(r.at("predicted_num").get<std::string>(), r.at("predicted_den").get<std::string>());
      row.exponent_used = r.at("exponent_used").get<std::uint64_t>();
      row.alt_exponent = r.at("alt_exponent").get<std::uint64_t>();
      row.alt_predicted =
          make_rational(r.at("alt_predicted_num").get<std::string>(), r.at("alt_predicted_den").get<std::string>());
      rep.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed census JSON: ") + e.what());
  }
  return rep;
}

std::string CensusReport::to_pretty() const {
  std::ostringstream out;
  out << "census over " << field << ", " << population;
  for (const auto& c : conditions) out << ", " << c;
  if (everywhere) out << ", everywhere stable>=" << *everywhere;
  out << "\nleading coefficient " << to_fraction_string(prediction.leading) << " ~ "
      << to_decimal(prediction.leading) << ", exponent " << prediction.exponent << "\n";
  const std::vector<std::string> head{"b", "exact", "population", "density", "density~", "ratio", "alt ratio"};
  std::vector<std::vector<std::string>> cells{head};
  for (const auto& r : rows)
    cells.push_back({std::to_string(r.b), r.exact_count.get_str(), r.population_count.get_str(),
                     to_fraction_string(r.empirical_density()), to_decimal(r.empirical_density(), 6),
                     to_decimal(r.ratio(), 6), to_decimal(r.alt_ratio(), 6)});
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << row[i];
    out << "\n";
  }
  return out.str();
}

Rational residue_density_oracle(const Field& F, const Prime& p, int r, const LocalCondition& c) {
  if (r < 1) throw DomainError("rank must be positive");
  c.check_rank(r);
  const BigInt total = ipow(p.norm(), static_cast<std::uint64_t>(r));
  if (total > 1000000) throw WorkBoundError(std::log2(total.get_d()), std::log2(1e6));
  const auto residues = enumerate_polys(F, p.degree() - 1);
  const std::size_t n = residues.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  std::vector<Poly> g(static_cast<std::size_t>(r), residues[0]);
  std::uint64_t hits = 0, seen = 0;
  for (;;) {
    for (std::size_t i = 0; i < idx.size(); ++i) g[i] = residues[idx[i]];
    ++seen;
    if (c.holds(classify(g, p), r)) ++hits;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  Rational out(BigInt(static_cast<unsigned long>(hits)), BigInt(static_cast<unsigned long>(seen)));
  out.canonicalize();
  return out;
}

std::vector<std::optional<double>> log_increments(std::uint64_t q, const std::vector<BigInt>& counts) {
  std::vector<std::optional<double>> out;
  const double lq = std::log(static_cast<double>(q));
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
    if (counts[i] <= 0 || counts[i + 1] <= 0) {
      out.emplace_back();
      continue;
    }
    // log of a big integer through mpz_get_d_2exp keeps full range
    auto log_big = [](const BigInt& n) {
      long e = 0;
      const double m = mpz_get_d_2exp(&e, n.get_mpz_t());
      return std::log(m) + static_cast<double>(e) * std::log(2.0);
    };
    out.emplace_back((log_big(counts[i + 1]) - log_big(counts[i])) / lq);
  }
  return out;
}

std::vector<ConvergenceRow> convergence_table(const CensusReport& report, std::uint64_t q) {
  std::vector<BigInt> counts;
  for (const auto& r : report.rows) counts.push_back(r.exact_count);
  const auto inc = log_increments(q, counts);
  std::vector<ConvergenceRow> out;
  for (std::size_t i = 0; i < report.rows.size(); ++i)
    out.push_back({report.rows[i].b, report.rows[i].ratio(), i < inc.size() ? inc[i] : std::nullopt});
  return out;
}

std::vector<ConvergenceRow> convergence_table(const CensusQuery& query) {
  if (query.b_max - query.b_min < 1) throw DomainError("convergence needs at least two heights");
  return convergence_table(run_census(query), query.field.q());
}

ExponentVerdict adjudicate_exponent(const std::vector<std::optional<double>>& increments,
                                    const std::vector<std::uint64_t>& candidates) {
  if (candidates.empty()) throw DomainError("no candidate exponents");
  auto last = std::find_if(increments.rbegin(), increments.rend(), [](const auto& v) { return v.has_value(); });
  if (last == increments.rend()) throw DomainError("no increment to compare");
  ExponentVerdict best{candidates.front(), std::abs(**last - static_cast<double>(candidates.front()))};
  for (auto c : candidates) {
    const double d = std::abs(**last - static_cast<double>(c));
    if (d < best.distance) best = {c, d};
  }
  return best;
}

}  // namespace drinfeld
