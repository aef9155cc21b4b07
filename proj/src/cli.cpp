#include "sheafbetti/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sheafbetti/blowup.hpp"
#include "sheafbetti/checks.hpp"
#include "sheafbetti/invariants.hpp"
#include "sheafbetti/modular.hpp"
#include "sheafbetti/series_json.hpp"
#include "sheafbetti/wallcross.hpp"

#ifndef SHEAFBETTI_VERSION
#define SHEAFBETTI_VERSION "0.0.0"
#endif

namespace sheafbetti::cli {

namespace {

// Invalid user input; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::vector<std::string> notes;
  nlohmann::json json;
  std::string text;
  std::string csv;
};

SurfaceKind parse_surface(const std::string& s) {
  if (s == "ruled") return SurfaceKind::Ruled;
  if (s == "p2") return SurfaceKind::P2;
  throw ConfigError("unknown surface '" + s + "' (use ruled or p2)");
}

std::string surface_name(SurfaceKind s) { return s == SurfaceKind::Ruled ? "ruled" : "p2"; }

std::string config_line(const RunConfig& cfg, const DivisorClass* c1, const Polarization* j) {
  std::ostringstream os;
  os << cfg.command;
  if (cfg.command == "series" || cfg.command == "betti" || cfg.command == "walls") {
    os << " rank=" << cfg.rank;
    if (c1) os << " c1=" << c1->to_string();
  }
  if (cfg.command == "series") {
    os << " surface=" << cfg.surface;
    if (j) os << " polarization=" << j->m << "," << j->n;
    os << " order=" << cfg.order << " refined=" << (cfg.refined ? "true" : "false");
  }
  if (cfg.command == "betti") os << " c2=" << cfg.c2_range;
  if (cfg.command == "walls") os << " bound=" << cfg.bound;
  if (cfg.command == "check") {
    if (cfg.check_order) os << " order=" << *cfg.check_order;
    for (const auto& o : cfg.only) os << " only=" << o;
  }
  return os.str();
}

nlohmann::json provenance(const std::string& config, const std::string& cutoff) {
  nlohmann::json p = {{"tool", "sheafbetti"}, {"version", SHEAFBETTI_VERSION}, {"config", config}};
  p["cutoff"] = cutoff.empty() ? nlohmann::json(nullptr) : nlohmann::json(cutoff);
  return p;
}

std::string header_lines(const std::string& config, const std::string& cutoff, const std::vector<std::string>& notes) {
  std::string h = std::string("# sheafbetti ") + SHEAFBETTI_VERSION + "\n# config: " + config + "\n";
  if (!cutoff.empty()) h += "# cutoff: " + cutoff + "\n";
  for (const auto& n : notes) h += "# note: " + n + "\n";
  return h;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string exponent_label(const Rational& base, long k) {
  std::string s = "q^(" + base.to_string();
  s += k < 0 ? "-" + std::to_string(-k) : "+" + std::to_string(k);
  return s + ")";
}

// ---- series ----

template <class R>
InvariantSeries compute_series(const RunConfig& cfg, SurfaceKind surface, const DivisorClass& c1,
                               const Polarization& j, QExponent cut) {
  const bool p2 = surface == SurfaceKind::P2;
  InvariantSeries out;
  out.rank = cfg.rank;
  out.c1 = c1;
  out.surface = surface;
  out.refined = cfg.refined;
  if (!p2) out.polarization = j;

  if (cfg.rank == 1) {
    if (p2 && cfg.refined) throw ConfigError("refined rank 1 is only available on the ruled surface");
    WallCrossing<R> wc(SurfaceModel::of(surface));
    out.series = wc.h1(cut);
    return out;
  }

  WallCrossing<R> wc;
  if (!p2) {
    if (cfg.rank == 2) {
      try {
        out.series = wc.h2_at(c1, j, cut);
      } catch (const std::domain_error& e) {
        throw ConfigError(std::string("unsupported combination: ") + e.what());
      }
    } else {
      if (!(reduce_c1(3, c1).representative == DivisorClass::ruled(-1, -1))) {
        throw ConfigError("rank 3 is available for c1 = -C-f mod 3 only");
      }
      out.series = wc.h3(j, cut);
    }
    if (j == Polarization(0, 1)) out.notes.push_back("J_{0,1} bounds the empty chamber; the series vanishes");
    return out;
  }

  // P^2 through the blow-up relation from J_{1,0}
  const QExponent ruled_cut = cut + QExponent::integer(1);
  InvariantSeries ruled;
  ruled.rank = cfg.rank;
  ruled.surface = SurfaceKind::Ruled;
  ruled.polarization = Polarization(1, 0);
  ruled.refined = cfg.refined;
  if (cfg.rank == 2) {
    ruled.c1 = ruled_class(c1, 0);
    ruled.series = wc.h2_at(ruled.c1, Polarization(1, 0), ruled_cut);
  } else {
    const long m = mod_floor(c1.x, 3);
    if (m == 0) throw ConfigError("rank 3 on P^2 with c1 = 0 mod 3 is not determined by the wall-crossing sums");
    ruled.c1 = DivisorClass::ruled(-1, -1);
    ruled.series = wc.h3(Polarization(1, 0), ruled_cut);
    if (m == 1) out.notes.push_back("h_{3,H} = h_{3,-H} by duality");
  }
  const InvariantSeries down = to_p2(ruled);
  out.notes.insert(out.notes.end(), down.notes.begin(), down.notes.end());
  out.series = require_through(std::get<PuiseuxSeries<R>>(down.series), cut);
  return out;
}

template <class R>
void render_series(const PuiseuxSeries<R>& s, const Rational& base, Output& o) {
  std::ostringstream text;
  std::ostringstream csv;
  csv << "exponent,c2,coefficient\n";
  for (const auto& [e, c] : s.terms()) {
    const long k = (e.to_rational() - base).to_long();
    std::ostringstream coeff;
    coeff << c;
    text << exponent_label(base, k) << ": " << coeff.str() << "\n";
    csv << e.to_string() << "," << k << "," << csv_cell(coeff.str()) << "\n";
  }
  o.text = text.str();
  o.csv = csv.str();
  o.json["series"] = to_json_value(s);
}

Output cmd_series(const RunConfig& cfg) {
  if (cfg.rank < 1 || cfg.rank > 3) throw ConfigError("rank must be 1, 2 or 3");
  if (cfg.order < 0) throw ConfigError("order must be nonnegative");
  const SurfaceKind surface = parse_surface(cfg.surface);
  const bool p2 = surface == SurfaceKind::P2;
  if (p2 && cfg.polarization) throw ConfigError("P^2 has a single polarization; drop --polarization");
  const std::string c1_text = cfg.c1.value_or(cfg.rank == 1 ? "0" : (p2 ? "-H" : "-C-f"));
  DivisorClass c1;
  Polarization j;
  try {
    c1 = parse_divisor(c1_text, surface);
    j = parse_polarization(cfg.polarization.value_or("1,0"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Rational base = base_exponent(cfg.rank, c1, SurfaceModel::of(surface));
  const QExponent cut = QExponent::from_rational(base + Rational(cfg.order));
  const InvariantSeries s = cfg.refined ? compute_series<WRational>(cfg, surface, c1, j, cut)
                                        : compute_series<Rational>(cfg, surface, c1, j, cut);
  Output o;
  o.notes = s.notes;
  std::visit([&](const auto& ser) { render_series(ser, base, o); }, s.series);
  if (std::visit([](const auto& ser) { return ser.is_zero(); }, s.series)) {
    o.notes.push_back("empty series through the cutoff");
  }
  const std::string config = config_line(cfg, &c1, p2 ? nullptr : &j);
  const std::string cutoff = exponent_label(base, cfg.order);
  o.json["rank"] = cfg.rank;
  o.json["c1"] = c1.to_string();
  o.json["surface"] = surface_name(surface);
  o.json["polarization"] = p2 ? nlohmann::json(nullptr) : nlohmann::json({j.m, j.n});
  o.json["refined"] = cfg.refined;
  o.json["base_exponent"] = base.to_string();
  o.json["notes"] = o.notes;
  o.json["provenance"] = provenance(config, cut.to_string());
  const std::string head = header_lines(config, cutoff + " = q^" + cut.to_string(), o.notes);
  o.text = head + o.text;
  o.csv = head + o.csv;
  return o;
}

// ---- betti ----

std::pair<long, long> parse_range(const std::string& s) {
  auto parse_long = [&](const std::string& t) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (t.empty() || pos != t.size()) throw ConfigError("malformed c2 range '" + s + "' (use 4 or 2..6)");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const long v = parse_long(s);
    return {v, v};
  }
  const long lo = parse_long(s.substr(0, dots));
  const long hi = parse_long(s.substr(dots + 2));
  if (lo > hi) throw ConfigError("empty c2 range '" + s + "'");
  return {lo, hi};
}

Output cmd_betti(const RunConfig& cfg) {
  const SurfaceKind surface = parse_surface(cfg.surface);
  const DivisorClass c1 = parse_divisor(cfg.c1.value_or("-H"), SurfaceKind::P2);
  if (cfg.rank != 3 || surface != SurfaceKind::P2 || !(c1 == DivisorClass::p2(-1))) {
    throw ConfigError("betti tables are available for rank 3, c1 = -H on p2 only");
  }
  const auto [lo, hi] = parse_range(cfg.c2_range);
  if (lo < 2) throw ConfigError("the moduli space is empty for c2 < 2");
  WallCrossing<WRational> wc;
  const QExponent ruled_cut = QExponent::from_rational(Rational(-5, 6) + Rational(hi));
  InvariantSeries ruled;
  ruled.rank = 3;
  ruled.c1 = DivisorClass::ruled(-1, -1);
  ruled.polarization = Polarization(1, 0);
  ruled.refined = true;
  ruled.series = wc.h3(Polarization(1, 0), ruled_cut);
  const InvariantSeries p2 = to_p2(ruled);
  const BettiTable table = betti_table(std::get<WSeries>(p2.series), lo, hi);

  Output o;
  if (hi > kReferenceMaxC2) {
    o.notes.push_back("rows with c2 > " + std::to_string(kReferenceMaxC2) + " are extrapolated beyond the reference range");
  }
  const std::string config = config_line(cfg, &c1, nullptr);
  const std::string cutoff = "c2 <= " + std::to_string(hi);
  const std::string head = header_lines(config, cutoff, o.notes);
  o.text = head + table.to_text();
  o.csv = head + table.to_csv();
  o.json = {{"provenance", provenance(config, cutoff)}, {"notes", o.notes}, {"table", table.to_json()}};
  return o;
}

// ---- walls ----

Output cmd_walls(const RunConfig& cfg) {
  if (cfg.rank != 2 && cfg.rank != 3) throw ConfigError("walls are listed for rank 2 or 3");
  const DivisorClass c1 = parse_divisor(cfg.c1.value_or("-C-f"), SurfaceKind::Ruled);
  const DivisorClass rep = reduce_c1(cfg.rank, c1).representative;
  WallFamily family;
  if (cfg.rank == 2) {
    if (rep.x != -1) throw ConfigError("rank-2 walls are listed for c1 = -C - alpha f");
    family = WallFamily::rank2(static_cast<int>(-rep.y));
  } else {
    if (!(rep == DivisorClass::ruled(-1, -1))) throw ConfigError("rank-3 walls are listed for c1 = -C-f");
    family = WallFamily::rank3();
  }
  Rational bound;
  try {
    bound = Rational::parse(cfg.bound);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const std::vector<Wall> walls = walls_for(family, bound);
  Output o;
  nlohmann::json list = nlohmann::json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "a,b,ratio_m,ratio_n,pairing,shift\n";
  for (const Wall& w : walls) {
    list.push_back({{"a", w.a},
                    {"b", w.b},
                    {"ratio", std::to_string(w.ratio_m) + ":" + std::to_string(w.ratio_n)},
                    {"m", w.ratio_m},
                    {"n", w.ratio_n},
                    {"pairing", w.pairing},
                    {"shift", w.shift.to_string()}});
    text << "a=" << w.a << " b=" << w.b << " ratio=" << w.ratio_m << ":" << w.ratio_n << " pairing=" << w.pairing
         << " shift=" << w.shift << "\n";
    csv << w.a << "," << w.b << "," << w.ratio_m << "," << w.ratio_n << "," << w.pairing << "," << w.shift << "\n";
  }
  const std::string config = config_line(cfg, &c1, nullptr);
  const std::string cutoff = "shift <= " + bound.to_string();
  o.json = {{"provenance", provenance(config, bound.to_string())}, {"walls", list}};
  const std::string head = header_lines(config, cutoff, o.notes);
  o.text = head + text.str();
  o.csv = head + csv.str();
  return o;
}

// ---- check ----

Output cmd_check(const RunConfig& cfg, bool& all_passed) {
  CheckOptions opts;
  opts.only = cfg.only;
  opts.order = cfg.check_order;
  if (opts.order && *opts.order < 0) throw ConfigError("order must be nonnegative");
  std::vector<CheckResult> results;
  try {
    results = run_checks(opts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  all_passed = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
  Output o;
  if (std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.reduced; })) {
    o.notes.push_back("reduced coverage: some checks ran below their acceptance depth");
  }
  const std::string config = config_line(cfg, nullptr, nullptr);
  std::string body;
  for (const CheckResult& r : results) body += format_check_line(r) + "\n";
  body += all_passed ? "all checks passed\n" : "some checks FAILED\n";
  o.text = header_lines(config, "", o.notes) + body;
  o.csv = o.text;
  o.json = checks_to_json(results);
  o.json["provenance"] = provenance(config, "");
  o.json["notes"] = o.notes;
  return o;
}

long cache_bound(const RunConfig& cfg) {
  const long depth = cfg.command == "check" ? cfg.check_order.value_or(12) : std::max(cfg.order, 0L);
  return 4 * (depth + 6) + 3;
}

void attach_cache(const RunConfig& cfg) {
  const char* dir = std::getenv(kCacheEnv);
  if (!dir || !*dir) return;
  use_hurwitz_cache(std::make_shared<const HurwitzCache>(HurwitzCache::load_or_build(dir, cache_bound(cfg))));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Generating functions of Euler and Betti numbers of moduli of sheaves on the blown-up plane and P^2",
               "sheafbetti"};
  app.set_version_flag("--version", SHEAFBETTI_VERSION);
  app.require_subcommand(1);

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("-o,--output", cfg.output, "write to this file instead of stdout");
  };
  auto add_class = [&](CLI::App* sub) {
    sub->add_option("--rank", cfg.rank, "rank r");
    sub->add_option("--c1", cfg.c1, "first Chern class, e.g. -C-f or -H");
  };

  CLI::App* series = app.add_subcommand("series", "print a generating function");
  add_class(series);
  series->add_option("--surface", cfg.surface, "ruled or p2");
  series->add_option("--polarization", cfg.polarization, "m,n for J = m(C+f) + nf");
  series->add_option("--order", cfg.order, "cutoff above the c2 = 0 exponent")->capture_default_str();
  series->add_flag("--refined", cfg.refined, "refined (Betti) invariants");
  add_output(series);

  CLI::App* betti = app.add_subcommand("betti", "Betti table for rank 3, c1 = -H on P^2");
  add_class(betti);
  betti->add_option("--surface", cfg.surface, "p2");
  betti->add_option("--c2", cfg.c2_range, "c2 or a range lo..hi")->capture_default_str();
  add_output(betti);

  CLI::App* walls = app.add_subcommand("walls", "walls of marginal stability up to an exponent bound");
  add_class(walls);
  walls->add_option("--bound", cfg.bound, "largest q-shift, e.g. 9/4")->capture_default_str();
  add_output(walls);

  CLI::App* check = app.add_subcommand("check", "run the acceptance checks");
  check->add_option("--only", cfg.only, "check id or name, repeatable");
  check->add_option("--order", cfg.check_order, "cap every check at this depth");
  add_output(check);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SHEAFBETTI_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.command == "walls" && chosen->get_option("--rank")->count() == 0) cfg.rank = 2;
  if (cfg.command == "betti" && chosen->get_option("--surface")->count() == 0) cfg.surface = "p2";

  int code = kExitOk;
  Output o;
  std::string format = cfg.format;
  try {
    attach_cache(cfg);
    if (cfg.command == "series") {
      o = cmd_series(cfg);
      if (format.empty()) format = "text";
    } else if (cfg.command == "betti") {
      o = cmd_betti(cfg);
      if (format.empty()) format = "csv";
    } else if (cfg.command == "walls") {
      o = cmd_walls(cfg);
      if (format.empty()) format = "json";
    } else {
      bool passed = false;
      o = cmd_check(cfg, passed);
      if (format.empty()) format = "text";
      if (!passed) code = kExitCheckFailed;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << " (raise --order)\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  std::string payload;
  if (format == "json") {
    payload = o.json.dump(2) + "\n";
  } else if (format == "csv") {
    payload = o.csv;
  } else {
    payload = o.text;
  }
  if (cfg.output.empty()) {
    out << payload;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.output << "\n";
      return kExitConfig;
    }
    file << payload;
  }
  return code;
}

}  // namespace sheafbetti::cli
