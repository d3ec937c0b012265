#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bucketrank/bucketrank.hpp"

namespace bucketrank::cli {

namespace {

using nlohmann::ordered_json;

enum class DataFormat { automatic, soc, rankcsv, pairwise };

struct Globals {
  std::uint64_t seed = 0;
  std::string format = "auto";
  std::optional<double> fill;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::string out_path;
  std::string ties = "lex";
};

struct Data {
  std::optional<RankingDataset> rankings;
  PairwiseMatrix p;
  double total = 0.0;
};

DataFormat guess_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".soc") return DataFormat::soc;
  if (ext == ".pairs" || ext == ".pairwise") return DataFormat::pairwise;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# n=", 0) == 0 || line.rfind("winner", 0) == 0) return DataFormat::pairwise;
    if (line.front() != '#') break;
  }
  return DataFormat::rankcsv;
}

DataFormat parse_format(const std::string& name) {
  if (name == "auto") return DataFormat::automatic;
  if (name == "soc") return DataFormat::soc;
  if (name == "rankcsv") return DataFormat::rankcsv;
  if (name == "pairwise") return DataFormat::pairwise;
  throw InvalidInput("unknown format '" + name + "'");
}

Data load(const std::string& path, const Globals& g) {
  if (!std::filesystem::exists(path)) throw InvalidInput("no such file: " + path);
  DataFormat format = parse_format(g.format);
  if (format == DataFormat::automatic) format = guess_format(path);
  Data data;
  if (format == DataFormat::pairwise) {
    const auto comparisons = io::load_pairwise(path);
    data.p = pairwise_from_comparisons(comparisons);
    data.total = comparisons.total_weight();
  } else {
    data.rankings = io::load_rankings(
        path, format == DataFormat::soc ? io::RankingFormat::soc : io::RankingFormat::rankcsv);
    data.p = pairwise_from_rankings(*data.rankings);
    data.total = data.rankings->total_weight();
  }
  if (g.fill) data.p = data.p.filled(*g.fill);
  return data;
}

TieRule tie_rule(const Globals& g) {
  if (g.ties == "lex") return TieRule::lexicographic();
  if (g.ties == "random") return TieRule::random(g.seed);
  throw InvalidInput("unknown tie rule '" + g.ties + "'");
}

ordered_json ordering_json(const Ranking& sigma) {
  ordered_json out = ordered_json::array();
  for (Item i : sigma.ordering()) out.push_back(i + 1);
  return out;
}

ordered_json result_json(const SearchResult& r) {
  ordered_json out;
  out["method"] = std::string(to_string(r.method));
  out["buckets"] = io::format_bucket_order(r.order);
  out["shape"] = r.shape().to_string();
  out["K"] = r.size();
  out["distortion"] = r.distortion;
  out["dimension"] = r.dimension.exact.str();
  out["log10_dimension"] = r.dimension.log10;
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out_path.empty()) {
    out << text;
  } else {
    io::write_file_atomically(g.out_path, text);
  }
}

std::string cmd_marginals(const Data& data, bool triplets) {
  std::ostringstream s;
  s << "# schema=1\n";
  const std::size_t n = data.p.n();
  if (triplets) {
    if (!data.rankings) throw InvalidInput("triplet marginals need ranking data");
    const auto t = triplets_from_rankings(*data.rankings);
    s << "i,j,k,p\n";
    for (Item i = 0; i < n; ++i)
      for (Item j = 0; j < n; ++j)
        for (Item k = 0; k < n; ++k) {
          if (i == j || j == k || i == k) continue;
          s << i + 1 << ',' << j + 1 << ',' << k + 1 << ',' << io::format_double(t(i, j, k)) << '\n';
        }
    return s.str();
  }
  s << "i,j,p,count,imputed\n";
  for (Item i = 0; i < n; ++i)
    for (Item j = 0; j < n; ++j) {
      if (i == j) continue;
      s << i + 1 << ',' << j + 1 << ',';
      if (data.p.observed(i, j)) s << io::format_double(data.p(i, j));
      s << ',' << io::format_double(data.p.count(i, j)) << ',' << (data.p.imputed(i, j) ? 1 : 0)
        << '\n';
    }
  return s.str();
}

std::string cmd_consensus(const Data& data, const Globals& g, bool brute_force) {
  data.p.require_fully_observed();
  ordered_json j;
  j["schema"] = 1;
  j["n"] = data.p.n();
  j["N"] = data.total;
  j["copeland"] = ordering_json(copeland(data.p, tie_rule(g)));
  const auto report = transitivity_class(data.p);
  j["transitivity"] = std::string(to_string(report.cls));
  j["margin"] = report.margin;
  if (brute_force) {
    const auto solution = kemeny_brute_force(data.p);
    j["kemeny_cost"] = solution.cost;
    j["kemeny_median"] = ordering_json(solution.median);
    j["kemeny_argmin_count"] = solution.argmin.size();
  } else {
    const auto optimum = kemeny_optimum(data.p);
    j["kemeny_cost"] = optimum.cost;
    if (optimum.median) {
      j["kemeny_median"] = ordering_json(*optimum.median);
    } else {
      j["kemeny_median"] = nullptr;
    }
  }
  return dump(j);
}

std::string cmd_distortion(const Data& data, const std::string& spec) {
  const auto order = io::parse_bucket_order(spec, data.p.n());
  ordered_json j;
  j["schema"] = 1;
  j["buckets"] = io::format_bucket_order(order);
  j["shape"] = order.shape().to_string();
  j["distortion"] = lambda_kendall(order, data.p);
  j["obo_cost"] = obo_cost(order, data.p);
  if (data.rankings && data.p.n() >= 3) {
    j["spearman_distortion"] = lambda_spearman(order, triplets_from_rankings(*data.rankings));
  }
  const auto d = dimension(order);
  j["dimension"] = d.exact.str();
  j["log10_dimension"] = d.log10;
  return dump(j);
}

std::string cmd_search(const Data& data, const Globals& g, const std::string& shape_text,
                       bool exhaustive, bool segment, std::optional<std::size_t> segments) {
  SearchResult r;
  if (segments) {
    r = best_segmentation(data.p, copeland(data.p, tie_rule(g)), *segments);
  } else {
    if (shape_text.empty()) throw InvalidInput("search needs --shape or --segments");
    const Shape shape = io::parse_shape(shape_text);
    if (shape.total() != data.p.n()) {
      throw DimensionError("shape " + shape.to_string() + " does not cover " +
                           std::to_string(data.p.n()) + " items");
    }
    const bool use_exhaustive = exhaustive || (!segment && count_shape(shape) <= g.cap);
    r = use_exhaustive ? exhaustive_min(data.p, shape, g.cap)
                       : segment_result(data.p, copeland(data.p, tie_rule(g)), shape);
  }
  ordered_json j;
  j["schema"] = 1;
  j.update(result_json(r));
  return dump(j);
}

std::string cmd_bumerank(const Data& data, double eps, const std::string& dmax) {
  std::optional<BigInt> max_dimension;
  if (!dmax.empty()) {
    try {
      max_dimension = BigInt(dmax);
    } catch (const std::exception&) {
      throw InvalidInput("bad --dmax value '" + dmax + "'");
    }
  }
  const auto res = bumerank(data.p, eps, max_dimension);
  std::ostringstream s;
  s << "# schema=1\n"
    << "# buckets=" << io::format_bucket_order(res.result.order) << '\n'
    << "# distortion=" << io::format_double(res.result.distortion) << '\n'
    << "# dimension=" << res.result.dimension.exact.str() << '\n'
    << "# stop=" << to_string(res.stop) << '\n'
    << "step,merged,delta,distortion,dimension,K\n";
  for (std::size_t t = 0; t < res.trace.size(); ++t) {
    const auto& m = res.trace[t];
    s << t + 1 << ',' << m.bucket + 1 << ',' << io::format_double(m.delta) << ','
      << io::format_double(m.distortion) << ',' << m.dimension.str() << ',' << m.size << '\n';
  }
  return s.str();
}

std::string cmd_select(const Data& data, const Globals& g, const std::string& candidates_path,
                       std::size_t reps, const std::string& penalty) {
  if (!data.rankings) throw InvalidInput("select needs ranking data");
  std::ifstream in(candidates_path);
  if (!in) throw InvalidInput("cannot open " + candidates_path);
  const auto candidates = io::read_candidates(in);
  SelectionOptions options;
  options.reps = reps;
  options.seed = g.seed;
  options.cap = g.cap;
  if (penalty == "mc") {
    options.mode = PenaltyMode::monte_carlo;
  } else if (penalty == "analytic") {
    options.mode = PenaltyMode::analytic;
  } else if (penalty != "auto") {
    throw InvalidInput("unknown penalty mode '" + penalty + "'");
  }
  const auto sel = select_model(candidates, *data.rankings, options);
  ordered_json j;
  j["schema"] = 1;
  j["chosen"] = sel.index + 1;
  j["shape"] = sel.chosen().fit.shape().to_string();
  j["buckets"] = io::format_bucket_order(sel.chosen().fit.order);
  ordered_json rows = ordered_json::array();
  for (const auto& s : sel.scores) {
    ordered_json row;
    row["shape"] = s.fit.shape().to_string();
    row["method"] = std::string(to_string(s.fit.method));
    row["distortion"] = s.fit.distortion;
    row["penalty"] = s.penalty.value;
    row["penalty_std_error"] = s.penalty.std_error;
    row["penalty_mode"] = std::string(to_string(s.penalty.mode));
    row["score"] = s.score;
    rows.push_back(std::move(row));
  }
  j["candidates"] = std::move(rows);
  return dump(j);
}

BucketOrder model_order(const std::string& spec) {
  if (spec.find('{') != std::string::npos || spec.find('|') != std::string::npos) {
    std::size_t n = 0;
    for (char c : spec) n += c == ',' ? 1 : 0;
    n += 1 + static_cast<std::size_t>(std::count(spec.begin(), spec.end(), '|'));
    return io::parse_bucket_order(spec, n);
  }
  const Shape shape = io::parse_shape(spec);
  return BucketOrder::segment(Ranking::identity(shape.total()), shape);
}

std::string cmd_simulate(const Globals& g, const std::string& model, std::optional<std::size_t> n,
                         std::size_t samples, std::optional<double> contamination) {
  RankingDataset data;
  const auto colon = model.find(':');
  const std::string kind = model.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : model.substr(colon + 1);
  if (kind == "bucket-uniform") {
    const auto order = model_order(rest);
    if (n && *n != order.n()) throw InvalidInput("--n disagrees with the model's item count");
    data = sample(bucket_uniform(order), samples, g.seed);
  } else if (kind == "fixture4") {
    if (n && *n != 4) throw InvalidInput("fixture4 has 4 items");
    data = sample(four_item_fixture(), samples, g.seed);
  } else if (kind == "mallows") {
    const auto sep = rest.find(':');
    const double theta = std::stod(rest.substr(0, sep));
    Ranking center;
    if (sep != std::string::npos) {
      std::vector<Item> ordering;
      std::stringstream ids(rest.substr(sep + 1));
      std::string id;
      while (std::getline(ids, id, ',')) ordering.push_back(std::stoul(id) - 1);
      center = Ranking::from_ordering(std::move(ordering));
      if (n && *n != center.size()) throw InvalidInput("--n disagrees with the Mallows center");
    } else {
      if (!n) throw InvalidInput("mallows without a center needs --n");
      center = Ranking::identity(*n);
    }
    data = sample(Mallows(center, theta), samples, g.seed);
  } else {
    throw InvalidInput("unknown model '" + model + "'");
  }
  if (contamination) data = contaminate(data, *contamination, g.seed + 1);

  std::ostringstream s;
  const auto format = g.format == "soc" ? io::RankingFormat::soc : io::RankingFormat::rankcsv;
  if (g.format != "soc" && g.format != "rankcsv" && g.format != "auto") {
    throw InvalidInput("simulate writes soc or rankcsv");
  }
  io::write_rankings(s, data, format);
  return s.str();
}

std::string cmd_normalize_cars(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream s;
  io::write_pairwise(s, io::read_cars_raw(in));
  return s.str();
}

std::uint64_t default_cap() {
  if (const char* env = std::getenv("BUCKETRANK_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("bad BUCKETRANK_CAP value '") + env + "'");
    }
  }
  return kDefaultEnumerationCap;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Bucket order consensus and distortion analysis", "bucketrank"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--format", g.format, "Input/output format: auto, soc, rankcsv, pairwise");
  app.add_option("--fill", g.fill, "Impute unobserved pairs with this probability");
  app.add_option("--cap", g.cap, "Enumeration cap (default: $BUCKETRANK_CAP or 10^7)");
  app.add_option("--out", g.out_path, "Write the result to this file");
  app.add_option("--ties", g.ties, "Copeland tie rule: lex or random (uses --seed)");

  std::string data_path;
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("data", data_path, "Ranking or pairwise data file")->required();
  };

  auto* marginals = app.add_subcommand("marginals", "Empirical pairwise or triplet marginals (CSV)");
  add_data(marginals);
  bool triplets = false;
  marginals->add_flag("--triplets", triplets, "Emit triplet marginals instead");

  auto* consensus = app.add_subcommand("consensus", "Copeland ranking, transitivity and Kemeny cost");
  add_data(consensus);
  bool brute_force = false;
  consensus->add_flag("--brute-force", brute_force, "Solve Kemeny by enumeration");

  auto* distortion = app.add_subcommand("distortion", "Distortion of a given bucket order");
  add_data(distortion);
  std::string buckets;
  distortion->add_option("--buckets", buckets, "Bucket order, e.g. {1,2}|{3,4}")->required();

  auto* scan = app.add_subcommand("scan", "Distortion and dimension of every segmentation (CSV)");
  add_data(scan);

  auto* search = app.add_subcommand("search", "Best bucket order of a shape");
  add_data(search);
  std::string shape_text;
  bool exhaustive = false;
  bool segment = false;
  std::optional<std::size_t> segments;
  search->add_option("--shape", shape_text, "Bucket sizes, e.g. 2,3,1");
  auto* ex = search->add_flag("--exhaustive", exhaustive, "Enumerate all orders of the shape");
  search->add_flag("--segment", segment, "Segment the Copeland ranking")->excludes(ex);
  search->add_option("--segments", segments, "Best segmentation into K buckets")
      ->excludes(ex)
      ->excludes("--shape");

  auto* bume = app.add_subcommand("bumerank", "Agglomerative bucket order search");
  add_data(bume);
  double eps = 0.0;
  std::string dmax;
  bume->add_option("--eps", eps, "Distortion tolerance");
  bume->add_option("--dmax", dmax, "Largest admissible dimension");

  auto* select = app.add_subcommand("select", "Penalized selection among candidate shapes");
  add_data(select);
  std::string candidates;
  std::size_t reps = 100;
  std::string penalty = "auto";
  select->add_option("--candidates", candidates, "Candidate shapes file")->required();
  select->add_option("--reps", reps, "Monte-Carlo repetitions");
  select->add_option("--penalty", penalty, "auto, mc or analytic");

  auto* simulate = app.add_subcommand("simulate", "Sample a synthetic ranking dataset");
  std::string model;
  std::optional<std::size_t> n;
  std::size_t samples = 1000;
  std::optional<double> contamination;
  simulate->add_option("--model", model,
                       "bucket-uniform:<shape|buckets>, mallows:<theta>[:<center>] or fixture4")
      ->required();
  simulate->add_option("--n", n, "Number of items");
  simulate->add_option("--samples", samples, "Number of rankings");
  simulate->add_option("--contaminate", contamination, "Fraction of rows with one swapped pair");

  auto* cars = app.add_subcommand("normalize-cars", "Convert raw car-preference rows to pairwise CSV");
  cars->add_option("raw", data_path, "Raw file (user,item1,item2[,control])")->required();

  try {
    g.cap = default_cap();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    std::string text;
    if (*marginals) {
      text = cmd_marginals(load(data_path, g), triplets);
    } else if (*consensus) {
      text = cmd_consensus(load(data_path, g), g, brute_force);
    } else if (*distortion) {
      text = cmd_distortion(load(data_path, g), buckets);
    } else if (*scan) {
      const Data data = load(data_path, g);
      const Ranking sigma = copeland(data.p, tie_rule(g));
      std::ostringstream s;
      io::write_scan_header(s);
      for_each_segmentation(data.p, sigma, [&](const ScanRow& row) { io::write_scan_row(s, row); });
      text = s.str();
    } else if (*search) {
      text = cmd_search(load(data_path, g), g, shape_text, exhaustive, segment, segments);
    } else if (*bume) {
      text = cmd_bumerank(load(data_path, g), eps, dmax);
    } else if (*select) {
      text = cmd_select(load(data_path, g), g, candidates, reps, penalty);
    } else if (*simulate) {
      text = cmd_simulate(g, model, n, samples, contamination);
    } else if (*cars) {
      text = cmd_normalize_cars(data_path);
    }
    emit(g, out, text);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::logic_error& e) {
    err << "error: bad argument: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace bucketrank::cli
