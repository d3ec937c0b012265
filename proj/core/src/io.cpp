#include "bucketrank/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>

#include "bucketrank/errors.hpp"

namespace bucketrank::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::optional<std::size_t> to_size(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::size_t need_size(std::string_view s, std::size_t line, const char* what) {
  const auto v = to_size(s);
  if (!v) throw ParseError(std::string("expected ") + what + ", got '" + std::string(s) + "'", line);
  return *v;
}

Item need_id(std::string_view s, std::size_t line) {
  const std::size_t id = need_size(s, line, "an item id");
  if (id == 0) throw ParseError("item ids start at 1", line);
  return id - 1;
}

double need_weight(std::string_view s, std::size_t line) {
  const auto v = to_double(s);
  if (!v || !std::isfinite(*v) || *v < 0.0) {
    throw ParseError("expected a non-negative weight, got '" + std::string(s) + "'", line);
  }
  return *v;
}

// Reads a complete best-first ordering of n items (n == 0: take the length).
Ranking parse_ordering(std::string_view text, std::size_t n, std::size_t line) {
  if (text.find('{') != std::string_view::npos) {
    throw ParseError("tied items are not supported", line);
  }
  const auto fields = split(text, ',');
  if (n != 0 && fields.size() != n) {
    throw ParseError("expected a complete ranking of " + std::to_string(n) + " items, got " +
                         std::to_string(fields.size()),
                     line);
  }
  const std::size_t size = fields.size();
  std::vector<Item> ordering;
  std::vector<bool> seen(size, false);
  for (auto f : fields) {
    const Item id = need_id(f, line);
    if (id >= size) throw ParseError("item id " + std::to_string(id + 1) + " out of range", line);
    if (seen[id]) throw ParseError("item " + std::to_string(id + 1) + " listed twice", line);
    seen[id] = true;
    ordering.push_back(id);
  }
  return Ranking::from_ordering(std::move(ordering));
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

RankingDataset read_soc_modern(std::istream& in, std::string first, std::size_t first_no) {
  std::optional<std::size_t> n;
  RankingDataset data;
  std::string raw = std::move(first);
  std::size_t line_no = first_no;
  do {
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view key = "NUMBER ALTERNATIVES:";
      const auto body = trim(line.substr(1));
      if (body.substr(0, key.size()) == key) {
        n = need_size(body.substr(key.size()), line_no, "an item count");
        data = RankingDataset(*n);
      }
      continue;
    }
    if (!n) throw ParseError("missing '# NUMBER ALTERNATIVES' header", line_no);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'count: ranking'", line_no);
    const std::size_t count = need_size(line.substr(0, colon), line_no, "a positive count");
    if (count == 0) throw ParseError("counts must be positive", line_no);
    data.add(parse_ordering(line.substr(colon + 1), *n, line_no), static_cast<double>(count));
  } while (++line_no, std::getline(in, raw));
  if (!n) throw ParseError("missing '# NUMBER ALTERNATIVES' header");
  return data;
}

RankingDataset read_soc(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!trim(raw).empty()) break;
  }
  if (trim(raw).empty()) throw ParseError("empty SOC input");
  if (trim(raw).front() == '#') return read_soc_modern(in, raw, line_no);

  auto next_line = [&](const char* what) {
    if (!std::getline(in, raw)) throw ParseError(std::string("unexpected end of input, expected ") + what);
    ++line_no;
    return trim(raw);
  };

  const std::size_t n = need_size(trim(raw), line_no, "the item count");
  if (n == 0) throw ParseError("item count must be positive", line_no);
  for (std::size_t k = 0; k < n; ++k) {
    const auto line = next_line("an item name line");
    const auto fields = split(line, ',');
    if (fields.size() < 2 || need_size(fields[0], line_no, "an item id") != k + 1) {
      throw ParseError("expected '" + std::to_string(k + 1) + ",<name>'", line_no);
    }
  }
  {
    const auto fields = split(next_line("the voter summary line"), ',');
    if (fields.size() != 3) throw ParseError("expected 'voters,total,unique'", line_no);
    for (auto f : fields) need_size(f, line_no, "a count");
  }
  RankingDataset data(n);
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected 'count,ranking'", line_no);
    const std::size_t count = need_size(line.substr(0, comma), line_no, "a positive count");
    if (count == 0) throw ParseError("counts must be positive", line_no);
    data.add(parse_ordering(line.substr(comma + 1), n, line_no), static_cast<double>(count));
  }
  return data;
}

RankingDataset read_rankcsv(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<RankingDataset> data;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (skippable(line)) continue;
    double weight = 1.0;
    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      weight = need_weight(line.substr(0, colon), line_no);
      line = line.substr(colon + 1);
    }
    Ranking sigma = parse_ordering(line, data ? data->n() : 0, line_no);
    if (!data) data.emplace(sigma.size());
    data->add(std::move(sigma), weight);
  }
  if (!data) throw ParseError("no rankings in input");
  return std::move(*data);
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

bool is_number(std::string_view s) { return to_double(s).has_value(); }

}  // namespace

RankingFormat parse_ranking_format(std::string_view name) {
  if (name == "soc") return RankingFormat::soc;
  if (name == "rankcsv") return RankingFormat::rankcsv;
  throw InvalidInput("unknown ranking format '" + std::string(name) + "'");
}

RankingDataset read_rankings(std::istream& in, RankingFormat format) {
  return format == RankingFormat::soc ? read_soc(in) : read_rankcsv(in);
}

RankingDataset load_rankings(const std::filesystem::path& path, RankingFormat format) {
  auto in = open(path);
  return read_rankings(in, format);
}

void write_rankings(std::ostream& out, const RankingDataset& data, RankingFormat format) {
  if (format == RankingFormat::rankcsv) {
    for (const auto& [sigma, weight] : data.entries()) {
      if (weight != 1.0) out << format_double(weight) << ':';
      out << format_ordering(sigma) << '\n';
    }
    return;
  }
  for (const auto& entry : data.entries()) {
    if (entry.weight != std::floor(entry.weight) || entry.weight < 1.0) {
      throw InvalidInput("SOC output needs positive integral weights");
    }
  }
  out << data.n() << '\n';
  for (std::size_t k = 1; k <= data.n(); ++k) out << k << ",Item " << k << '\n';
  const auto total = static_cast<std::uint64_t>(data.total_weight());
  out << total << ',' << total << ',' << data.size() << '\n';
  for (const auto& [sigma, weight] : data.entries()) {
    out << static_cast<std::uint64_t>(weight) << ',' << format_ordering(sigma) << '\n';
  }
}

PairwiseDataset read_pairwise(std::istream& in) {
  std::optional<std::size_t> declared;
  std::vector<Comparison> rows;
  std::size_t largest = 0;
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      if (body.substr(0, 2) == "n=") declared = need_size(body.substr(2), line_no, "an item count");
      continue;
    }
    const auto fields = split(line, ',');
    if (first && fields[0] == "winner") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("expected 'winner,loser[,weight]'", line_no);
    }
    Comparison c;
    c.winner = need_id(fields[0], line_no);
    c.loser = need_id(fields[1], line_no);
    if (c.winner == c.loser) throw ParseError("an item cannot be compared with itself", line_no);
    c.weight = fields.size() == 3 ? need_weight(fields[2], line_no) : 1.0;
    largest = std::max({largest, c.winner + 1, c.loser + 1});
    rows.push_back(c);
  }
  const std::size_t n = declared.value_or(largest);
  if (largest > n) throw ParseError("item id exceeds the declared count n=" + std::to_string(n));
  PairwiseDataset data(n);
  for (const auto& c : rows) data.add(c.winner, c.loser, c.weight);
  return data;
}

PairwiseDataset load_pairwise(const std::filesystem::path& path) {
  auto in = open(path);
  return read_pairwise(in);
}

void write_pairwise(std::ostream& out, const PairwiseDataset& data) {
  out << "# n=" << data.n() << "\nwinner,loser,weight\n";
  for (const auto& c : data.comparisons()) {
    out << c.winner + 1 << ',' << c.loser + 1 << ',' << format_double(c.weight) << '\n';
  }
}

PairwiseDataset read_cars_raw(std::istream& in) {
  std::vector<std::pair<Item, Item>> rows;
  std::size_t largest = 0;
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (skippable(line)) continue;
    const auto fields = split(line, ',');
    if (first && !is_number(fields[0])) {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError("expected 'user,item1,item2[,control]'", line_no);
    }
    need_size(fields[0], line_no, "a user id");
    if (fields.size() == 4 && need_size(fields[3], line_no, "a control flag") != 0) continue;
    const Item a = need_id(fields[1], line_no);
    const Item b = need_id(fields[2], line_no);
    if (a == b) throw ParseError("an item cannot be compared with itself", line_no);
    largest = std::max({largest, a + 1, b + 1});
    rows.emplace_back(a, b);
  }
  PairwiseDataset data(largest);
  for (const auto& [a, b] : rows) data.add(a, b);
  return data;
}

BucketOrder parse_bucket_order(std::string_view text, std::size_t n) {
  std::vector<std::vector<Item>> buckets;
  for (auto part : split(text, '|')) {
    if (part.size() >= 2 && part.front() == '{' && part.back() == '}') {
      part = trim(part.substr(1, part.size() - 2));
    }
    if (part.empty()) throw ParseError("empty bucket in '" + std::string(text) + "'");
    std::vector<Item> bucket;
    for (auto id : split(part, ',')) {
      const auto v = to_size(id);
      if (!v || *v == 0) throw ParseError("bad item id '" + std::string(id) + "' in bucket order");
      bucket.push_back(*v - 1);
    }
    buckets.push_back(std::move(bucket));
  }
  return BucketOrder::from_buckets(std::move(buckets), n);
}

std::string format_bucket_order(const BucketOrder& order) {
  std::string out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) out += '|';
    out += '{';
    bool first = true;
    for (Item i : order.bucket(k)) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(i + 1);
    }
    out += '}';
  }
  return out;
}

Shape parse_shape(std::string_view text) {
  const char sep = text.find('-') != std::string_view::npos ? '-' : ',';
  std::vector<std::size_t> parts;
  for (auto f : split(trim(text), sep)) {
    const auto v = to_size(f);
    if (!v) throw ParseError("bad shape '" + std::string(text) + "'");
    parts.push_back(*v);
  }
  return Shape(std::move(parts));
}

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string format_ordering(const Ranking& sigma) {
  std::string out;
  for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
    if (pos > 0) out += ',';
    out += std::to_string(sigma.item_at(pos) + 1);
  }
  return out;
}

void write_scan_header(std::ostream& out) {
  out << "# schema=1\nK,shape,distortion,dimension,log10_dimension\n";
}

void write_scan_row(std::ostream& out, const ScanRow& row) {
  out << row.shape.size() << ',' << row.shape.to_string() << ',' << format_double(row.distortion)
      << ',';
  if (const auto d = row.dimension.as_u64()) out << *d;
  out << ',' << format_double(row.dimension.log10) << '\n';
}

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows) {
  write_scan_header(out);
  for (const auto& row : rows) write_scan_row(out, row);
}

std::vector<Candidate> read_candidates(std::istream& in) {
  std::vector<Candidate> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream words{std::string(line)};
    std::string shape;
    std::string strategy;
    std::string extra;
    words >> shape >> strategy >> extra;
    if (!extra.empty()) throw ParseError("expected '<shape> [exhaustive|segment|auto]'", line_no);
    Candidate c;
    try {
      c.shape = parse_shape(shape);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
    if (strategy.empty() || strategy == "auto") {
      c.strategy = Strategy::automatic;
    } else if (strategy == "exhaustive") {
      c.strategy = Strategy::exhaustive;
    } else if (strategy == "segment") {
      c.strategy = Strategy::segmentation;
    } else {
      throw ParseError("unknown strategy '" + strategy + "'", line_no);
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw InvalidInput("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace bucketrank::io
