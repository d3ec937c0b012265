#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bucketrank/bucket_order.hpp"
#include "bucketrank/distribution.hpp"
#include "bucketrank/marginals.hpp"
#include "bucketrank/search.hpp"

namespace bucketrank::io {

// All text formats use 1-based item ids and list orderings best first.

enum class RankingFormat {
  /// PrefLib strict-order-complete. Legacy layout: item count, one "id,name"
  /// line per item, a "voters,total,unique" line, then "count,o1,...,on".
  /// The newer layout ("# NUMBER ALTERNATIVES: n" metadata and
  /// "count: o1,...,on" rows) is accepted as well.
  soc,
  /// One ordering per line, "o1,...,on", with an optional "weight:" prefix.
  rankcsv,
};

RankingFormat parse_ranking_format(std::string_view name);

RankingDataset read_rankings(std::istream& in, RankingFormat format);
RankingDataset load_rankings(const std::filesystem::path& path, RankingFormat format);
/// SOC output requires integral weights.
void write_rankings(std::ostream& out, const RankingDataset& data, RankingFormat format);

/// Rows "winner,loser[,weight]". A "# n=<count>" directive fixes the item
/// count, otherwise it is the largest id seen. A leading "winner,..." header is skipped.
PairwiseDataset read_pairwise(std::istream& in);
PairwiseDataset load_pairwise(const std::filesystem::path& path);
void write_pairwise(std::ostream& out, const PairwiseDataset& data);

/// Raw car-preference rows "user,item1,item2[,control]" with item1 preferred;
/// rows with a non-zero control flag are dropped. A non-numeric first row is
/// treated as a header.
PairwiseDataset read_cars_raw(std::istream& in);

/// "{1,2}|{3,4}" (whitespace-insensitive) over n items.
BucketOrder parse_bucket_order(std::string_view text, std::size_t n);
std::string format_bucket_order(const BucketOrder& order);

/// "2,3,1" or "2-3-1".
Shape parse_shape(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Ordering as 1-based comma-separated ids.
std::string format_ordering(const Ranking& sigma);

/// Scan table: "# schema=1", then header K,shape,distortion,dimension,log10_dimension.
/// `dimension` is left empty past 64 bits.
void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows);
void write_scan_header(std::ostream& out);
void write_scan_row(std::ostream& out, const ScanRow& row);

/// One candidate per line: a shape, optionally followed by
/// "exhaustive", "segment" or "auto". '#' starts a comment.
std::vector<Candidate> read_candidates(std::istream& in);

/// Writes through a temporary sibling then renames over `path`.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace bucketrank::io
