#pragma once

// run manifests and table serialization for the command line tool. Every
// output carries the manifest (subcommand, parameters, kernel and finder
// configuration, tool version, timestamp) so a run can be reproduced.

#include <avlab/finder.hpp>
#include <avlab/zeta.hpp>

#include <string>
#include <utility>
#include <vector>

namespace avlab {

struct RunManifest {
    std::string subcommand;
    // flag -> value as given on the command line, in insertion order
    std::vector<std::pair<std::string, std::string>> parameters;
    EvalConfig eval{};
    FinderConfig finder{};
    std::string version;
    std::string timestamp; // ISO-8601 UTC
};

// fills version and timestamp
RunManifest make_manifest(std::string subcommand,
                          std::vector<std::pair<std::string, std::string>> parameters,
                          const EvalConfig& eval = {},
                          const FinderConfig& finder = {});

struct ColumnSpec {
    std::string name;
    bool is_complex = false; // occupies two row slots and splits into re_/im_ in CSV
};

// numeric table; each row holds one double per real column and two
// consecutive doubles (re, im) per complex column
struct Table {
    std::vector<ColumnSpec> columns;
    std::vector<std::vector<double>> rows;

    std::size_t slots_per_row() const;
};

// 17 significant digits, '.' decimal separator, independent of locale
std::string format_sig(double x);

// comment header lines with the manifest, then a header row, then data
// rows; comma separated, LF line endings
std::string to_csv(const RunManifest& m, const Table& t);

// single top-level object {"manifest": ..., "rows": [...]}; complex cells
// become {"re": ..., "im": ...}; output is stable under parse + re-serialize
std::string to_json(const RunManifest& m, const Table& t);

std::string iso8601_utc_now();

} // namespace avlab
