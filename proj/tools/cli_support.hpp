// cli_support.hpp - configuration resolution and serialization for the
// landauer command-line tool.

#pragma once

#include "landauer/experiments.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace landauer::cli {

/// Raised for anything the user can fix on the command line (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

using KeyValues = std::map<std::string, std::string>;

/// Flat key=value pairs of the sections [scenario] and [<scenario>] of an
/// INI-style file. Other sections are ignored. '#' and ';' start comments.
KeyValues parse_ini(const std::string& text, const std::string& scenario);
KeyValues read_ini(const std::string& path, const std::string& scenario);

/// Parses repeated `key=value` strings; a key given twice is an error.
KeyValues parse_assignments(const std::vector<std::string>& items);

/// Keys accepted for a scenario: the numeric parameters plus p, t_max,
/// points, estimator, kind (examples 2 and 4), output and format.
std::vector<std::string> accepted_keys(experiments::Example e);

struct RunConfig {
    experiments::Example example = experiments::Example::example1;
    experiments::BuildRequest request;
    std::string output_path;  // empty for stdout
    Format format = Format::csv;
    bool check = false;
    bool temperatures = false;
    bool raise_fock = true;
};

/// Resolution order defaults < file < flags. `flags` holds dedicated flags and
/// --set assignments already merged.
RunConfig resolve(experiments::Example e, const KeyValues& file, const KeyValues& flags);

/// Merges dedicated flag values with --set assignments. The same key from
/// both sources is a conflict.
KeyValues merge_flags(const KeyValues& dedicated, const KeyValues& assignments);

double parse_number(const std::string& key, const std::string& text);
std::vector<double> parse_list(const std::string& key, const std::string& text);
Format parse_format(const std::string& s);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

std::vector<std::string> csv_columns(const experiments::SweepResult& r, bool temperatures);
std::string to_csv(const experiments::SweepResult& r, bool temperatures);
std::string to_json(const experiments::SweepResult& r, bool temperatures);

/// Weak-coupling rows for the Example 5 Hamiltonian with the interaction
/// scaled by eps.
std::string weak_coupling_csv(const experiments::Example5Params& p, double q1, double eps, double t_max, int points,
                              int trotter_n);

}  // namespace landauer::cli
