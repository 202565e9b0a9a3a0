#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewgeo {

/// A set of support points: the exact value `k`, the closed range `a-b`, or the open tail `a+`.
struct Bin {
    std::uint64_t lo = 0;
    std::optional<std::uint64_t> hi;  // nullopt means open tail [lo, inf)

    static Bin exact(std::uint64_t k) { return {k, k}; }
    static Bin range(std::uint64_t a, std::uint64_t b) { return {a, b}; }
    static Bin tail(std::uint64_t a) { return {a, std::nullopt}; }

    bool is_exact() const { return hi && *hi == lo; }
    bool is_open() const { return !hi.has_value(); }
    bool contains(std::uint64_t x) const { return x >= lo && (!hi || x <= *hi); }

    std::string to_string() const;
    static Bin parse(const std::string& text);  // throws std::invalid_argument

    friend bool operator==(const Bin&, const Bin&) = default;
};

struct FrequencyRow {
    Bin bin;
    std::uint64_t count = 0;
};

class DegenerateDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Observed counts as disjoint, ascending bins; at most one open tail, and it is last.
class CountData {
  public:
    explicit CountData(std::vector<FrequencyRow> rows);

    static CountData from_observations(std::span<const std::uint64_t> observations);

    const std::vector<FrequencyRow>& rows() const { return rows_; }
    std::uint64_t n() const { return n_; }

    /// True when some row with a positive count is a range or an open tail.
    bool is_grouped() const;

    /// Sample mean; only defined for ungrouped data.
    double mean() const;

    /// Every observation sits at x = 0.
    bool all_zero() const;

  private:
    std::vector<FrequencyRow> rows_;
    std::uint64_t n_ = 0;
};

/// Line-numbered parse failure of a frequency file.
class FrequencyFileError : public std::runtime_error {
  public:
    FrequencyFileError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// `bin,count` CSV with a mandatory header line.
CountData read_frequency_file(std::istream& in);
CountData read_frequency_file(const std::string& path);
void write_frequency_file(std::ostream& out, const CountData& data);

/// Comma-separated bin list, e.g. "0,1,2-4,5+".
std::vector<Bin> parse_bin_spec(const std::string& spec);

}  // namespace skewgeo
