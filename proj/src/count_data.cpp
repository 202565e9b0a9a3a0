#include "skewgeo/count_data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace skewgeo {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_uint(const std::string& text, const char* what) {
    std::uint64_t value = 0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw std::invalid_argument(std::string("invalid ") + what + " '" + text + "'");
    return value;
}

void validate_rows(const std::vector<FrequencyRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Bin& b = rows[i].bin;
        if (b.hi && *b.hi < b.lo) throw std::invalid_argument("bin " + b.to_string() + " has hi < lo");
        if (b.is_open() && i + 1 != rows.size())
            throw std::invalid_argument("open tail " + b.to_string() + " must be the last bin");
        if (i > 0) {
            const Bin& prev = rows[i - 1].bin;
            if (b.lo <= *prev.hi)
                throw std::invalid_argument("bin " + b.to_string() + " overlaps or precedes " + prev.to_string());
        }
    }
}

}  // namespace

std::string Bin::to_string() const {
    if (!hi) return std::to_string(lo) + "+";
    if (*hi == lo) return std::to_string(lo);
    return std::to_string(lo) + "-" + std::to_string(*hi);
}

Bin Bin::parse(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) throw std::invalid_argument("empty bin");
    if (text.back() == '+') return Bin::tail(parse_uint(text.substr(0, text.size() - 1), "bin"));
    const auto dash = text.find('-');
    if (dash == std::string::npos) return Bin::exact(parse_uint(text, "bin"));
    const auto a = parse_uint(text.substr(0, dash), "bin");
    const auto b = parse_uint(text.substr(dash + 1), "bin");
    if (b < a) throw std::invalid_argument("bin range '" + text + "' has upper end below lower end");
    return Bin::range(a, b);
}

CountData::CountData(std::vector<FrequencyRow> rows) : rows_(std::move(rows)) {
    validate_rows(rows_);
    for (const auto& r : rows_) n_ += r.count;
    if (n_ == 0) throw std::invalid_argument("count data must contain at least one observation");
}

CountData CountData::from_observations(std::span<const std::uint64_t> observations) {
    std::map<std::uint64_t, std::uint64_t> counts;
    for (auto x : observations) ++counts[x];
    std::vector<FrequencyRow> rows;
    rows.reserve(counts.size());
    for (auto [x, c] : counts) rows.push_back({Bin::exact(x), c});
    return CountData(std::move(rows));
}

bool CountData::is_grouped() const {
    return std::any_of(rows_.begin(), rows_.end(), [](const FrequencyRow& r) { return r.count > 0 && !r.bin.is_exact(); });
}

double CountData::mean() const {
    if (is_grouped()) throw std::logic_error("sample mean is undefined for grouped data");
    double total = 0;
    for (const auto& r : rows_) total += static_cast<double>(r.bin.lo) * static_cast<double>(r.count);
    return total / static_cast<double>(n_);
}

bool CountData::all_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const FrequencyRow& r) {
        return r.count == 0 || (r.bin.is_exact() && r.bin.lo == 0);
    });
}

CountData read_frequency_file(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<FrequencyRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            std::string compact;
            std::remove_copy_if(text.begin(), text.end(), std::back_inserter(compact), ::isspace);
            if (compact != "bin,count") throw FrequencyFileError(line_no, "expected header 'bin,count'");
            header_seen = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
            throw FrequencyFileError(line_no, "expected 'bin,count', got '" + text + "'");
        try {
            FrequencyRow row{Bin::parse(text.substr(0, comma)), parse_uint(trim(text.substr(comma + 1)), "count")};
            if (!rows.empty()) {
                const Bin& prev = rows.back().bin;
                if (prev.is_open()) throw std::invalid_argument("rows follow the open tail " + prev.to_string());
                if (row.bin.lo <= *prev.hi)
                    throw std::invalid_argument("bin " + row.bin.to_string() + " overlaps or precedes " + prev.to_string());
            }
            rows.push_back(row);
        } catch (const std::invalid_argument& e) {
            throw FrequencyFileError(line_no, e.what());
        }
    }
    if (!header_seen) throw FrequencyFileError(line_no == 0 ? 1 : line_no, "missing header 'bin,count'");
    try {
        return CountData(std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw FrequencyFileError(line_no, e.what());
    }
}

CountData read_frequency_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_frequency_file(in);
}

void write_frequency_file(std::ostream& out, const CountData& data) {
    out << "bin,count\n";
    for (const auto& r : data.rows()) out << r.bin.to_string() << ',' << r.count << '\n';
}

std::vector<Bin> parse_bin_spec(const std::string& spec) {
    std::vector<Bin> bins;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) bins.push_back(Bin::parse(item));
    if (bins.empty()) throw std::invalid_argument("empty bin specification");
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (bins[i].is_open() && i + 1 != bins.size()) throw std::invalid_argument("open tail must be the last bin");
        if (i > 0 && bins[i].lo <= *bins[i - 1].hi) throw std::invalid_argument("bins must be disjoint and ascending");
    }
    return bins;
}

}  // namespace skewgeo
