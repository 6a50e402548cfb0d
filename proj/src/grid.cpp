#include "entropyne/grid.hpp"

#include "entropyne/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace entropyne {

std::vector<double> GridSpec::values() const {
    if (count == 0) throw Error(ErrorKind::UsageError, "grid count must be positive");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = start;
        return v;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
    v.back() = stop;
    return v;
}

namespace {

double parse_number(std::string_view s, std::string_view full) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty() || !std::isfinite(v)) {
        throw Error(ErrorKind::ParseError, "bad number in grid spec '" + std::string(full) + "'");
    }
    return v;
}

}  // namespace

GridSpec GridSpec::parse(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
        text.find(':', c2 + 1) != std::string_view::npos) {
        throw Error(ErrorKind::ParseError, "grid spec must be start:stop:count, got '" + std::string(text) + "'");
    }
    GridSpec g;
    g.start = parse_number(text.substr(0, c1), text);
    g.stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1), text);
    const std::string_view cs = text.substr(c2 + 1);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), n);
    if (ec != std::errc() || ptr != cs.data() + cs.size() || cs.empty() || n == 0) {
        throw Error(ErrorKind::ParseError, "grid count must be a positive integer in '" + std::string(text) + "'");
    }
    g.count = n;
    return g;
}

std::string GridSpec::to_string() const {
    return format_double(start) + ":" + format_double(stop) + ":" + std::to_string(count);
}

std::optional<std::size_t> DeltaGrid::row_argmin(std::size_t i1) const {
    std::optional<std::size_t> best;
    for (std::size_t i2 = 0; i2 < axis2_values.size(); ++i2) {
        const auto& c = at(i1, i2);
        if (!c) continue;
        if (!best || *c < *at(i1, *best)) best = i2;
    }
    return best;
}

std::size_t DeltaGrid::flagged_count() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c; }));
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc()) throw Error(ErrorKind::NumericalFailure, "number formatting failed");
    return std::string(buf, ptr);
}

void write_csv(const DeltaGrid& grid, std::ostream& out, const CsvLayout& layout) {
    if (layout.axis2_first) {
        out << grid.axis2_name << ',' << grid.axis1_name << ",delta";
    } else {
        out << grid.axis1_name << ',' << grid.axis2_name << ",delta";
    }
    if (layout.row_argmin_column) out << ",row_argmin";
    out << '\n';
    for (std::size_t i1 = 0; i1 < grid.axis1_values.size(); ++i1) {
        const auto argmin = layout.row_argmin_column ? grid.row_argmin(i1) : std::nullopt;
        for (std::size_t i2 = 0; i2 < grid.axis2_values.size(); ++i2) {
            const std::string a1 = format_double(grid.axis1_values[i1]);
            const std::string a2 = format_double(grid.axis2_values[i2]);
            out << (layout.axis2_first ? a2 : a1) << ',' << (layout.axis2_first ? a1 : a2) << ',';
            if (const auto& c = grid.at(i1, i2)) out << format_double(*c);
            if (layout.row_argmin_column) out << ',' << (argmin && *argmin == i2 ? 1 : 0);
            out << '\n';
        }
    }
}

nlohmann::ordered_json grid_to_json(const DeltaGrid& grid, bool include_row_argmin) {
    nlohmann::ordered_json j;
    j["axis1"] = {{"name", grid.axis1_name}, {"values", grid.axis1_values}};
    j["axis2"] = {{"name", grid.axis2_name}, {"values", grid.axis2_values}};
    auto cells = nlohmann::ordered_json::array();
    for (const auto& c : grid.cells) {
        if (c) cells.push_back(*c);
        else cells.push_back(nullptr);
    }
    j["cells"] = std::move(cells);
    if (include_row_argmin) {
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i1 = 0; i1 < grid.axis1_values.size(); ++i1) {
            const auto a = grid.row_argmin(i1);
            if (a) rows.push_back(*a);
            else rows.push_back(nullptr);
        }
        j["row_argmin"] = std::move(rows);
    }
    j["metadata"] = grid.metadata;
    return j;
}

DeltaGrid grid_from_json(const nlohmann::ordered_json& j) {
    try {
        DeltaGrid g;
        g.axis1_name = j.at("axis1").at("name").get<std::string>();
        g.axis2_name = j.at("axis2").at("name").get<std::string>();
        g.axis1_values = j.at("axis1").at("values").get<std::vector<double>>();
        g.axis2_values = j.at("axis2").at("values").get<std::vector<double>>();
        for (const auto& c : j.at("cells")) {
            if (c.is_null()) g.cells.emplace_back(std::nullopt);
            else g.cells.emplace_back(c.get<double>());
        }
        if (j.contains("metadata")) g.metadata = j.at("metadata");
        if (g.cells.size() != g.axis1_values.size() * g.axis2_values.size()) {
            throw Error(ErrorKind::ParseError, "cell count does not match axes");
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed grid JSON: ") + e.what());
    }
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("ENTROPYNE_THREADS")) {
        int v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

}  // namespace entropyne
