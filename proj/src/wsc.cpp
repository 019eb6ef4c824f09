#include "lscd/wsc.hpp"

#include <algorithm>

#include "lscd/error.hpp"
#include "lscd/io.hpp"

namespace lscd {

namespace {

YearRange parse_year_range(const std::string& raw, const std::string& where) {
    std::string s = raw;
    if (!s.empty() && s.front() == '~') s.erase(0, 1);  // approximate marker
    if (s.empty()) throw DataError(where + ": empty year range");
    auto parts = split_char(s, '-');
    try {
        if (parts.size() == 1) {
            int y = std::stoi(parts[0]);
            return YearRange{y, y};
        }
        if (parts.size() == 2) {
            YearRange r{std::stoi(parts[0]), std::stoi(parts[1])};
            if (r.end < r.start) throw DataError(where + ": year range ends before it starts");
            return r;
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw DataError(where + ": malformed year range '" + raw + "'");
}

std::string render_year_range(const YearRange& r) {
    if (r.start == r.end) return std::to_string(r.start);
    return std::to_string(r.start) + "-" + std::to_string(r.end);
}

}  // namespace

std::vector<WscEntry> load_wsc(const std::filesystem::path& path) {
    std::vector<WscEntry> entries;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty() || line[0] == '#') return;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        auto fields = split_char(line, '\t');
        if (fields.size() != 4) {
            throw DataError(where + ": expected word<TAB>status<TAB>years<TAB>description");
        }
        WscEntry e;
        e.word = fields[0];
        if (e.word.empty()) throw DataError(where + ": empty word");
        if (fields[1] == "changed") {
            e.changed = true;
        } else if (fields[1] == "stable") {
            e.changed = false;
        } else {
            throw DataError(where + ": unknown status '" + fields[1] + "'");
        }
        if (!fields[2].empty()) {
            for (const auto& part : split_char(fields[2], ';')) {
                e.change_years.push_back(parse_year_range(part, where));
            }
        }
        if (e.changed && e.change_years.empty()) {
            throw DataError(where + ": changed entry needs at least one change year");
        }
        if (!e.changed && !e.change_years.empty()) {
            throw DataError(where + ": stable entry must not list change years");
        }
        e.description = fields[3];
        entries.push_back(std::move(e));
    });
    return entries;
}

void save_wsc(const std::vector<WscEntry>& entries, const std::filesystem::path& path) {
    std::string body;
    for (const auto& e : entries) {
        body += e.word;
        body += '\t';
        body += e.changed ? "changed" : "stable";
        body += '\t';
        for (std::size_t i = 0; i < e.change_years.size(); ++i) {
            if (i) body += ';';
            body += render_year_range(e.change_years[i]);
        }
        body += '\t';
        body += e.description;
        body += '\n';
    }
    atomic_write(path, body);
}

std::vector<WscEntry> filter_by_window(const std::vector<WscEntry>& entries, int window_start,
                                       int window_end) {
    std::vector<WscEntry> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        WscEntry copy = e;
        if (e.changed) {
            bool inside = std::any_of(e.change_years.begin(), e.change_years.end(),
                                      [&](const YearRange& r) {
                                          return r.end >= window_start && r.start <= window_end;
                                      });
            if (!inside) {
                copy.changed = false;
                copy.change_years.clear();
            }
        }
        out.push_back(std::move(copy));
    }
    return out;
}

}  // namespace lscd
