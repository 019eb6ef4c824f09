#ifndef LSCD_WSC_HPP
#define LSCD_WSC_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace lscd {

struct YearRange {
    int start = 0;
    int end = 0;  // equal to start for single-year events
};

struct WscEntry {
    std::string word;
    bool changed = false;
    std::vector<YearRange> change_years;  // non-empty iff changed
    std::string description;
};

// TSV word<TAB>status<TAB>years<TAB>description; status is changed|stable,
// years like "1940", "~1900" or "1950-1960", ';'-separated for multiple
// events. Lines starting with '#' are skipped.
std::vector<WscEntry> load_wsc(const std::filesystem::path& path);
void save_wsc(const std::vector<WscEntry>& entries, const std::filesystem::path& path);

// Words whose change events all fall outside [window_start, window_end] are
// treated as stable within that window.
std::vector<WscEntry> filter_by_window(const std::vector<WscEntry>& entries, int window_start,
                                       int window_end);

}  // namespace lscd

#endif
