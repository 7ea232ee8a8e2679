#include "rfec/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace rfec {

ErrorConfiguration::ErrorConfiguration(int n, int m) : n_(n), m_(m) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("ErrorConfiguration: dimensions must be >= 1");
    }
}

ErrorConfiguration::ErrorConfiguration(int n, int m, std::vector<GridCoord> errors)
    : ErrorConfiguration(n, m) {
    for (const GridCoord& c : errors) {
        if (c.row < 0 || c.row > n || c.col < 0 || c.col > m) {
            throw std::invalid_argument("ErrorConfiguration: coordinate out of bounds");
        }
    }
    std::sort(errors.begin(), errors.end());
    errors.erase(std::unique(errors.begin(), errors.end()), errors.end());
    errors_ = std::move(errors);
}

bool ErrorConfiguration::contains(GridCoord c) const {
    return std::binary_search(errors_.begin(), errors_.end(), c);
}

int ErrorConfiguration::rows_touched() const {
    std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
    int count = 0;
    for (const GridCoord& c : errors_) {
        if (!seen[static_cast<std::size_t>(c.row)]) {
            seen[static_cast<std::size_t>(c.row)] = true;
            ++count;
        }
    }
    return count;
}

int ErrorConfiguration::cols_touched() const {
    std::vector<bool> seen(static_cast<std::size_t>(m_) + 1, false);
    int count = 0;
    for (const GridCoord& c : errors_) {
        if (!seen[static_cast<std::size_t>(c.col)]) {
            seen[static_cast<std::size_t>(c.col)] = true;
            ++count;
        }
    }
    return count;
}

}  // namespace rfec
