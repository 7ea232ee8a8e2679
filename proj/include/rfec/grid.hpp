#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace rfec {

// Position in the (n+1) x (m+1) code grid: row in [0, n], col in [0, m].
struct GridCoord {
    int row = 0;
    int col = 0;
    auto operator<=>(const GridCoord&) const = default;
};

// The set of erroneous cell positions of one transmission of a grid.
// Immutable once constructed; coordinates are kept sorted and unique.
class ErrorConfiguration {
public:
    ErrorConfiguration(int n, int m);
    ErrorConfiguration(int n, int m, std::vector<GridCoord> errors);

    int n() const { return n_; }
    int m() const { return m_; }
    std::size_t error_count() const { return errors_.size(); }
    bool empty() const { return errors_.empty(); }
    const std::vector<GridCoord>& errors() const { return errors_; }
    bool contains(GridCoord c) const;

    // Number of rows (columns) holding at least one error.
    int rows_touched() const;
    int cols_touched() const;

    bool operator==(const ErrorConfiguration&) const = default;

private:
    int n_;
    int m_;
    std::vector<GridCoord> errors_;
};

}  // namespace rfec
