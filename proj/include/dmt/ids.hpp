#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace dmt {

// Stable handle for a cell inside one Complex.  Indices are never reused:
// subdivision retires the old id and mints fresh ones, so an id seen in a
// SubdivisionTrace stays meaningful across complex versions.
struct CellId {
    std::int32_t index = -1;
    std::int8_t dim = -1;

    bool valid() const { return index >= 0; }
    friend auto operator<=>(const CellId&, const CellId&) = default;
};

struct CellIdHash {
    std::size_t operator()(const CellId& c) const {
        return std::hash<std::int64_t>()((std::int64_t(c.index) << 8) ^ std::uint8_t(c.dim));
    }
};

}  // namespace dmt
