#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace demosim {

/// Dense, never-reused identifier. Values are indices into the owning table
/// and are assigned in creation order.
template <typename Tag>
struct StrongId {
    std::uint32_t value{0};

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint32_t v) : value{v} {}

    constexpr std::size_t index() const noexcept { return value; }

    friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

struct PersonTag {};
struct HouseTag {};
struct TownTag {};

using PersonId = StrongId<PersonTag>;
using HouseId = StrongId<HouseTag>;
using TownId = StrongId<TownTag>;

inline std::string to_string(PersonId id) { return "p" + std::to_string(id.value); }
inline std::string to_string(HouseId id) { return "h" + std::to_string(id.value); }
inline std::string to_string(TownId id) { return "w" + std::to_string(id.value); }

} // namespace demosim

template <typename Tag>
struct std::hash<demosim::StrongId<Tag>> {
    std::size_t operator()(demosim::StrongId<Tag> id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
