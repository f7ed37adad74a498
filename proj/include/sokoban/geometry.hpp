#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sokoban {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

struct Position {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Position&, const Position&) = default;
};

// Fixed expansion order everywhere: U, D, L, R.
enum class Direction : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

constexpr Position direction_delta(Direction d) {
    switch (d) {
    case Direction::Up: return {-1, 0};
    case Direction::Down: return {1, 0};
    case Direction::Left: return {0, -1};
    case Direction::Right: return {0, 1};
    }
    return {0, 0};
}

constexpr Position operator+(Position a, Position b) { return {a.row + b.row, a.col + b.col}; }

constexpr char direction_char(Direction d) {
    switch (d) {
    case Direction::Up: return 'U';
    case Direction::Down: return 'D';
    case Direction::Left: return 'L';
    case Direction::Right: return 'R';
    }
    return '?';
}

inline std::optional<Direction> direction_from_char(char c) {
    switch (c) {
    case 'U': case 'u': return Direction::Up;
    case 'D': case 'd': return Direction::Down;
    case 'L': case 'l': return Direction::Left;
    case 'R': case 'r': return Direction::Right;
    default: return std::nullopt;
    }
}

struct Move {
    Direction dir = Direction::Up;
    bool pushed = false;  // annotation, filled when the move is applied

    friend bool operator==(const Move& a, const Move& b) { return a.dir == b.dir; }
};

using MoveSeq = std::vector<Move>;

inline std::string moves_to_string(const MoveSeq& moves) {
    std::string out;
    out.reserve(moves.size());
    for (const Move& m : moves) out.push_back(direction_char(m.dir));
    return out;
}

inline MoveSeq moves_from_string(std::string_view text) {
    MoveSeq out;
    out.reserve(text.size());
    for (char c : text) {
        auto d = direction_from_char(c);
        if (!d) throw Error(std::string("invalid move character '") + c + "'");
        out.push_back(Move{*d, false});
    }
    return out;
}

// The eight dihedral transforms of a rectangular board. Rotations are clockwise.
enum class Symmetry : std::uint8_t {
    Identity = 0,
    Rot90,
    Rot180,
    Rot270,
    FlipHorizontal,   // mirror left-right
    FlipVertical,     // mirror top-bottom
    FlipMainDiag,     // transpose
    FlipAntiDiag,
};

inline constexpr std::array<Symmetry, 8> kAllSymmetries = {
    Symmetry::Identity,     Symmetry::Rot90,        Symmetry::Rot180,
    Symmetry::Rot270,       Symmetry::FlipHorizontal, Symmetry::FlipVertical,
    Symmetry::FlipMainDiag, Symmetry::FlipAntiDiag};

namespace detail {

// Linear part of the transform: row' = a*r + b*c, col' = c_*r + d*c.
struct SymMatrix {
    int a, b, c, d;
    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;
};

constexpr SymMatrix sym_matrix(Symmetry s) {
    switch (s) {
    case Symmetry::Identity: return {1, 0, 0, 1};
    case Symmetry::Rot90: return {0, 1, -1, 0};
    case Symmetry::Rot180: return {-1, 0, 0, -1};
    case Symmetry::Rot270: return {0, -1, 1, 0};
    case Symmetry::FlipHorizontal: return {1, 0, 0, -1};
    case Symmetry::FlipVertical: return {-1, 0, 0, 1};
    case Symmetry::FlipMainDiag: return {0, 1, 1, 0};
    case Symmetry::FlipAntiDiag: return {0, -1, -1, 0};
    }
    return {1, 0, 0, 1};
}

constexpr SymMatrix multiply(SymMatrix m1, SymMatrix m2) {
    return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
            m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

constexpr Symmetry from_matrix(SymMatrix m) {
    for (Symmetry s : kAllSymmetries)
        if (sym_matrix(s) == m) return s;
    return Symmetry::Identity;  // unreachable: D4 is closed
}

}  // namespace detail

// True when the transform exchanges width and height.
constexpr bool swaps_dimensions(Symmetry s) {
    auto m = detail::sym_matrix(s);
    return m.a == 0;
}

// Maps a cell of an height x width board onto the transformed board.
constexpr Position transform_position(Position p, Symmetry s, int height, int width) {
    auto m = detail::sym_matrix(s);
    int r = m.a * p.row + m.b * p.col;
    int c = m.c * p.row + m.d * p.col;
    // Negative coordinates are shifted back into the target rectangle.
    if (m.a < 0 || m.b < 0) r += (m.b != 0 ? width : height) - 1;
    if (m.c < 0 || m.d < 0) c += (m.c != 0 ? height : width) - 1;
    return {r, c};
}

constexpr Direction transform_direction(Direction d, Symmetry s) {
    auto m = detail::sym_matrix(s);
    Position delta = direction_delta(d);
    Position nd{m.a * delta.row + m.b * delta.col, m.c * delta.row + m.d * delta.col};
    for (Direction cand : kAllDirections)
        if (direction_delta(cand) == nd) return cand;
    return d;  // unreachable
}

inline Move transform_move(Move m, Symmetry s) { return Move{transform_direction(m.dir, s), m.pushed}; }

// compose(after, first): the transform equivalent to applying `first`, then `after`.
constexpr Symmetry compose(Symmetry after, Symmetry first) {
    return detail::from_matrix(detail::multiply(detail::sym_matrix(after), detail::sym_matrix(first)));
}

constexpr Symmetry inverse(Symmetry s) {
    switch (s) {
    case Symmetry::Rot90: return Symmetry::Rot270;
    case Symmetry::Rot270: return Symmetry::Rot90;
    default: return s;  // identity, rot180 and the four flips are involutions
    }
}

inline std::string symmetry_name(Symmetry s) {
    switch (s) {
    case Symmetry::Identity: return "identity";
    case Symmetry::Rot90: return "rot90";
    case Symmetry::Rot180: return "rot180";
    case Symmetry::Rot270: return "rot270";
    case Symmetry::FlipHorizontal: return "flip-h";
    case Symmetry::FlipVertical: return "flip-v";
    case Symmetry::FlipMainDiag: return "flip-main";
    case Symmetry::FlipAntiDiag: return "flip-anti";
    }
    return "?";
}

}  // namespace sokoban
