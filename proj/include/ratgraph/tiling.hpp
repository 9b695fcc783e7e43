#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ratgraph/alphabet.hpp"

namespace ratg {

/// Rectangular letter array, row-major, at least 1x1.
struct Picture {
    AlphabetRef alphabet;
    int rows = 0;
    int cols = 0;
    std::vector<Letter> cells;

    Letter at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
};

/// 2x2 tile: top-left, top-right, bottom-left, bottom-right. Cells use the
/// owning system's extended indexing (work letters, then the frame symbol).
struct Tile {
    std::array<int, 4> c{};
    bool operator==(const Tile& o) const { return c == o.c; }
    bool operator<(const Tile& o) const { return c < o.c; }
};

/// Tiling system: work alphabet Γ, input alphabet Σ ⊂ Γ, a frame symbol
/// outside Γ and a finite tile set over Γ∪{frame}. Recognizes the local
/// picture language P(S) and the word language of its frontiers.
class TilingSystem {
public:
    TilingSystem(AlphabetRef work, std::vector<Letter> sigma, std::string frame_name,
                 std::vector<Tile> tiles);

    const AlphabetRef& work() const { return work_; }
    const std::vector<Letter>& sigma() const { return sigma_; }
    bool in_sigma(Letter l) const { return sigma_mask_[l]; }
    const std::string& frame_name() const { return frame_name_; }
    /// Extended index of the frame symbol ( = work().size() ).
    int frame() const { return work_->size(); }
    const std::vector<Tile>& tiles() const { return tiles_; }
    bool has_tile(int tl, int tr, int bl, int br) const;
    /// Bottom rows (bl,br) completing a given top pair (tl,tr).
    const std::vector<std::pair<int, int>>& fills(int tl, int tr) const;

private:
    AlphabetRef work_;
    std::vector<Letter> sigma_;
    std::vector<bool> sigma_mask_;
    std::string frame_name_;
    std::vector<Tile> tiles_;
    std::vector<std::vector<std::pair<int, int>>> fills_; // by tl*(n+1)+tr
    static const std::vector<std::pair<int, int>> no_fills_;
};

/// Add a frame ring around the picture; frame_name must be outside the
/// picture's alphabet. The result is over the extended alphabet.
Picture p_border(const Picture& p, const std::string& frame_name);

/// All contiguous 2x2 sub-arrays of a picture (needs rows, cols ≥ 2), deduped.
std::vector<Tile> p_tiles(const Picture& p);

/// True iff every tile of the bordered picture lies in the system's tile set.
bool ts_accepts_picture(const TilingSystem& s, const Picture& p);

/// First row of a picture, read as a word.
Word ts_frontier(const Picture& p);

/// Exact membership of w (over Σ) in the frontier language, by row-successor
/// search with cycle pruning.
bool ts_member(const TilingSystem& s, const Word& w);

/// Minimal height of an accepting picture with frontier w, if any.
std::optional<int> ts_min_height(const TilingSystem& s, const Word& w);

/// Bounded determinism check: every row reachable downward from a valid
/// frontier row of width ≤ max_width has at most one successor row.
bool ts_det_probe(const TilingSystem& s, int max_width);

/// Number of accepting pictures with frontier w and height ≤ max_height.
std::uint64_t ts_count_pictures(const TilingSystem& s, const Word& w, int max_height);

// row-level machinery, shared with tests and conversions
bool ts_row_top_ok(const TilingSystem& s, const std::vector<int>& row);
bool ts_row_bottom_ok(const TilingSystem& s, const std::vector<int>& row);
std::vector<std::vector<int>> ts_row_successors(const TilingSystem& s,
                                                const std::vector<int>& row);
std::vector<std::vector<int>> ts_top_rows(const TilingSystem& s, int width);

} // namespace ratg
