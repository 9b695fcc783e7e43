#include "ratgraph/tiling.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace ratg {

const std::vector<std::pair<int, int>> TilingSystem::no_fills_{};

TilingSystem::TilingSystem(AlphabetRef work, std::vector<Letter> sigma, std::string frame_name,
                           std::vector<Tile> tiles)
    : work_(std::move(work)),
      sigma_(std::move(sigma)),
      frame_name_(std::move(frame_name)),
      tiles_(std::move(tiles)) {
    if (work_->contains(frame_name_))
        throw input_error("frame symbol must lie outside the work alphabet");
    sigma_mask_.assign(work_->size(), false);
    for (Letter l : sigma_) {
        if (l < 0 || l >= work_->size())
            throw input_error("input alphabet letter outside the work alphabet");
        sigma_mask_[l] = true;
    }
    int ext = work_->size() + 1;
    for (const auto& t : tiles_)
        for (int x : t.c)
            if (x < 0 || x >= ext)
                throw input_error("tile cell outside the work alphabet and frame");
    std::sort(tiles_.begin(), tiles_.end());
    tiles_.erase(std::unique(tiles_.begin(), tiles_.end()), tiles_.end());
    fills_.assign(static_cast<size_t>(ext) * ext, {});
    for (const auto& t : tiles_)
        fills_[static_cast<size_t>(t.c[0]) * ext + t.c[1]].emplace_back(t.c[2], t.c[3]);
}

bool TilingSystem::has_tile(int tl, int tr, int bl, int br) const {
    Tile t{{tl, tr, bl, br}};
    return std::binary_search(tiles_.begin(), tiles_.end(), t);
}

const std::vector<std::pair<int, int>>& TilingSystem::fills(int tl, int tr) const {
    int ext = work_->size() + 1;
    if (tl < 0 || tl >= ext || tr < 0 || tr >= ext)
        return no_fills_;
    return fills_[static_cast<size_t>(tl) * ext + tr];
}

Picture p_border(const Picture& p, const std::string& frame_name) {
    if (p.rows < 1 || p.cols < 1)
        throw input_error("pictures are nonempty");
    if (p.alphabet->contains(frame_name))
        throw input_error("frame symbol collides with the picture alphabet");
    AlphabetRef ext = alphabet_extend(p.alphabet, {frame_name});
    Letter frame = ext->require(frame_name);
    Picture out;
    out.alphabet = ext;
    out.rows = p.rows + 2;
    out.cols = p.cols + 2;
    out.cells.assign(static_cast<size_t>(out.rows) * out.cols, frame);
    for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c)
            out.cells[static_cast<size_t>(r + 1) * out.cols + (c + 1)] = p.at(r, c);
    return out;
}

std::vector<Tile> p_tiles(const Picture& p) {
    if (p.rows < 2 || p.cols < 2)
        throw input_error("tiles need a picture of shape at least 2x2");
    std::vector<Tile> out;
    for (int r = 0; r + 1 < p.rows; ++r)
        for (int c = 0; c + 1 < p.cols; ++c)
            out.push_back(Tile{{p.at(r, c), p.at(r, c + 1), p.at(r + 1, c), p.at(r + 1, c + 1)}});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ts_accepts_picture(const TilingSystem& s, const Picture& p) {
    if (!same_alphabet(p.alphabet, s.work()))
        throw input_error("picture must be over the system's work alphabet");
    Picture b = p_border(p, s.frame_name());
    for (const Tile& t : p_tiles(b))
        if (!std::binary_search(s.tiles().begin(), s.tiles().end(), t))
            return false;
    return true;
}

Word ts_frontier(const Picture& p) {
    Word w;
    for (int c = 0; c < p.cols; ++c)
        w.push_back(p.at(0, c));
    return w;
}

// windows of padded row pairs: with P = # r #, N = # r' #,
// every (P[i], P[i+1], N[i], N[i+1]) must be a tile
namespace {

std::vector<int> pad(const TilingSystem& s, const std::vector<int>& row) {
    std::vector<int> p;
    p.reserve(row.size() + 2);
    p.push_back(s.frame());
    p.insert(p.end(), row.begin(), row.end());
    p.push_back(s.frame());
    return p;
}

} // namespace

bool ts_row_top_ok(const TilingSystem& s, const std::vector<int>& row) {
    std::vector<int> p = pad(s, row);
    for (size_t i = 0; i + 1 < p.size(); ++i)
        if (!s.has_tile(s.frame(), s.frame(), p[i], p[i + 1]))
            return false;
    return true;
}

bool ts_row_bottom_ok(const TilingSystem& s, const std::vector<int>& row) {
    std::vector<int> p = pad(s, row);
    for (size_t i = 0; i + 1 < p.size(); ++i)
        if (!s.has_tile(p[i], p[i + 1], s.frame(), s.frame()))
            return false;
    return true;
}

std::vector<std::vector<int>> ts_row_successors(const TilingSystem& s,
                                                const std::vector<int>& row) {
    int m = static_cast<int>(row.size());
    std::vector<int> top = pad(s, row);
    std::vector<std::vector<int>> out;
    std::vector<int> next(m, -1);
    // choose next[j] left to right; window j has bottom (prev, next[j])
    std::function<void(int, int)> dfs = [&](int j, int prev) {
        if (j == m) {
            if (s.has_tile(top[m], top[m + 1], prev, s.frame()))
                out.push_back(next);
            return;
        }
        for (auto [bl, br] : s.fills(top[j], top[j + 1])) {
            if (bl != prev || br == s.frame())
                continue;
            next[j] = br;
            dfs(j + 1, br);
        }
    };
    dfs(0, s.frame());
    return out;
}

std::vector<std::vector<int>> ts_top_rows(const TilingSystem& s, int width) {
    std::vector<std::vector<int>> out;
    std::vector<int> row(width, -1);
    std::function<void(int, int)> dfs = [&](int j, int prev) {
        if (j == width) {
            if (s.has_tile(s.frame(), s.frame(), prev, s.frame()))
                out.push_back(row);
            return;
        }
        for (auto [bl, br] : s.fills(s.frame(), s.frame())) {
            if (bl != prev || br == s.frame())
                continue;
            row[j] = br;
            dfs(j + 1, br);
        }
    };
    dfs(0, s.frame());
    return out;
}

bool ts_member(const TilingSystem& s, const Word& w) {
    if (w.empty())
        return false;
    for (Letter l : w) {
        if (l < 0 || l >= s.work()->size())
            throw input_error("word letter outside the work alphabet");
        if (!s.in_sigma(l))
            return false;
    }
    std::vector<int> start(w.begin(), w.end());
    if (!ts_row_top_ok(s, start))
        return false;
    std::set<std::vector<int>> seen{start};
    std::vector<std::vector<int>> stack{start};
    while (!stack.empty()) {
        std::vector<int> row = std::move(stack.back());
        stack.pop_back();
        if (ts_row_bottom_ok(s, row))
            return true;
        for (auto& next : ts_row_successors(s, row))
            if (seen.insert(next).second)
                stack.push_back(std::move(next));
    }
    return false;
}

std::optional<int> ts_min_height(const TilingSystem& s, const Word& w) {
    if (w.empty())
        return std::nullopt;
    for (Letter l : w)
        if (l < 0 || l >= s.work()->size() || !s.in_sigma(l))
            return std::nullopt;
    std::vector<int> start(w.begin(), w.end());
    if (!ts_row_top_ok(s, start))
        return std::nullopt;
    std::set<std::vector<int>> seen{start};
    std::queue<std::pair<std::vector<int>, int>> queue;
    queue.emplace(start, 1);
    while (!queue.empty()) {
        auto [row, height] = std::move(queue.front());
        queue.pop();
        if (ts_row_bottom_ok(s, row))
            return height;
        for (auto& next : ts_row_successors(s, row))
            if (seen.insert(next).second)
                queue.emplace(std::move(next), height + 1);
    }
    return std::nullopt;
}

bool ts_det_probe(const TilingSystem& s, int max_width) {
    if (max_width < 1)
        throw input_error("max_width must be at least 1");
    for (int m = 1; m <= max_width; ++m) {
        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> stack;
        for (auto& row : ts_top_rows(s, m))
            if (seen.insert(row).second)
                stack.push_back(row);
        while (!stack.empty()) {
            std::vector<int> row = std::move(stack.back());
            stack.pop_back();
            auto succ = ts_row_successors(s, row);
            if (succ.size() > 1)
                return false;
            for (auto& next : succ)
                if (seen.insert(next).second)
                    stack.push_back(std::move(next));
        }
    }
    return true;
}

std::uint64_t ts_count_pictures(const TilingSystem& s, const Word& w, int max_height) {
    if (w.empty())
        return 0;
    for (Letter l : w)
        if (l < 0 || l >= s.work()->size() || !s.in_sigma(l))
            return 0;
    std::vector<int> start(w.begin(), w.end());
    if (!ts_row_top_ok(s, start))
        return 0;
    std::map<std::vector<int>, std::uint64_t> layer{{start, 1}};
    std::uint64_t total = 0;
    for (int h = 1; h <= max_height && !layer.empty(); ++h) {
        for (const auto& [row, count] : layer)
            if (ts_row_bottom_ok(s, row))
                total += count;
        std::map<std::vector<int>, std::uint64_t> next;
        for (const auto& [row, count] : layer)
            for (auto& succ : ts_row_successors(s, row))
                next[std::move(succ)] += count;
        layer = std::move(next);
    }
    return total;
}

} // namespace ratg
