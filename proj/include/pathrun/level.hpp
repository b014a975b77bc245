#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pathrun/errors.hpp"

namespace pathrun {

enum class Tile : unsigned char { Empty, Solid, Start, Goal, Item };

// Rectangular tile grid. Row 0 is the top; x grows right, y grows down.
// Anything outside the grid reads as Solid, so the arena is a closed box.
class Level {
public:
    int width() const { return width_; }
    int height() const { return height_; }

    Tile at(int tx, int ty) const {
        if (tx < 0 || ty < 0 || tx >= width_ || ty >= height_) return Tile::Solid;
        return tiles_[static_cast<size_t>(ty) * width_ + tx];
    }

    bool solid(int tx, int ty) const { return at(tx, ty) == Tile::Solid; }

    int start_x() const { return start_x_; }
    int start_y() const { return start_y_; }

    int item_count() const { return static_cast<int>(items_.size()); }

    // Row-major index among Item tiles, or -1 when (tx, ty) is not an item.
    int item_index(int tx, int ty) const {
        for (size_t i = 0; i < items_.size(); ++i)
            if (items_[i].first == tx && items_[i].second == ty) return static_cast<int>(i);
        return -1;
    }

    const std::vector<std::pair<int, int>>& items() const { return items_; }
    const std::vector<std::pair<int, int>>& goals() const { return goals_; }

    const std::string& name() const { return name_; }
    const std::string& text() const { return text_; }

    friend Level load_level(const std::string& text, const std::string& name);

private:
    int width_ = 0;
    int height_ = 0;
    int start_x_ = -1;
    int start_y_ = -1;
    std::vector<Tile> tiles_;
    std::vector<std::pair<int, int>> items_;  // row-major order
    std::vector<std::pair<int, int>> goals_;
    std::string name_;
    std::string text_;
};

// Parses an ASCII grid: '#' Solid, '.' Empty, 'S' Start, 'G' Goal, 'o' Item.
// A trailing newline is tolerated. Item count is capped at 16 so collected
// sets pack into the state encoding.
inline Level load_level(const std::string& text, const std::string& name = "") {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    if (lines.empty()) throw NonRectangular("level text has no rows");

    Level lvl;
    lvl.name_ = name;
    lvl.text_ = text;
    lvl.height_ = static_cast<int>(lines.size());
    lvl.width_ = static_cast<int>(lines[0].size());
    if (lvl.width_ < 2)
        throw NonRectangular("level must be at least 2 tiles wide");

    lvl.tiles_.reserve(static_cast<size_t>(lvl.width_) * lvl.height_);
    for (int ty = 0; ty < lvl.height_; ++ty) {
        const std::string& row = lines[ty];
        if (static_cast<int>(row.size()) != lvl.width_) {
            std::ostringstream os;
            os << "row " << ty << " has length " << row.size() << ", expected " << lvl.width_;
            throw NonRectangular(os.str());
        }
        for (int tx = 0; tx < lvl.width_; ++tx) {
            Tile t;
            switch (row[tx]) {
                case '#': t = Tile::Solid; break;
                case '.': t = Tile::Empty; break;
                case 'S': t = Tile::Start; break;
                case 'G': t = Tile::Goal; break;
                case 'o': t = Tile::Item; break;
                default: {
                    std::ostringstream os;
                    os << "'" << row[tx] << "' at row " << ty << " col " << tx;
                    throw UnknownChar(os.str());
                }
            }
            if (t == Tile::Start) {
                if (lvl.start_x_ >= 0) throw MultipleStarts();
                lvl.start_x_ = tx;
                lvl.start_y_ = ty;
            }
            if (t == Tile::Goal) lvl.goals_.emplace_back(tx, ty);
            if (t == Tile::Item) lvl.items_.emplace_back(tx, ty);
            lvl.tiles_.push_back(t);
        }
    }
    if (lvl.start_x_ < 0) throw MissingStart();
    if (lvl.goals_.empty()) throw MissingGoal();
    if (lvl.items_.size() > 16)
        throw BadValue("levels support at most 16 items");
    return lvl;
}

inline Level load_level_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadValue("cannot open level file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return load_level(os.str(), path);
}

}  // namespace pathrun
