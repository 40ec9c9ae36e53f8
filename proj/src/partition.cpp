#include "blockwish/partition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace blockwish {

namespace {

std::vector<int> canonicalize(const std::vector<int>& ids) {
    std::vector<int> relabel(ids.size(), -1);
    std::vector<int> out(ids.size());
    int next = 0;
    for (size_t i = 0; i < ids.size(); ++i) {
        int b = ids[i];
        if (b < 0 || b >= static_cast<int>(ids.size()))
            throw std::invalid_argument("block id out of range");
        if (relabel[b] < 0) relabel[b] = next++;
        out[i] = relabel[b];
    }
    return out;
}

/// Boundary traversal: upper left to right, then lower right to left.
std::vector<int> boundaryWord(const Partition& pi) {
    std::vector<int> w;
    w.reserve(pi.points());
    for (int i = 0; i < pi.upperCount(); ++i) w.push_back(pi.upperBlockAt(i));
    for (int i = pi.lowerCount() - 1; i >= 0; --i) w.push_back(pi.lowerBlockAt(i));
    return w;
}

bool wordNoncrossing(const std::vector<int>& w) {
    const int p = static_cast<int>(w.size());
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            for (int c = b + 1; c < p; ++c)
                for (int d = c + 1; d < p; ++d)
                    if (w[a] == w[c] && w[b] == w[d] && w[a] != w[b]) return true;
    return false;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Partition::Partition(int upper_count, int lower_count, std::vector<int> block_ids)
    : upper_(upper_count), lower_(lower_count) {
    if (upper_ < 0 || lower_ < 0) throw std::invalid_argument("negative row length");
    if (static_cast<int>(block_ids.size()) != upper_ + lower_)
        throw std::invalid_argument("block id sequence does not match row lengths");
    ids_ = canonicalize(block_ids);
    blocks_ = ids_.empty() ? 0 : *std::max_element(ids_.begin(), ids_.end()) + 1;
}

Partition Partition::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("partition literal needs '/'");
    std::string up = text.substr(0, slash);
    std::string low = text.substr(slash + 1);
    if (up.empty() && low.empty()) throw std::invalid_argument("empty partition literal");
    std::vector<int> ids;
    for (char c : up + low) {
        if (c < 'a' || c > 'z') throw std::invalid_argument("partition literal: letters a-z only");
        ids.push_back(c - 'a');
    }
    return Partition(static_cast<int>(up.size()), static_cast<int>(low.size()), std::move(ids));
}

std::string Partition::str() const {
    std::string out;
    for (int i = 0; i < upper_; ++i) out.push_back(static_cast<char>('a' + ids_[i]));
    out.push_back('/');
    for (int i = 0; i < lower_; ++i) out.push_back(static_cast<char>('a' + ids_[upper_ + i]));
    return out;
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(blocks_);
    for (int i = 0; i < points(); ++i) out[ids_[i]].push_back(i);
    return out;
}

std::vector<int> Partition::blockSizes() const {
    std::vector<int> out(blocks_, 0);
    for (int b : ids_) ++out[b];
    return out;
}

bool Partition::allBlocksEven() const {
    for (int s : blockSizes())
        if (s % 2 != 0) return false;
    return true;
}

bool Partition::operator<(const Partition& other) const {
    if (upper_ != other.upper_) return upper_ < other.upper_;
    if (lower_ != other.lower_) return lower_ < other.lower_;
    return ids_ < other.ids_;
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<char> seen(image_.size(), 0);
    for (int v : image_) {
        if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v])
            throw std::invalid_argument("not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int p) {
    std::vector<int> img(p);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::standardCycle(int p) {
    std::vector<int> img(p);
    for (int i = 0; i < p; ++i) img[i] = (i + 1) % p;
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> img(image_.size());
    for (size_t i = 0; i < image_.size(); ++i) img[image_[i]] = static_cast<int>(i);
    return Permutation(std::move(img));
}

int Permutation::cycleCount() const {
    std::vector<char> seen(image_.size(), 0);
    int cycles = 0;
    for (size_t i = 0; i < image_.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int x = static_cast<int>(i); !seen[x]; x = image_[x]) seen[x] = 1;
    }
    return cycles;
}

Partition Permutation::cyclePartition() const {
    std::vector<int> ids(image_.size(), -1);
    int next = 0;
    for (size_t i = 0; i < image_.size(); ++i) {
        if (ids[i] >= 0) continue;
        for (int x = static_cast<int>(i); ids[x] < 0; x = image_[x]) ids[x] = next;
        ++next;
    }
    return Partition(0, static_cast<int>(image_.size()), std::move(ids));
}

Permutation permCompose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    std::vector<int> img(a.size());
    for (int x = 0; x < a.size(); ++x) img[x] = a(b(x));
    return Permutation(std::move(img));
}

ExponentWord::ExponentWord(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_)
        if (c != '1' && c != '*') throw std::invalid_argument("exponent word: letters 1 and * only");
}

ExponentWord ExponentWord::allOnes(int p) { return ExponentWord(std::string(p, '1')); }

std::vector<ExponentWord> ExponentWord::allWords(int p) {
    std::vector<ExponentWord> out;
    out.reserve(1u << p);
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
        std::string w(p, '1');
        for (int i = 0; i < p; ++i)
            if (mask & (1u << i)) w[i] = '*';
        out.emplace_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ExponentWord::operator<(const ExponentWord& o) const {
    if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
    return letters_ < o.letters_;
}

Partition parsePartition(const std::string& text) { return Partition::parse(text); }

std::vector<Partition> enumeratePartitions(int k, int l, bool even_only) {
    const int p = k + l;
    if (p < 1) throw std::invalid_argument("need at least one point");
    if (p > 16) throw std::invalid_argument("enumeration guard: more than 16 points");
    std::vector<Partition> out;
    // Restricted growth strings enumerate canonical labelings directly.
    std::vector<int> rgs(p, 0);
    while (true) {
        Partition cand(k, l, rgs);
        if (!even_only || cand.allBlocksEven()) out.push_back(std::move(cand));
        int i = p - 1;
        for (; i > 0; --i) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
            if (rgs[i] < cap) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
            rgs[i] = 0;
        }
        if (i == 0) break;
    }
    return out;
}

bool isNoncrossing(const Partition& pi) { return !wordNoncrossing(boundaryWord(pi)); }

const std::vector<Partition>& enumerateNoncrossing(int p) {
    static std::map<int, std::vector<Partition>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    if (p == 0) {
        out.emplace_back(0, 0, std::vector<int>{});
    } else {
        for (const auto& pi : enumeratePartitions(0, p))
            if (isNoncrossing(pi)) out.push_back(pi);
    }
    return cache.emplace(p, std::move(out)).first->second;
}

Partition kernel(const std::vector<int>& upper_values, const std::vector<int>& lower_values) {
    std::vector<int> all(upper_values);
    all.insert(all.end(), lower_values.begin(), lower_values.end());
    std::vector<int> ids(all.size());
    std::map<int, int> label;
    for (size_t i = 0; i < all.size(); ++i) {
        auto [it, inserted] = label.emplace(all[i], static_cast<int>(label.size()));
        ids[i] = it->second;
    }
    return Partition(static_cast<int>(upper_values.size()), static_cast<int>(lower_values.size()),
                     std::move(ids));
}

int deltaSymbol(const Partition& pi, const std::vector<int>& upper_values,
                const std::vector<int>& lower_values) {
    if (static_cast<int>(upper_values.size()) != pi.upperCount() ||
        static_cast<int>(lower_values.size()) != pi.lowerCount())
        throw std::invalid_argument("deltaSymbol: value shape mismatch");
    std::vector<int> first(pi.blockCount(), INT32_MIN);
    for (int i = 0; i < pi.points(); ++i) {
        int v = i < pi.upperCount() ? upper_values[i] : lower_values[i - pi.upperCount()];
        int b = pi.blockAt(i);
        if (first[b] == INT32_MIN)
            first[b] = v;
        else if (first[b] != v)
            return 0;
    }
    return 1;
}

bool isCoarser(const Partition& sigma, const Partition& pi) {
    if (sigma.upperCount() != pi.upperCount() || sigma.lowerCount() != pi.lowerCount())
        throw std::invalid_argument("isCoarser: shape mismatch");
    // Every block of pi must sit inside one block of sigma.
    std::vector<int> image(pi.blockCount(), -1);
    for (int i = 0; i < pi.points(); ++i) {
        int b = pi.blockAt(i);
        if (image[b] < 0)
            image[b] = sigma.blockAt(i);
        else if (image[b] != sigma.blockAt(i))
            return false;
    }
    return true;
}

Partition commonCoarsening(const Partition& sigma, const Partition& tau) {
    if (sigma.upperCount() != tau.upperCount() || sigma.lowerCount() != tau.lowerCount())
        throw std::invalid_argument("commonCoarsening: shape mismatch");
    const int p = sigma.points();
    UnionFind uf(p);
    std::vector<int> first_sigma(sigma.blockCount(), -1), first_tau(tau.blockCount(), -1);
    for (int i = 0; i < p; ++i) {
        int bs = sigma.blockAt(i), bt = tau.blockAt(i);
        if (first_sigma[bs] < 0) first_sigma[bs] = i; else uf.unite(i, first_sigma[bs]);
        if (first_tau[bt] < 0) first_tau[bt] = i; else uf.unite(i, first_tau[bt]);
    }
    std::vector<int> ids(p);
    for (int i = 0; i < p; ++i) ids[i] = uf.find(i);
    return Partition(sigma.upperCount(), sigma.lowerCount(), std::move(ids));
}

Partition middleSymmetry(const Partition& pi) {
    if (pi.upperCount() % 2 != 0 || pi.lowerCount() % 2 != 0)
        throw std::invalid_argument("middleSymmetry: rows must have even length");
    const int su = pi.upperCount() / 2, sl = pi.lowerCount() / 2;
    std::vector<int> ids(pi.points());
    for (int i = 0; i < pi.upperCount(); ++i)
        ids[i] = pi.upperBlockAt((i + su) % pi.upperCount());
    for (int i = 0; i < pi.lowerCount(); ++i)
        ids[pi.upperCount() + i] = pi.lowerBlockAt((i + sl) % pi.lowerCount());
    return Partition(pi.upperCount(), pi.lowerCount(), std::move(ids));
}

Partition adjoint(const Partition& pi) {
    std::vector<int> ids(pi.points());
    for (int i = 0; i < pi.lowerCount(); ++i) ids[i] = pi.lowerBlockAt(i);
    for (int i = 0; i < pi.upperCount(); ++i) ids[pi.lowerCount() + i] = pi.upperBlockAt(i);
    return Partition(pi.lowerCount(), pi.upperCount(), std::move(ids));
}

VerticalComposition verticalCompose(const Partition& top, const Partition& bottom) {
    if (top.lowerCount() != bottom.upperCount())
        throw std::invalid_argument("verticalCompose: row length mismatch");
    const int k = top.upperCount();
    const int g = top.lowerCount();  // glued points
    const int m = bottom.lowerCount();
    // Nodes: 0..k-1 outer upper, k..k+g-1 glued, k+g..k+g+m-1 outer lower.
    UnionFind uf(k + g + m);
    std::vector<int> first_top(top.blockCount(), -1), first_bottom(bottom.blockCount(), -1);
    auto link = [&](std::vector<int>& first, int block, int node) {
        if (first[block] < 0) first[block] = node; else uf.unite(node, first[block]);
    };
    for (int i = 0; i < k; ++i) link(first_top, top.upperBlockAt(i), i);
    for (int i = 0; i < g; ++i) link(first_top, top.lowerBlockAt(i), k + i);
    for (int i = 0; i < g; ++i) link(first_bottom, bottom.upperBlockAt(i), k + i);
    for (int i = 0; i < m; ++i) link(first_bottom, bottom.lowerBlockAt(i), k + g + i);

    std::vector<int> ids;
    ids.reserve(k + m);
    for (int i = 0; i < k; ++i) ids.push_back(uf.find(i));
    for (int i = 0; i < m; ++i) ids.push_back(uf.find(k + g + i));
    // Loops: components whose every node is glued.
    std::vector<char> touches_outer(k + g + m, 0);
    for (int i = 0; i < k; ++i) touches_outer[uf.find(i)] = 1;
    for (int i = 0; i < m; ++i) touches_outer[uf.find(k + g + i)] = 1;
    std::vector<char> counted(k + g + m, 0);
    int loops = 0;
    for (int i = 0; i < g; ++i) {
        int root = uf.find(k + i);
        if (!touches_outer[root] && !counted[root]) {
            counted[root] = 1;
            ++loops;
        }
    }
    // Remap ids onto the outer points only.
    std::map<int, int> remap;
    for (int& v : ids) {
        auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
        v = it->second;
    }
    return {Partition(k, m, std::move(ids)), loops};
}

int signature(const Partition& pi) {
    if (!pi.allBlocksEven()) throw std::invalid_argument("signature: odd block present");
    const auto word = boundaryWord(pi);
    // Consecutive-pairing refinement: pair each block's legs 1st-2nd, 3rd-4th,
    // ... in boundary order, then count crossings of the resulting pairing.
    std::vector<std::vector<int>> legs(pi.blockCount());
    for (int pos = 0; pos < static_cast<int>(word.size()); ++pos) legs[word[pos]].push_back(pos);
    std::vector<std::pair<int, int>> pairs;
    for (const auto& ls : legs)
        for (size_t i = 0; i + 1 < ls.size(); i += 2) pairs.emplace_back(ls[i], ls[i + 1]);
    int crossings = 0;
    for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = a + 1; b < pairs.size(); ++b) {
            auto [x1, x2] = pairs[a];
            auto [y1, y2] = pairs[b];
            if ((x1 < y1 && y1 < x2 && x2 < y2) || (y1 < x1 && x1 < y2 && y2 < x2)) ++crossings;
        }
    return crossings % 2 == 0 ? 1 : -1;
}

int signatureSwitchSearch(const Partition& pi) {
    if (!pi.allBlocksEven()) throw std::invalid_argument("signature: odd block present");
    if (pi.points() > 8) throw std::invalid_argument("switch-search oracle limited to 8 points");
    auto start = boundaryWord(pi);
    // BFS over leg arrangements; a switch swaps two adjacent legs of
    // different blocks.
    std::map<std::vector<int>, int> dist;
    std::deque<std::vector<int>> queue;
    dist[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
        auto w = queue.front();
        queue.pop_front();
        int d = dist[w];
        if (!wordNoncrossing(w)) return d % 2 == 0 ? 1 : -1;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] == w[i + 1]) continue;
            std::swap(w[i], w[i + 1]);
            if (dist.emplace(w, d + 1).second) queue.push_back(w);
            std::swap(w[i], w[i + 1]);
        }
    }
    throw std::logic_error("switch search exhausted without noncrossing arrangement");
}

Permutation ncToPermutation(const Partition& sigma) {
    if (sigma.upperCount() != 0) throw std::invalid_argument("ncToPermutation: one-row input required");
    if (!isNoncrossing(sigma)) throw std::invalid_argument("ncToPermutation: crossing input");
    std::vector<int> img(sigma.points());
    for (const auto& block : sigma.blocks())
        for (size_t i = 0; i < block.size(); ++i)
            img[block[i]] = block[(i + 1) % block.size()];
    return Permutation(std::move(img));
}

Partition kreweras(const Partition& sigma) {
    // The complement has the cycle structure of sigma^{-1} gamma.
    auto perm = ncToPermutation(sigma);
    auto comp = permCompose(perm.inverse(), Permutation::standardCycle(sigma.points()));
    return comp.cyclePartition();
}

}  // namespace blockwish
