#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "blockwish/partition.hpp"

using namespace blockwish;

namespace {

// All set partitions of {0..p-1} as block-id vectors (restricted growth).
std::vector<std::vector<int>> setPartitions(int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> ids(p, 0);
    while (true) {
        out.push_back(ids);
        int x = p - 1;
        for (; x > 0; --x) {
            int cap = *std::max_element(ids.begin(), ids.begin() + x) + 1;
            if (ids[x] < cap) {
                ++ids[x];
                std::fill(ids.begin() + x + 1, ids.end(), 0);
                break;
            }
            ids[x] = 0;
        }
        if (x == 0) break;
    }
    return out;
}

long long catalan(int p) {
    long long c = 1;
    for (int i = 0; i < p; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

// Pairing in P(k,k) joining upper i with lower g(i); its signature is sgn(g).
Partition pairingFromPermutation(const Permutation& g) {
    int k = g.size();
    std::vector<int> ids(2 * k);
    for (int i = 0; i < k; ++i) ids[i] = i;
    auto inv = g.inverse();
    for (int j = 0; j < k; ++j) ids[k + j] = inv(j);
    return Partition(k, k, ids);
}

int permutationSign(const Permutation& g) {
    return (g.size() - g.cycleCount()) % 2 == 0 ? 1 : -1;
}

// Crossing parity of a single-row pairing, counted in natural order.
int crossingParity(const Partition& pairing) {
    auto blocks = pairing.blocks();
    int crossings = 0;
    for (size_t a = 0; a < blocks.size(); ++a)
        for (size_t b = a + 1; b < blocks.size(); ++b) {
            int a1 = blocks[a][0], a2 = blocks[a][1];
            int b1 = blocks[b][0], b2 = blocks[b][1];
            if ((a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2)) ++crossings;
        }
    return crossings % 2 == 0 ? 1 : -1;
}

// Merge blocks of pi according to a set partition of its block ids.
Partition mergeBlocks(const Partition& pi, const std::vector<int>& grouping) {
    std::vector<int> ids(pi.points());
    for (int x = 0; x < pi.points(); ++x) ids[x] = grouping[pi.blockAt(x)];
    // renumber by first occurrence
    std::map<int, int> relabel;
    for (int& id : ids) {
        auto [it, fresh] = relabel.emplace(id, static_cast<int>(relabel.size()));
        id = it->second;
    }
    return Partition(pi.upperCount(), pi.lowerCount(), ids);
}

// Interleave sigma (even slots) with tau (odd slots) on a 2p-point row.
Partition interleave(const Partition& sigma, const std::vector<int>& tau_ids) {
    int p = sigma.points();
    std::vector<int> ids(2 * p);
    int shift = sigma.blockCount();
    for (int i = 0; i < p; ++i) {
        ids[2 * i] = sigma.blockAt(i);
        ids[2 * i + 1] = shift + tau_ids[i];
    }
    std::map<int, int> relabel;
    for (int& id : ids) {
        auto [it, fresh] = relabel.emplace(id, static_cast<int>(relabel.size()));
        id = it->second;
    }
    return Partition(0, 2 * p, ids);
}

std::vector<Permutation> allPermutations(int p) {
    std::vector<int> image(p);
    std::iota(image.begin(), image.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

}  // namespace

TEST_CASE("partition literals parse and round-trip") {
    CHECK(parsePartition("ab/ba").str() == "ab/ba");
    CHECK(parsePartition("aa/aa").str() == "aa/aa");
    CHECK(parsePartition("ab/ab").str() == "ab/ab");
    CHECK(parsePartition("/abc").str() == "/abc");
    CHECK(parsePartition("ba/ab").str() == "ab/ba");  // canonical relabeling

    auto pi = parsePartition("ab/ba");
    CHECK(pi.upperCount() == 2);
    CHECK(pi.lowerCount() == 2);
    CHECK(pi.blockCount() == 2);
    CHECK(pi.blockAt(0) == 0);
    CHECK(pi.blockAt(1) == 1);
    CHECK(pi.lowerBlockAt(0) == 1);
    CHECK(pi.lowerBlockAt(1) == 0);

    CHECK_THROWS_AS(parsePartition("ab"), std::invalid_argument);
    CHECK_THROWS_AS(parsePartition("/"), std::invalid_argument);
    CHECK_THROWS_AS(parsePartition("aB/ab"), std::invalid_argument);
}

TEST_CASE("block structure queries") {
    auto pi = parsePartition("aab/ab");
    auto blocks = pi.blocks();
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == std::vector<int>{0, 1, 3});
    CHECK(blocks[1] == std::vector<int>{2, 4});
    CHECK(pi.blockSizes() == std::vector<int>{3, 2});
    CHECK_FALSE(pi.allBlocksEven());
    CHECK(parsePartition("aa/aa").allBlocksEven());
    CHECK(parsePartition("ab/ba").allBlocksEven());
}

TEST_CASE("enumeration counts") {
    CHECK(enumeratePartitions(2, 2, true).size() == 4);
    CHECK(enumeratePartitions(2, 2).size() == 15);
    CHECK(enumeratePartitions(0, 3).size() == 5);
    CHECK(enumeratePartitions(0, 4).size() == 15);
    CHECK_THROWS_AS(enumeratePartitions(9, 8), std::invalid_argument);

    // even partitions appear inside the full list
    auto all = enumeratePartitions(2, 2);
    auto even = enumeratePartitions(2, 2, true);
    for (const auto& pi : even) CHECK(std::count(all.begin(), all.end(), pi) == 1);
}

TEST_CASE("noncrossing predicate and enumeration") {
    CHECK(isNoncrossing(parsePartition("/aabb")));
    CHECK(isNoncrossing(parsePartition("/abba")));
    CHECK_FALSE(isNoncrossing(parsePartition("/abab")));
    CHECK(isNoncrossing(parsePartition("ab/ab")));  // boundary order reverses the lower row
    CHECK(isNoncrossing(parsePartition("aa/bb")));

    for (int p = 1; p <= 6; ++p) {
        const auto& nc = enumerateNoncrossing(p);
        CHECK(static_cast<long long>(nc.size()) == catalan(p));
        for (const auto& s : nc) CHECK(isNoncrossing(s));
    }
}

TEST_CASE("kernel and delta symbol") {
    CHECK(kernel({5, 7}, {7, 5}).str() == "ab/ba");
    CHECK(kernel({1, 1}, {1, 1}).str() == "aa/aa");
    CHECK(kernel({}, {3, 1, 3}).str() == "/aba");

    auto pi = parsePartition("ab/ba");
    CHECK(deltaSymbol(pi, {5, 7}, {7, 5}) == 1);
    CHECK(deltaSymbol(pi, {5, 7}, {5, 7}) == 0);
    // delta_pi(i) == 1 iff ker(i) is coarser-or-equal than refined into pi:
    // every block of pi constant. Cross-check against kernel+isCoarser.
    for (const auto& cand : enumeratePartitions(2, 2)) {
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                for (int c = 1; c <= 2; ++c)
                    for (int d = 1; d <= 2; ++d) {
                        std::vector<int> up{a, b}, low{c, d};
                        int expected = isCoarser(kernel(up, low), cand) ? 1 : 0;
                        CHECK(deltaSymbol(cand, up, low) == expected);
                    }
    }
}

TEST_CASE("coarsening order and join") {
    auto one = parsePartition("aa/aa");
    for (const auto& pi : enumeratePartitions(2, 2)) {
        CHECK(isCoarser(one, pi));
        CHECK(isCoarser(pi, pi));
    }
    CHECK_FALSE(isCoarser(parsePartition("ab/ab"), parsePartition("aa/aa")));
    CHECK(commonCoarsening(parsePartition("ab/ab"), parsePartition("aa/bb")) == one);
    CHECK(commonCoarsening(parsePartition("ab/ab"), parsePartition("ab/ab")).str() == "ab/ab");

    // join is the finest common coarsening
    for (const auto& a : enumeratePartitions(2, 2))
        for (const auto& b : enumeratePartitions(2, 2)) {
            auto j = commonCoarsening(a, b);
            CHECK(isCoarser(j, a));
            CHECK(isCoarser(j, b));
            for (const auto& c : enumeratePartitions(2, 2))
                if (isCoarser(c, a) && isCoarser(c, b)) CHECK(isCoarser(c, j));
        }
}

TEST_CASE("middle symmetry and adjoint are involutions") {
    for (const auto& pi : enumeratePartitions(4, 4, true)) {
        CHECK(middleSymmetry(middleSymmetry(pi)) == pi);
        CHECK(adjoint(adjoint(pi)) == pi);
    }
    CHECK(adjoint(parsePartition("aa/bb")).str() == "aa/bb");
    CHECK(adjoint(parsePartition("abc/")).str() == "/abc");
    CHECK(middleSymmetry(parsePartition("aabc/abcc")).str() ==
          parsePartition("bcaa/ccab").str());
}

TEST_CASE("vertical composition") {
    auto r1 = verticalCompose(parsePartition("/aa"), parsePartition("ab/ab"));
    CHECK(r1.result.str() == "/aa");
    CHECK(r1.loopCount == 0);

    auto r2 = verticalCompose(parsePartition("aa/bb"), parsePartition("aa/bb"));
    CHECK(r2.result.str() == "aa/bb");
    CHECK(r2.loopCount == 1);

    auto id = parsePartition("ab/ab");
    auto r3 = verticalCompose(id, id);
    CHECK(r3.result == id);
    CHECK(r3.loopCount == 0);

    // identity partition is neutral for composition
    for (const auto& pi : enumeratePartitions(2, 2)) {
        auto top = verticalCompose(id, pi);
        auto bottom = verticalCompose(pi, id);
        CHECK(top.result == pi);
        CHECK(top.loopCount == 0);
        CHECK(bottom.result == pi);
        CHECK(bottom.loopCount == 0);
    }

    CHECK_THROWS_AS(verticalCompose(parsePartition("/abc"), parsePartition("ab/ab")),
                    std::invalid_argument);
}

TEST_CASE("signature: basic values") {
    CHECK(signature(parsePartition("ab/ab")) == 1);
    CHECK(signature(parsePartition("ab/ba")) == -1);
    CHECK(signature(parsePartition("aa/aa")) == 1);
    CHECK(signature(parsePartition("aa/bb")) == 1);
    CHECK_THROWS_AS(signature(parsePartition("aab/a")), std::invalid_argument);
}

TEST_CASE("signature of permutation pairings equals the permutation sign") {
    for (int k = 1; k <= 3; ++k)
        for (const auto& g : allPermutations(k))
            CHECK(signature(pairingFromPermutation(g)) == permutationSign(g));
}

TEST_CASE("signature of a single-row pairing is its crossing parity") {
    for (int p = 2; p <= 8; p += 2) {
        for (const auto& ids : setPartitions(p)) {
            Partition pi(0, p, ids);
            auto sizes = pi.blockSizes();
            if (!std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 2; })) continue;
            CHECK(signature(pi) == crossingParity(pi));
        }
    }
}

TEST_CASE("merging blocks of a noncrossing partition gives signature +1") {
    for (int p = 2; p <= 8; p += 2) {
        for (const auto& tau : enumerateNoncrossing(p)) {
            if (!tau.allBlocksEven()) continue;
            for (const auto& grouping : setPartitions(tau.blockCount())) {
                auto merged = mergeBlocks(tau, grouping);
                if (!merged.allBlocksEven()) continue;
                CHECK(signature(merged) == 1);
            }
        }
    }
}

TEST_CASE("signature agrees with the switch-search oracle on small partitions") {
    for (int total = 2; total <= 8; total += 2) {
        for (int k = 0; k <= total; ++k) {
            for (const auto& pi : enumeratePartitions(k, total - k, true)) {
                CAPTURE(pi.str());
                CHECK(signature(pi) == signatureSwitchSearch(pi));
            }
        }
    }
}

TEST_CASE("noncrossing partitions embed as permutations") {
    auto sigma = parsePartition("/aab");  // {1,2}{3}
    auto g = ncToPermutation(sigma);
    CHECK(g(0) == 1);
    CHECK(g(1) == 0);
    CHECK(g(2) == 2);
    CHECK(g.cycleCount() == sigma.blockCount());

    for (int p = 1; p <= 5; ++p)
        for (const auto& s : enumerateNoncrossing(p)) {
            auto perm = ncToPermutation(s);
            CHECK(perm.cyclePartition() == s);
        }
}

TEST_CASE("kreweras complement") {
    CHECK(kreweras(parsePartition("/aab")).str() == "/abb");  // {12}{3} -> {1}{23}
    for (int p = 1; p <= 6; ++p) {
        Partition singletons(0, p, [&] {
            std::vector<int> ids(p);
            std::iota(ids.begin(), ids.end(), 0);
            return ids;
        }());
        Partition oneBlock(0, p, std::vector<int>(p, 0));
        CHECK(kreweras(singletons) == oneBlock);
        CHECK(kreweras(oneBlock) == singletons);
        for (const auto& s : enumerateNoncrossing(p))
            CHECK(s.blockCount() + kreweras(s).blockCount() == p + 1);
    }
}

TEST_CASE("kreweras matches the interleaved-circle construction") {
    for (int p = 1; p <= 5; ++p) {
        for (const auto& sigma : enumerateNoncrossing(p)) {
            // coarsest tau with sigma and tau noncrossing when interleaved
            const Partition* best = nullptr;
            std::vector<Partition> candidates;
            for (const auto& ids : setPartitions(p)) candidates.emplace_back(0, p, ids);
            int bestBlocks = p + 1;
            for (const auto& tau : candidates) {
                if (!isNoncrossing(interleave(sigma, tau.blockIds()))) continue;
                if (tau.blockCount() < bestBlocks) {
                    bestBlocks = tau.blockCount();
                    best = &tau;
                }
            }
            REQUIRE(best != nullptr);
            CHECK(kreweras(sigma) == *best);
        }
    }
}

TEST_CASE("cycle-count bound characterizes noncrossing permutations") {
    for (int p = 1; p <= 4; ++p) {
        auto gamma = Permutation::standardCycle(p);
        std::set<std::vector<int>> ncImages;
        for (const auto& s : enumerateNoncrossing(p)) ncImages.insert(ncToPermutation(s).image());
        for (const auto& g : allPermutations(p)) {
            int lhs = g.cycleCount() + permCompose(g, gamma.inverse()).cycleCount();
            CHECK(lhs <= p + 1);
            CHECK((lhs == p + 1) == (ncImages.count(g.image()) == 1));
        }
    }
}

TEST_CASE("cycle-count identities over noncrossing permutations") {
    for (int p = 1; p <= 6; ++p) {
        auto gamma = Permutation::standardCycle(p);
        for (const auto& s : enumerateNoncrossing(p)) {
            auto g = ncToPermutation(s);
            CHECK(permCompose(g, gamma).cycleCount() - 1 ==
                  permCompose(g, g).cycleCount() - g.cycleCount());
            CHECK(permCompose(gamma.inverse(), g).cycleCount() - 1 == p - g.cycleCount());
        }
    }
}

TEST_CASE("exponent words") {
    auto words = ExponentWord::allWords(3);
    REQUIRE(words.size() == 8);
    CHECK(words.front().str() == "***");
    CHECK(words.back().str() == "111");
    CHECK(std::is_sorted(words.begin(), words.end()));

    ExponentWord w("1*1");
    CHECK(w.size() == 3);
    CHECK_FALSE(w.isStar(0));
    CHECK(w.isStar(1));
    CHECK(w.sign(1) == -1);
    CHECK(ExponentWord::allOnes(2).str() == "11");
    CHECK_THROWS_AS(ExponentWord("1x"), std::invalid_argument);
}
