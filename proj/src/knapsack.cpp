// Copyright 2026 The chainsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chainsched/knapsack.hpp"

#include <algorithm>

namespace chainsched::knapsack {

std::vector<Item> select_01(std::vector<Item> items, std::int64_t capacity) {
    if (capacity <= 0 || items.empty()) return {};
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.id < b.id; });

    const std::size_t n = items.size();
    const auto cap = static_cast<std::size_t>(capacity);
    // best[i][c]: max value from items i..n-1 with capacity c. Built over
    // suffixes so that reconstruction can walk forward and take the smallest
    // id whenever an optimum allows it.
    std::vector<std::vector<std::int64_t>> best(n + 1, std::vector<std::int64_t>(cap + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        const auto w = items[i].weight;
        for (std::size_t c = 0; c <= cap; ++c) {
            best[i][c] = best[i + 1][c];
            if (w >= 0 && static_cast<std::size_t>(w) <= c)
                best[i][c] = std::max(best[i][c], items[i].value + best[i + 1][c - static_cast<std::size_t>(w)]);
        }
    }

    std::vector<Item> chosen;
    std::size_t c = cap;
    for (std::size_t i = 0; i < n; ++i) {
        const auto w = items[i].weight;
        if (w < 0 || static_cast<std::size_t>(w) > c) continue;
        const auto rest = c - static_cast<std::size_t>(w);
        if (items[i].value + best[i + 1][rest] == best[i][c]) {
            chosen.push_back(items[i]);
            c = rest;
        }
    }
    return chosen;
}

std::vector<Portion> select_fractional(std::vector<Item> items, std::int64_t capacity) {
    // Exact density comparison: v_a / w_a > v_b / w_b  <=>  v_a * w_b > v_b * w_a.
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        const auto lhs = a.value * b.weight;
        const auto rhs = b.value * a.weight;
        if (lhs != rhs) return lhs > rhs;
        return a.id < b.id;
    });

    std::vector<Portion> taken;
    std::int64_t left = capacity;
    for (const auto& item : items) {
        if (left <= 0) break;
        const auto amount = std::min(item.weight, left);
        if (amount <= 0) continue;
        taken.push_back({item, amount});
        left -= amount;
    }
    return taken;
}

std::int64_t total_value(const std::vector<Item>& items) {
    std::int64_t v = 0;
    for (const auto& i : items) v += i.value;
    return v;
}

std::int64_t total_weight(const std::vector<Item>& items) {
    std::int64_t w = 0;
    for (const auto& i : items) w += i.weight;
    return w;
}

}  // namespace chainsched::knapsack
