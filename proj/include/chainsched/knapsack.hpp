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

#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace chainsched::knapsack {

struct ItemId {
    int chain = 0;
    int task = 0;

    friend auto operator<=>(const ItemId&, const ItemId&) = default;
};

/// A ready task offered to the slot: weight is its processor demand, value
/// its criticality.
struct Item {
    ItemId id;
    std::int64_t weight = 0;
    std::int64_t value = 0;

    friend bool operator==(const Item&, const Item&) = default;
};

/// Exact 0-1 knapsack by dynamic programming in O(items * capacity).
/// Of all maximum-value subsets, returns the one whose sorted id list is
/// lexicographically smallest. Result is sorted by id.
std::vector<Item> select_01(std::vector<Item> items, std::int64_t capacity);

struct Portion {
    Item item;
    std::int64_t amount = 0;

    friend bool operator==(const Portion&, const Portion&) = default;
};

/// Greedy fractional knapsack with integer amounts. Items are taken in
/// decreasing value/weight (ties: smaller id first), whole while they fit;
/// the first item that does not fit gets the remaining capacity. Returned in
/// the order taken.
std::vector<Portion> select_fractional(std::vector<Item> items, std::int64_t capacity);

std::int64_t total_value(const std::vector<Item>& items);
std::int64_t total_weight(const std::vector<Item>& items);

}  // namespace chainsched::knapsack
