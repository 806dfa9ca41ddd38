#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lsp/pair_heap.hpp"

namespace lsp {

// Monotone bucket priority queue. Keys are scaled by delta (the minimum edge
// weight); bucket i holds entries with floor(key/delta) == i, except that
// everything with a scaled key >= num_buckets-1 lives in the last, "leftover"
// bucket. extract_min scans forward from a cursor and returns an arbitrary
// element of the first non-empty regular bucket, which under monotone use is
// within delta of the true minimum. If the scan reaches the leftover bucket,
// all remaining entries migrate to an exact comparison heap and the queue
// stays in that mode for the rest of its life.
class MonotoneBucketQueue {
public:
    MonotoneBucketQueue(double delta, uint32_t num_buckets, uint32_t capacity);

    void insert_or_decrease(uint32_t id, double key);
    std::optional<std::pair<uint32_t, double>> extract_min();

    bool empty() const { return size_ == 0; }
    size_t size() const { return size_; }
    bool fallback_engaged() const { return fallback_ != nullptr; }
    double delta() const { return delta_; }

    // Buckets probed by extract_min scans; O(num_buckets + operations) over a
    // whole monotone run.
    uint64_t scan_steps() const { return scan_steps_; }

private:
    static constexpr uint32_t kNil = UINT32_MAX;

    uint32_t bucket_index(double key) const;
    void unlink(uint32_t id);
    void link(uint32_t id, uint32_t bucket);

    double delta_;
    uint32_t num_buckets_;  // last index is the leftover bucket
    uint32_t cursor_ = 0;
    size_t size_ = 0;
    uint64_t scan_steps_ = 0;

    std::vector<uint32_t> head_;       // per bucket
    std::vector<uint32_t> next_, prev_;  // per id
    std::vector<uint32_t> bucket_of_;  // per id, kNil when absent
    std::vector<double> key_;          // per id

    std::unique_ptr<PairMinHeap> fallback_;
};

}  // namespace lsp
