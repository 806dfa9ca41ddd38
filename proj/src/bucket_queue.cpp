#include "lsp/bucket_queue.hpp"

#include <cmath>
#include <stdexcept>

namespace lsp {

MonotoneBucketQueue::MonotoneBucketQueue(double delta, uint32_t num_buckets, uint32_t capacity)
    : delta_(delta), num_buckets_(num_buckets) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("bucket queue: delta must be positive and finite");
    if (num_buckets < 2) throw std::invalid_argument("bucket queue: need at least 2 buckets");
    head_.assign(num_buckets, kNil);
    next_.assign(capacity, kNil);
    prev_.assign(capacity, kNil);
    bucket_of_.assign(capacity, kNil);
    key_.assign(capacity, 0.0);
}

uint32_t MonotoneBucketQueue::bucket_index(double key) const {
    double scaled = key / delta_;
    uint32_t leftover = num_buckets_ - 1;
    if (!(scaled < static_cast<double>(leftover))) return leftover;
    uint32_t i = static_cast<uint32_t>(scaled);
    // Clamp below the cursor; monotone callers never need the skipped range
    // and this keeps the structure sound near floating-point bucket edges.
    return i < cursor_ ? cursor_ : i;
}

void MonotoneBucketQueue::link(uint32_t id, uint32_t bucket) {
    bucket_of_[id] = bucket;
    prev_[id] = kNil;
    next_[id] = head_[bucket];
    if (head_[bucket] != kNil) prev_[head_[bucket]] = id;
    head_[bucket] = id;
}

void MonotoneBucketQueue::unlink(uint32_t id) {
    uint32_t bucket = bucket_of_[id];
    if (prev_[id] != kNil)
        next_[prev_[id]] = next_[id];
    else
        head_[bucket] = next_[id];
    if (next_[id] != kNil) prev_[next_[id]] = prev_[id];
    bucket_of_[id] = kNil;
}

void MonotoneBucketQueue::insert_or_decrease(uint32_t id, double key) {
    if (id >= bucket_of_.size()) throw std::invalid_argument("bucket queue: pair id out of range");
    if (fallback_) {
        fallback_->insert_or_decrease(id, key);
        size_ = fallback_->size();
        return;
    }
    if (bucket_of_[id] != kNil) {
        if (key >= key_[id]) return;  // decrease-only
        key_[id] = key;
        uint32_t target = bucket_index(key);
        if (target != bucket_of_[id]) {
            unlink(id);
            link(id, target);
        }
        return;
    }
    key_[id] = key;
    link(id, bucket_index(key));
    ++size_;
}

std::optional<std::pair<uint32_t, double>> MonotoneBucketQueue::extract_min() {
    if (fallback_) {
        auto r = fallback_->extract_min();
        size_ = fallback_->size();
        return r;
    }
    if (size_ == 0) return std::nullopt;
    uint32_t leftover = num_buckets_ - 1;
    while (cursor_ < leftover && head_[cursor_] == kNil) {
        ++cursor_;
        ++scan_steps_;
    }
    if (cursor_ < leftover) {
        ++scan_steps_;
        uint32_t id = head_[cursor_];
        unlink(id);
        --size_;
        return std::make_pair(id, key_[id]);
    }
    // Only the leftover bucket holds entries: switch permanently to the
    // comparison heap and answer exactly from now on.
    fallback_ = std::make_unique<PairMinHeap>(bucket_of_.size());
    while (head_[leftover] != kNil) {
        uint32_t id = head_[leftover];
        unlink(id);
        fallback_->insert_or_decrease(id, key_[id]);
    }
    auto r = fallback_->extract_min();
    size_ = fallback_->size();
    return r;
}

}  // namespace lsp
