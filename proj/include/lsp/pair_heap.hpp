#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lsp {

// Exact binary min-heap over dense ids (vertex pairs encoded as u*n+v) with
// decrease-only reinsertion: inserting an id that is already present keeps
// the smaller of the stored and offered keys.
class PairMinHeap {
public:
    explicit PairMinHeap(size_t capacity) : pos_(capacity, 0), key_(capacity, 0.0) {}

    bool empty() const { return heap_.empty(); }
    size_t size() const { return heap_.size(); }
    size_t capacity() const { return pos_.size(); }
    bool contains(uint32_t id) const { return pos_[check(id)] != 0; }
    double key(uint32_t id) const { return key_[id]; }

    void insert_or_decrease(uint32_t id, double key) {
        check(id);
        if (pos_[id] == 0) {
            key_[id] = key;
            heap_.push_back(id);
            pos_[id] = static_cast<uint32_t>(heap_.size());
            sift_up(heap_.size() - 1);
        } else if (key < key_[id]) {
            key_[id] = key;
            sift_up(pos_[id] - 1);
        }
    }

    std::optional<std::pair<uint32_t, double>> extract_min() {
        if (heap_.empty()) return std::nullopt;
        uint32_t top = heap_[0];
        double k = key_[top];
        pos_[top] = 0;
        uint32_t last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_[0] = last;
            pos_[last] = 1;
            sift_down(0);
        }
        return std::make_pair(top, k);
    }

    void clear() {
        for (uint32_t id : heap_) pos_[id] = 0;
        heap_.clear();
    }

private:
    uint32_t check(uint32_t id) const {
        if (id >= pos_.size()) throw std::invalid_argument("pair id out of range");
        return id;
    }

    void sift_up(size_t i) {
        uint32_t id = heap_[i];
        double k = key_[id];
        while (i > 0) {
            size_t parent = (i - 1) / 2;
            if (key_[heap_[parent]] <= k) break;
            heap_[i] = heap_[parent];
            pos_[heap_[i]] = static_cast<uint32_t>(i + 1);
            i = parent;
        }
        heap_[i] = id;
        pos_[id] = static_cast<uint32_t>(i + 1);
    }

    void sift_down(size_t i) {
        uint32_t id = heap_[i];
        double k = key_[id];
        size_t n = heap_.size();
        for (;;) {
            size_t child = 2 * i + 1;
            if (child >= n) break;
            if (child + 1 < n && key_[heap_[child + 1]] < key_[heap_[child]]) ++child;
            if (key_[heap_[child]] >= k) break;
            heap_[i] = heap_[child];
            pos_[heap_[i]] = static_cast<uint32_t>(i + 1);
            i = child;
        }
        heap_[i] = id;
        pos_[id] = static_cast<uint32_t>(i + 1);
    }

    std::vector<uint32_t> heap_;
    std::vector<uint32_t> pos_;  // id -> heap index + 1, 0 when absent
    std::vector<double> key_;
};

}  // namespace lsp
