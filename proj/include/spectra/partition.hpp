#pragma once

#include <compare>
#include <string>
#include <vector>

namespace spectra {

// Integer partition: weakly decreasing positive parts. The empty partition
// (of 0) is allowed.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int n() const { return n_; }                       // sum of parts
    int rows() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[static_cast<size_t>(i)]; }
    // part with implicit zeros past the end
    int part(int i) const {
        return i < rows() ? parts_[static_cast<size_t>(i)] : 0;
    }
    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    // number of parts equal to v
    int multiplicity(int v) const;

    bool operator==(const Partition&) const = default;
    // lexicographic on the part vectors; (3) > (2,1) > (1,1,1)
    std::strong_ordering operator<=>(const Partition& o) const;

    std::string to_string() const;          // "3,1" ; "" for the empty partition
    static Partition parse(const std::string& s);

private:
    std::vector<int> parts_;
    int n_ = 0;
};

// All partitions of n in reverse lexicographic order: (n) first, (1^n) last.
std::vector<Partition> partitions_of(int n);

} // namespace spectra
